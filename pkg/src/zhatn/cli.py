"""Batch command-line front end.

Each invocation reads one JSON payload (``--in FILE`` or standard input),
runs one command over Z[1/N] and writes one JSON document to standard
output.  Exit codes: 0 success, 1 domain rejection, 2 malformed input,
3 feasibility guard, 4 internal inconsistency.
"""

import argparse
import sys

from . import bundles, monad, projective, spectrum
from .arith import format_rational, make_context, parse_rational, pic_op, pic_to_value, unit_log
from .errors import InternalInconsistency, MalformedInput, ZhatNError
from .serialize import dumps, loads, matrix_to_doc, parse_matrix, pic_from_doc

__all__ = ["main", "run", "parse_matrix", "COMMANDS"]


def cmd_validate_idempotent(ctx, payload, args):
    P = projective.validate_idempotent(parse_matrix(payload, ctx))
    return {"idempotent": True, "n": P.n}


def cmd_split(ctx, payload, args):
    P = projective.validate_idempotent(parse_matrix(payload, ctx))
    cert = projective.decompose_free(P)
    return {"rank": cert.rank, "J": matrix_to_doc(cert.J.entries), "Q": matrix_to_doc(cert.Q.entries)}


def cmd_rank(ctx, payload, args):
    P = projective.validate_idempotent(parse_matrix(payload, ctx))
    return {"rank": projective.rank(P)}


def cmd_canonical(ctx, payload, args):
    B = parse_matrix(payload, ctx, kind="bundle")
    hnf = bundles.hnf_coset(B)
    canon = bundles.double_coset_canonical(B, args.rank_bound)
    return {
        "hnf": matrix_to_doc(hnf.T),
        "canonical": matrix_to_doc(canon.T),
        "diagonal": [format_rational(d) for d in canon.diagonal],
    }


def _two_matrices(payload):
    if isinstance(payload, dict) and "bundles" in payload:
        payload = payload["bundles"]
    if (
        isinstance(payload, list)
        and len(payload) == 2
        and all(isinstance(m, (list, dict)) for m in payload)
        and all(isinstance(m, dict) or (m and isinstance(m[0], list)) for m in payload)
    ):
        return payload
    raise MalformedInput("iso expects two matrices: [M1, M2] or {\"bundles\": [M1, M2]}")


def cmd_iso(ctx, payload, args):
    first, second = _two_matrices(payload)
    B1 = parse_matrix(first, ctx, kind="bundle")
    B2 = parse_matrix(second, ctx, kind="bundle")
    return {"isomorphic": bundles.is_isomorphic(B1, B2, args.rank_bound)}


def cmd_kclass(ctx, payload, args):
    return bundles.k_class(parse_matrix(payload, ctx, kind="bundle")).as_dict()


def _field(payload, name):
    if not isinstance(payload, dict) or name not in payload:
        raise MalformedInput(f"payload needs a '{name}' field")
    return payload[name]


def cmd_pic(ctx, payload, args):
    op = _field(payload, "op")
    if op == "log":
        p = unit_log(parse_rational(_field(payload, "x"), ctx))
    elif op == "value":
        return {"value": format_rational(pic_to_value(pic_from_doc(_field(payload, "a"), ctx)))}
    elif op == "line":
        B = bundles.line_bundle(pic_from_doc(_field(payload, "a"), ctx))
        return {"matrix": matrix_to_doc(B.M)}
    elif op == "add":
        p = pic_op("add", pic_from_doc(_field(payload, "a"), ctx), pic_from_doc(_field(payload, "b"), ctx))
    elif op == "neg":
        p = pic_op("neg", pic_from_doc(_field(payload, "a"), ctx))
    elif op == "zero":
        p = pic_op("zero", ctx)
    else:
        raise MalformedInput(f"unknown pic op {op!r}; expected log, value, line, add, neg or zero")
    return {"exps": list(p.exps), "deg": p.as_dict()}


def cmd_lawcheck(ctx, payload, args):
    if args.seed is None:
        raise MalformedInput("lawcheck requires an explicit --seed")
    payload = payload if isinstance(payload, dict) else {"mode": payload}
    mode = payload.get("mode", "all")
    samples = payload.get("samples", 100)
    max_dim = payload.get("max_dim", 5)
    for name, v in (("samples", samples), ("max_dim", max_dim)):
        if isinstance(v, bool) or not isinstance(v, int) or v < 1:
            raise MalformedInput(f"'{name}' must be a positive integer")
    modes = ["associativity", "unit", "commutativity"] if mode == "all" else [mode]
    reports = []
    for m in modes:
        try:
            reports.append(monad.check_laws(m, samples, args.seed, ctx, max_dim).as_dict())
        except ValueError as exc:
            raise MalformedInput(str(exc)) from None
    return {"passed": all(r["passed"] for r in reports), "reports": reports}


def cmd_topo(ctx, payload, args):
    op = _field(payload, "op")
    if op == "is_open":
        U = spectrum.parse_open_set(payload)
        return {"open": spectrum.is_open(U, ctx)}
    if op == "closure":
        space = payload.get("space", spectrum.ZHAT_N)
        x = spectrum.parse_point(_field(payload, "point"))
        c = spectrum.closure(x, space, ctx)
        if c == spectrum.WHOLE_SPACE:
            return {"closure": "whole"}
        return {"closure": [spectrum.format_point(y) for y in sorted(c)]}
    if op == "stalk":
        x = spectrum.parse_point(_field(payload, "point"))
        a = parse_rational(_field(payload, "a"), ctx)
        return {"in_ideal": spectrum.stalk_predicate(x, a)}
    raise MalformedInput(f"unknown topo op {op!r}; expected is_open, closure or stalk")


def cmd_localize(ctx, payload, args):
    x = payload.get("x") if isinstance(payload, dict) else payload
    if x is None:
        raise MalformedInput("localize expects a rational or {\"x\": ...}")
    a, k = spectrum.express_in_localization(parse_rational(x, ctx))
    return {"a": format_rational(a), "k": k}


COMMANDS = {
    "validate-idempotent": cmd_validate_idempotent,
    "split": cmd_split,
    "rank": cmd_rank,
    "canonical": cmd_canonical,
    "iso": cmd_iso,
    "kclass": cmd_kclass,
    "pic": cmd_pic,
    "lawcheck": cmd_lawcheck,
    "topo": cmd_topo,
    "localize": cmd_localize,
}

# exit status of a lawcheck whose report says a law failed
LAW_FAILED = 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="zhatn", description="Exact computations over Z[1/N] and the generalized ring A_N."
    )
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--N", type=int, required=True, help="the inverted integer, N >= 2")
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument(
        "--rank-bound",
        type=int,
        default=bundles.DEFAULT_RANK_BOUND,
        help="largest rank for which Oct_r is enumerated (default %(default)s)",
    )
    parser.add_argument("--in", dest="infile", default=None, help="payload file (default: stdin)")
    return parser


def _error_doc(exc):
    doc = {"error": type(exc).__name__, "message": str(exc)}
    for attr in ("row", "column"):
        value = getattr(exc, attr, None)
        if value is not None:
            doc[attr] = value
    return doc


def run(command, N, payload_text, seed=None, rank_bound=bundles.DEFAULT_RANK_BOUND):
    """Execute one command; returns (exit code, output document)."""
    args = argparse.Namespace(seed=seed, rank_bound=rank_bound)
    try:
        ctx = make_context(N)
    except ZhatNError as exc:
        return MalformedInput.exit_code, _error_doc(exc)
    try:
        payload = loads(payload_text)
        result = COMMANDS[command](ctx, payload, args)
    except ZhatNError as exc:
        return exc.exit_code, _error_doc(exc)
    except Exception as exc:  # a bug, not a user error
        return InternalInconsistency.exit_code, {"error": type(exc).__name__, "message": str(exc)}
    if command == "lawcheck" and not result["passed"]:
        return LAW_FAILED, result
    return 0, result


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.infile is None:
            text = sys.stdin.read()
        else:
            with open(args.infile, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        print(f"zhatn: cannot read payload: {exc}", file=sys.stderr)
        return MalformedInput.exit_code
    code, doc = run(args.command, args.N, text, args.seed, args.rank_bound)
    if "error" in doc:
        print(f"zhatn: {doc['error']}: {doc['message']}", file=sys.stderr)
    sys.stdout.write(dumps(doc) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
