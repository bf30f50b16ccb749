"""JSON forms of matrices, bundles and certificates.

Rationals travel as strings ("3", "-1/4") so that no value ever passes
through a float.  A matrix document is either a bare row-major array or an
object ``{"N": ..., "matrix": [...]}``.
"""

import hashlib
import json

from .arith import PicElement, format_rational, parse_rational
from .bundles import validate_bundle
from .errors import MalformedInput, NotInBall, NotInZ1N, ZhatNError
from .monad import ANMatrix
from .projective import FreenessCertificate

__all__ = [
    "loads",
    "dumps",
    "parse_grid",
    "parse_matrix",
    "matrix_to_doc",
    "pic_to_doc",
    "pic_from_doc",
    "certificate_to_doc",
    "certificate_from_doc",
    "bundle_to_doc",
    "certificate_digest",
]


def _reject_float(text):
    raise MalformedInput(f"floating-point literal {text} is not allowed; use a string like '1/2'")


def loads(text):
    try:
        return json.loads(text, parse_float=_reject_float, parse_constant=_reject_float)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"invalid JSON: {exc}") from None


def dumps(doc):
    return json.dumps(doc, separators=(",", ":"), ensure_ascii=True)


def _unwrap(doc, ctx, key="matrix"):
    if isinstance(doc, dict):
        if "N" in doc and doc["N"] != ctx.N:
            raise MalformedInput(f"document is over N={doc['N']} but N={ctx.N} was requested")
        if key not in doc:
            raise MalformedInput(f"expected a '{key}' field")
        return doc[key]
    return doc


def parse_grid(doc, ctx):
    """Rectangular array of rational strings -> rows of NRational."""
    if not isinstance(doc, list) or any(not isinstance(row, list) for row in doc):
        raise MalformedInput("matrix must be an array of row arrays")
    width = len(doc[0]) if doc else 0
    rows = []
    for i, row in enumerate(doc):
        if len(row) != width:
            raise MalformedInput(f"row {i} has {len(row)} entries, expected {width}")
        parsed = []
        for j, x in enumerate(row):
            try:
                parsed.append(parse_rational(x, ctx))
            except (MalformedInput, NotInZ1N) as exc:
                raise type(exc)(f"row {i}, column {j}: {exc}") from None
        rows.append(tuple(parsed))
    return rows, width


def parse_matrix(doc, ctx, kind="an"):
    """Parse and validate a matrix document as an ANMatrix or a BundleRep."""
    rows, width = parse_grid(_unwrap(doc, ctx), ctx)
    if kind == "an":
        try:
            return ANMatrix(ctx, len(rows), width, tuple(rows))
        except NotInBall as exc:
            raise NotInBall(f"column {exc.column}: L1 ball violated ({exc})", column=exc.column) from None
    if kind == "bundle":
        return validate_bundle(rows, ctx)
    raise ValueError(f"unknown matrix kind {kind!r}")


def matrix_to_doc(entries):
    return [[format_rational(x) for x in row] for row in entries]


def pic_to_doc(p):
    return list(p.exps)


def pic_from_doc(doc, ctx):
    if not isinstance(doc, list) or any(isinstance(e, bool) or not isinstance(e, int) for e in doc):
        raise MalformedInput("Pic element must be an array of integers aligned with the primes of N")
    if len(doc) != len(ctx.primes):
        raise MalformedInput(
            f"Pic element needs {len(ctx.primes)} exponents for primes {list(ctx.primes)}"
        )
    return PicElement(tuple(doc), ctx)


def certificate_digest(N, rank, J, Q):
    payload = dumps({"N": N, "rank": rank, "J": J, "Q": Q})
    return hashlib.sha256(payload.encode("ascii")).hexdigest()


def certificate_to_doc(cert, ctx):
    J = matrix_to_doc(cert.J.entries)
    Q = matrix_to_doc(cert.Q.entries)
    return {
        "N": ctx.N,
        "rank": cert.rank,
        "J": J,
        "Q": Q,
        "digest": certificate_digest(ctx.N, cert.rank, J, Q),
    }


def certificate_from_doc(doc, ctx):
    try:
        rank, J, Q = doc["rank"], doc["J"], doc["Q"]
    except (KeyError, TypeError):
        raise MalformedInput("certificate needs 'rank', 'J' and 'Q' fields") from None
    if "digest" in doc and doc["digest"] != certificate_digest(ctx.N, rank, J, Q):
        raise MalformedInput("certificate digest does not match its contents")
    n = len(J)
    Jrows, _ = parse_grid(J, ctx)
    Qrows, qwidth = parse_grid(Q, ctx)
    if len(Qrows) != rank:
        raise MalformedInput(f"Q has {len(Qrows)} rows but rank is {rank}")
    try:
        return FreenessCertificate(
            rank,
            ANMatrix(ctx, n, rank, tuple(Jrows)),
            ANMatrix(ctx, rank, qwidth if rank else n, tuple(Qrows)),
        )
    except ZhatNError as exc:
        raise MalformedInput(f"invalid certificate: {exc}") from None


def bundle_to_doc(B):
    return {"N": B.ctx.N, "rank": B.r, "matrix": matrix_to_doc(B.M)}
