"""Finitely generated projective A_N-modules and their freeness certificates.

A projective module is presented by an idempotent matrix A (A^2 = A, columns
in the L1 ball).  ``decompose_free`` exhibits it as free: it returns J, Q with
Q J = I_r and J Q = A, both again morphisms of free A_N-modules.

The construction follows the support analysis of |A|.  Writing R = |A|, one
has R^2 = R, and an index i with r_ii > 0 has a column support S_i on which R
is entirely positive.  These supports are disjoint, each contributes a
rank-one summand, and every other row of A vanishes.  Presentations need not
be minimal.
"""

from dataclasses import dataclass

from .errors import (
    CertificateConstructionFailed,
    InternalInconsistency,
    NotInBall,
    NotIdempotent,
    PreconditionViolation,
    ShapeMismatch,
)
from .monad import ANMatrix, _matmul, compose, identity

__all__ = [
    "IdempotentPresentation",
    "AbsMatrix",
    "BlockStructure",
    "FreenessCertificate",
    "CheckResult",
    "validate_idempotent",
    "abs_and_supports",
    "block_order",
    "sign_normalize",
    "decompose_free",
    "rank",
    "verify_certificate",
]


@dataclass(frozen=True)
class IdempotentPresentation:
    A: ANMatrix

    @property
    def n(self):
        return self.A.rows

    @property
    def ctx(self):
        return self.A.ctx


@dataclass(frozen=True)
class AbsMatrix:
    """Entrywise absolute value R = |A| of an idempotent presentation."""

    R: ANMatrix

    @property
    def n(self):
        return self.R.rows

    def __getitem__(self, ij):
        return self.R[ij]


@dataclass(frozen=True)
class BlockStructure:
    """Reordering of indices making R block upper triangular.

    ``blocks`` lists index groups in the new order; ``positive[b]`` tells
    whether R is entirely positive on block b.  At most one non-positive
    block exists, it comes last, and R vanishes on its rows.
    """

    order: tuple
    blocks: tuple
    positive: tuple

    @property
    def sizes(self):
        return tuple(len(b) for b in self.blocks)

    @property
    def positive_blocks(self):
        return tuple(b for b, pos in zip(self.blocks, self.positive) if pos)


@dataclass(frozen=True)
class FreenessCertificate:
    rank: int
    J: ANMatrix
    Q: ANMatrix


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    reason: str = ""

    def __bool__(self):
        return self.ok


def _first_difference(X, Y):
    for i, (rx, ry) in enumerate(zip(X, Y)):
        for j, (a, b) in enumerate(zip(rx, ry)):
            if a != b:
                return i, j
    return None


def _square(A):
    return _matmul(A.entries, A.entries, A.rows, A.cols, A.cols, A.ctx)


def validate_idempotent(A):
    if A.rows != A.cols:
        raise ShapeMismatch(f"presentation must be square, got {A.rows}x{A.cols}")
    A2 = _square(A)
    diff = _first_difference(A2, A.entries)
    if diff is not None:
        i, j = diff
        raise NotIdempotent(
            f"A^2 != A at row {i}, column {j}: (A^2)[{i}][{j}] = {A2[i][j]}, "
            f"A[{i}][{j}] = {A[i, j]}",
            row=i,
            column=j,
        )
    return IdempotentPresentation(A)


def abs_and_supports(P):
    """Return |A| together with the column supports S_j = {i : r_ij > 0}."""
    A = P.A
    R = ANMatrix(A.ctx, A.rows, A.cols, tuple(tuple(abs(x) for x in row) for row in A.entries))
    diff = _first_difference(_square(R), R.entries)
    if diff is not None:
        raise InternalInconsistency(f"|A|^2 != |A| at {diff} although A^2 = A")
    supports = tuple(
        frozenset(i for i in range(R.rows) if R[i, j]) for j in range(R.cols)
    )
    return AbsMatrix(R), supports


def block_order(R, supports=None):
    """Group indices into positive diagonal blocks followed by a null tail.

    A block is the support S_i of some column i with r_ii > 0.  Since
    k in S_j forces S_k to be a subset of S_j, these supports are disjoint
    and R is positive on each of them.  Blocks are taken smallest first;
    ties go to the block holding the smallest index.
    """
    if isinstance(R, AbsMatrix):
        R = R.R
    n = R.rows
    if supports is None:
        supports = tuple(frozenset(i for i in range(n) if R[i, j]) for j in range(n))
    diagonal = [i for i in range(n) if R[i, i]]
    dset = set(diagonal)
    blocks = {}
    for i in diagonal:
        S = supports[i]
        if not S <= dset:
            raise InternalInconsistency(
                f"support of column {i} leaves the positive diagonal: {sorted(S - dset)}"
            )
        blocks.setdefault(S, i)
    chosen = sorted(blocks, key=lambda S: (len(S), min(S)))
    seen = set()
    for S in chosen:
        if seen & S:
            raise InternalInconsistency(f"supports overlap on {sorted(seen & S)}")
        seen |= S
        for i in S:
            for j in S:
                if not R[i, j]:
                    raise InternalInconsistency(f"r[{i}][{j}] = 0 inside a positive block")
    tail = tuple(i for i in range(n) if i not in dset)
    for i in tail:
        if any(R[i, j] for j in range(n)):
            raise InternalInconsistency(f"row {i} is nonzero but r[{i}][{i}] = 0")
    ordered = [tuple(sorted(S)) for S in chosen]
    positive = [True] * len(ordered)
    if tail:
        ordered.append(tail)
        positive.append(False)
    order = tuple(i for block in ordered for i in block)
    return BlockStructure(order, tuple(ordered), tuple(positive))


def sign_normalize(block):
    """Conjugate an entrywise nonzero block by signs so that it turns positive.

    The signs are read off the first row, eps_i = sign(a_1i); the result is
    B = (eps_i a_ij eps_j).
    """
    n = block.rows
    if block.cols != n:
        raise ShapeMismatch("block must be square")
    for i in range(n):
        for j in range(n):
            if not block[i, j]:
                raise PreconditionViolation(f"entry ({i}, {j}) of the block is zero")
    eps = tuple(block[0, i].sign() for i in range(n))
    B = tuple(
        tuple(block[i, j] if eps[i] == eps[j] else -block[i, j] for j in range(n))
        for i in range(n)
    )
    for i in range(n):
        for j in range(n):
            if B[i][j].sign() < 0:
                raise PreconditionViolation(
                    f"sign pattern is not a conjugate of a positive matrix at ({i}, {j})"
                )
    return eps, ANMatrix(block.ctx, n, n, B)


def _check_equal_columns(B):
    n = B.rows
    first = B.column(0)
    for j in range(1, n):
        if B.column(j) != first:
            raise InternalInconsistency(f"column {j} of a positive idempotent block differs")
    total = B.ctx.zero()
    for x in first:
        total = total + x
    if total != 1:
        raise InternalInconsistency(f"common column of a positive block sums to {total}")


def decompose_free(P):
    """Compute a freeness certificate (rank, J, Q) for the module presented by P.

    Each positive block contributes one generator: its first column, which
    is already sign normalized because the diagonal of A is positive.  The
    coordinate of column k along the generator v of a block is
    sum_i sign(v_i) a_ik; that this solves J Q = A is verified, not assumed.
    """
    A = P.A
    ctx = A.ctx
    n = A.rows
    absm, supports = abs_and_supports(P)
    structure = block_order(absm, supports)
    J_cols = []
    Q_rows = []
    for block in structure.positive_blocks:
        _, B = sign_normalize(A.submatrix(block, block))
        _check_equal_columns(B)
        v = A.column(block[0])
        J_cols.append(v)
        row = []
        for k in range(n):
            q = ctx.zero()
            for i in block:
                term = A[i, k]
                q = q + (term if v[i].sign() > 0 else -term)
            row.append(q)
        Q_rows.append(tuple(row))
    r = len(J_cols)
    try:
        J = ANMatrix(ctx, n, r, tuple(tuple(c[i] for c in J_cols) for i in range(n)))
        Q = ANMatrix(ctx, r, n, tuple(Q_rows))
    except NotInBall as exc:
        raise CertificateConstructionFailed(f"certificate leaves the unit ball: {exc}") from exc
    cert = FreenessCertificate(r, J, Q)
    check = verify_certificate(A, cert)
    if not check:
        raise CertificateConstructionFailed(check.reason)
    return cert


def rank(P):
    cert = decompose_free(P)
    tr = P.A.trace()
    if not tr.is_integral() or tr.num < 0:
        raise InternalInconsistency(f"trace {tr} of an idempotent is not a nonnegative integer")
    if tr.num != cert.rank:
        raise InternalInconsistency(f"trace {tr} differs from certificate rank {cert.rank}")
    return cert.rank


def verify_certificate(A, cert):
    if isinstance(A, IdempotentPresentation):
        A = A.A
    J, Q, r = cert.J, cert.Q, cert.rank
    if J.shape != (A.rows, r) or Q.shape != (r, A.cols):
        return CheckResult(False, f"shapes J{J.shape}, Q{Q.shape} do not fit A{A.shape}, rank {r}")
    for name, M in (("J", J), ("Q", Q)):
        for j, norm in enumerate(M.column_norms()):
            if norm > 1:
                return CheckResult(False, f"column {j} of {name} has norm {norm} > 1")
    QJ = compose(Q, J)
    diff = _first_difference(QJ.entries, identity(r, A.ctx).entries)
    if diff is not None:
        return CheckResult(False, f"QJ != I at {diff}")
    JQ = compose(J, Q)
    diff = _first_difference(JQ.entries, A.entries)
    if diff is not None:
        return CheckResult(False, f"JQ != A at {diff}")
    return CheckResult(True)
