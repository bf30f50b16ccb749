"""Vector bundles over the compactified spectrum as matrices.

A rank-r bundle is a matrix M in GL_r(Z[1/N]), determined up to
M -> C M D with C a signed permutation and D in GL_r(Z).  Right cosets get a
column-style Hermite normal form; the double coset is canonicalized by taking
the lexicographically least such form over all of Oct_r.

K^0 is modelled as pairs (rank, deg) with deg an exponent vector of the
positive unit |det M|.
"""

from dataclasses import dataclass

from .arith import NRational, PicElement, is_unit, pic_to_value, unit_log
from .errors import FeasibilityError, InternalInconsistency, NotInvertible, ShapeMismatch
from .octahedral import enumerate_oct

__all__ = [
    "BundleRep",
    "CanonicalForm",
    "GLZMatrix",
    "K0Element",
    "DEFAULT_RANK_BOUND",
    "validate_bundle",
    "determinant",
    "integer_determinant",
    "hnf_integer",
    "hnf_coset",
    "double_coset_canonical",
    "is_isomorphic",
    "k_class",
    "assemble_cofibration",
    "line_bundle",
    "k0_op",
    "left_act",
    "right_act",
]

DEFAULT_RANK_BOUND = 8


@dataclass(frozen=True)
class BundleRep:
    ctx: object
    r: int
    M: tuple

    def rows(self):
        return [list(row) for row in self.M]


@dataclass(frozen=True)
class CanonicalForm:
    ctx: object
    T: tuple

    @property
    def r(self):
        return len(self.T)

    @property
    def diagonal(self):
        return tuple(self.T[i][i] for i in range(len(self.T)))

    def as_bundle(self):
        return BundleRep(self.ctx, len(self.T), self.T)


@dataclass(frozen=True)
class GLZMatrix:
    entries: tuple

    def __post_init__(self):
        entries = tuple(tuple(int(x) for x in row) for row in self.entries)
        r = len(entries)
        if any(len(row) != r for row in entries):
            raise ShapeMismatch("GL_r(Z) element must be square")
        d = integer_determinant(entries)
        if d not in (1, -1):
            raise NotInvertible(f"integer matrix has determinant {d}, not +-1")
        object.__setattr__(self, "entries", entries)


@dataclass(frozen=True)
class K0Element:
    rank: int
    deg: PicElement

    def __add__(self, other):
        return K0Element(self.rank + other.rank, self.deg + other.deg)

    def __neg__(self):
        return K0Element(-self.rank, -self.deg)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        # (m, x)(n, y) = (mn, n x + m y)
        return K0Element(
            self.rank * other.rank, other.rank * self.deg + self.rank * other.deg
        )

    @classmethod
    def one(cls, ctx):
        return cls(1, PicElement.zero(ctx))

    @classmethod
    def zero(cls, ctx):
        return cls(0, PicElement.zero(ctx))

    def as_dict(self):
        return {"rank": self.rank, "deg": self.deg.as_dict()}


# -- integer kernels ----------------------------------------------------------


def integer_determinant(rows):
    """Fraction-free Bareiss elimination."""
    M = [list(r) for r in rows]
    n = len(M)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def _xgcd(a, b):
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def hnf_integer(rows):
    """Column-style Hermite normal form of a nonsingular integer matrix.

    Only right multiplication by GL_r(Z) is used.  The result is lower
    triangular with positive diagonal and 0 <= t_ij < t_ii for j < i.
    """
    M = [list(r) for r in rows]
    n = len(M)
    for i in range(n):
        for j in range(i + 1, n):
            b = M[i][j]
            if b == 0:
                continue
            a = M[i][i]
            g, x, y = _xgcd(a, b)
            ag, bg = a // g, b // g
            # [col_i, col_j] <- [x col_i + y col_j, -bg col_i + ag col_j], det 1
            for k in range(i, n):
                ci, cj = M[k][i], M[k][j]
                M[k][i] = x * ci + y * cj
                M[k][j] = ag * cj - bg * ci
        d = M[i][i]
        if d == 0:
            raise NotInvertible("matrix is singular")
        if d < 0:
            for k in range(i, n):
                M[k][i] = -M[k][i]
            d = -d
        for j in range(i):
            q = M[i][j] // d
            if q:
                for k in range(i, n):
                    M[k][j] -= q * M[k][i]
    return tuple(tuple(r) for r in M)


def _scaled(M, ctx):
    """Least e with N^e M integral, and the integer matrix N^e M."""
    N = ctx.N
    e = max((x.exp for row in M for x in row), default=0)
    return e, tuple(tuple(x.num * N ** (e - x.exp) for x in row) for row in M)


def _unscale(rows, e, ctx):
    return tuple(tuple(NRational(x, e, ctx) for x in row) for row in rows)


# -- operations -------------------------------------------------------------


def determinant(B):
    e, M = _scaled(B.M, B.ctx)
    return NRational(integer_determinant(M), e * len(M), B.ctx)


def validate_bundle(M, ctx):
    rows = [tuple(ctx(x) for x in row) for row in M]
    r = len(rows)
    for i, row in enumerate(rows):
        if len(row) != r:
            raise ShapeMismatch(f"bundle matrix must be square; row {i} has {len(row)} entries")
    B = BundleRep(ctx, r, tuple(rows))
    det = determinant(B)
    if not det:
        raise NotInvertible("determinant is 0")
    if not is_unit(det):
        raise NotInvertible(f"determinant {det} is not a unit of Z[1/{ctx.N}]")
    return B


def hnf_coset(B):
    e, M = _scaled(B.M, B.ctx)
    return CanonicalForm(B.ctx, _unscale(hnf_integer(M), e, B.ctx))


def _key(T):
    n = len(T)
    return (tuple(T[i][i] for i in range(n)), tuple(x for row in T for x in row))


def double_coset_canonical(B, rank_bound=DEFAULT_RANK_BOUND):
    """Least right-coset normal form of C B over all signed permutations C.

    Ordered by the diagonal first, then by the row-major entries.  -C and C
    give the same coset since -I lies in GL_r(Z), so only half the group is
    visited.
    """
    if B.r > rank_bound:
        raise FeasibilityError(
            f"rank {B.r} exceeds the Oct_r enumeration bound {rank_bound}"
        )
    e, M = _scaled(B.M, B.ctx)
    best = None
    best_key = None
    for C in enumerate_oct(B.r):
        if B.r and C.signs[0] != 1:
            continue
        T = hnf_integer(C.act_left(M))
        k = _key(T)
        if best_key is None or k < best_key:
            best, best_key = T, k
    if best is None:
        best = ()
    return CanonicalForm(B.ctx, _unscale(best, e, B.ctx))


def is_isomorphic(B1, B2, rank_bound=DEFAULT_RANK_BOUND):
    if B1.r != B2.r:
        return False
    return (
        double_coset_canonical(B1, rank_bound).T == double_coset_canonical(B2, rank_bound).T
    )


def k_class(B):
    det = abs(determinant(B))
    deg = unit_log(det)
    from_diagonal = PicElement.zero(B.ctx)
    for d in hnf_coset(B).diagonal:
        from_diagonal = from_diagonal + unit_log(d)
    if from_diagonal != deg:
        raise InternalInconsistency(
            f"diagonal logs {from_diagonal.exps} disagree with log|det| {deg.exps}"
        )
    return K0Element(B.r, deg)


def assemble_cofibration(Bp, Bpp, C):
    """The block matrix [[B', 0], [C, B'']]."""
    ctx = Bp.ctx
    r, s = Bp.r, Bpp.r
    C = [tuple(ctx(x) for x in row) for row in C]
    if len(C) != s or any(len(row) != r for row in C):
        raise ShapeMismatch(f"off-diagonal block must be {s}x{r}")
    zero = ctx.zero()
    rows = [tuple(Bp.M[i]) + (zero,) * s for i in range(r)]
    rows += [C[i] + tuple(Bpp.M[i]) for i in range(s)]
    E = BundleRep(ctx, r + s, tuple(rows))
    if k_class(E) != k_class(Bp) + k_class(Bpp):
        raise InternalInconsistency("k_class is not additive on this cofibration")
    return E


def line_bundle(p):
    return BundleRep(p.ctx, 1, ((pic_to_value(p),),))


def k0_op(op, *args):
    """K^0 calculus on the (rank, deg) model.

    add, mul: K0Element x K0Element; c1: PicElement -> K0Element;
    phi: (int, PicElement) -> K0Element; deg, rank_pullback: K0Element.
    """
    if op == "add":
        a, b = args
        return a + b
    if op == "mul":
        a, b = args
        return a * b
    if op == "c1":
        (p,) = args
        return k_class(line_bundle(p)) - K0Element.one(p.ctx)
    if op == "phi":
        n, p = args
        # n - 1 + [O(p)]
        return K0Element(n - 1, PicElement.zero(p.ctx)) + k_class(line_bundle(p))
    if op == "deg":
        (a,) = args
        return a.deg
    if op == "rank_pullback":
        (a,) = args
        return a.rank
    raise ValueError(f"unknown K0 operation {op!r}")


def left_act(C, B):
    """C B for a signed permutation C."""
    return BundleRep(B.ctx, B.r, tuple(C.act_left(B.M)))


def right_act(B, D):
    """B D for D in GL_r(Z)."""
    if isinstance(D, GLZMatrix):
        D = D.entries
    r = B.r
    zero = B.ctx.zero()
    rows = []
    for i in range(r):
        row = []
        for j in range(r):
            acc = zero
            for k in range(r):
                if D[k][j]:
                    acc = acc + B.M[i][k] * D[k][j]
            row.append(acc)
        rows.append(tuple(row))
    return BundleRep(B.ctx, r, tuple(rows))
