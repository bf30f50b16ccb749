"""The generalized ring A_N at finite levels.

A_N(n) is the L1 unit ball of Z[1/N]^n.  Monad multiplication is
substitution, t(s_1, ..., s_n) = sum_i t_i * s_i, and morphisms of free
modules A_N(n) -> A_N(m) are m x n matrices whose columns lie in A_N(m).
"""

import random
from dataclasses import dataclass

from .arith import NRational
from .errors import NotInBall, ShapeMismatch

__all__ = [
    "ANVector",
    "ANMatrix",
    "LawReport",
    "l1_norm",
    "membership",
    "basis_vector",
    "zero_vector",
    "substitute",
    "apply",
    "compose",
    "identity",
    "zero_matrix",
    "check_laws",
    "random_ball_vector",
    "random_an_matrix",
]


def l1_norm(entries, ctx):
    total = ctx.zero()
    for x in entries:
        total = total + abs(x)
    return total


@dataclass(frozen=True)
class ANVector:
    ctx: object
    entries: tuple

    def __post_init__(self):
        entries = tuple(self.ctx(x) for x in self.entries)
        object.__setattr__(self, "entries", entries)
        norm = l1_norm(entries, self.ctx)
        if norm > 1:
            raise NotInBall(f"L1 norm {norm} exceeds 1")

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    def norm(self):
        return l1_norm(self.entries, self.ctx)


def membership(v, ctx):
    return ANVector(ctx, tuple(v))


def basis_vector(j, n, ctx):
    return ANVector(ctx, tuple(ctx.one() if i == j else ctx.zero() for i in range(n)))


def zero_vector(n, ctx):
    return ANVector(ctx, (ctx.zero(),) * n)


@dataclass(frozen=True)
class ANMatrix:
    """An m x n matrix over Z[1/N] with every column in the unit ball.

    ``entries`` is a tuple of row tuples.  ``rows``/``cols`` are explicit so
    that empty shapes (n x 0, 0 x n) are representable.
    """

    ctx: object
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        ctx = self.ctx
        if len(self.entries) != self.rows:
            raise ShapeMismatch(f"expected {self.rows} rows, got {len(self.entries)}")
        grid = []
        for i, row in enumerate(self.entries):
            if len(row) != self.cols:
                raise ShapeMismatch(
                    f"row {i} has {len(row)} entries, expected {self.cols}"
                )
            grid.append(tuple(ctx(x) for x in row))
        object.__setattr__(self, "entries", tuple(grid))
        for j in range(self.cols):
            norm = l1_norm(self.column(j), ctx)
            if norm > 1:
                raise NotInBall(f"column {j} has L1 norm {norm} > 1", column=j)

    @classmethod
    def from_rows(cls, rows, ctx, cols=None):
        rows = [tuple(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(ctx, len(rows), cols, tuple(rows))

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def column(self, j):
        return tuple(row[j] for row in self.entries)

    def column_vector(self, j):
        return ANVector(self.ctx, self.column(j))

    def column_norms(self):
        return tuple(l1_norm(self.column(j), self.ctx) for j in range(self.cols))

    def trace(self):
        total = self.ctx.zero()
        for i in range(min(self.rows, self.cols)):
            total = total + self.entries[i][i]
        return total

    def submatrix(self, row_idx, col_idx):
        return ANMatrix(
            self.ctx,
            len(row_idx),
            len(col_idx),
            tuple(tuple(self.entries[i][j] for j in col_idx) for i in row_idx),
        )

    def tolist(self):
        return [list(r) for r in self.entries]


def identity(n, ctx):
    return ANMatrix(
        ctx,
        n,
        n,
        tuple(
            tuple(ctx.one() if i == j else ctx.zero() for j in range(n)) for i in range(n)
        ),
    )


def zero_matrix(m, n, ctx):
    return ANMatrix(ctx, m, n, tuple((ctx.zero(),) * n for _ in range(m)))


def substitute(t, s):
    """Monad multiplication: the point t(s_1, ..., s_n) = sum_i t_i s_i."""
    if len(s) != len(t):
        raise ShapeMismatch(f"t has {len(t)} entries but {len(s)} vectors were given")
    ctx = t.ctx
    if not s:
        # degenerate: length of the result is unknowable, caller must not ask
        raise ShapeMismatch("substitution into no vectors")
    m = len(s[0])
    acc = [ctx.zero()] * m
    for ti, si in zip(t, s):
        if len(si) != m:
            raise ShapeMismatch("substituted vectors have different lengths")
        if not ti:
            continue
        for k in range(m):
            acc[k] = acc[k] + ti * si[k]
    return ANVector(ctx, tuple(acc))


def apply(A, x):
    if A.cols != len(x):
        raise ShapeMismatch(f"matrix has {A.cols} columns, vector has {len(x)} entries")
    ctx = A.ctx
    out = []
    for row in A.entries:
        acc = ctx.zero()
        for a, xj in zip(row, x):
            if a and xj:
                acc = acc + a * xj
        out.append(acc)
    return ANVector(ctx, tuple(out))


def _matmul(A_entries, B_entries, m, k, n, ctx):
    out = []
    for i in range(m):
        row = A_entries[i]
        acc = [ctx.zero()] * n
        for l in range(k):
            a = row[l]
            if not a:
                continue
            brow = B_entries[l]
            for j in range(n):
                b = brow[j]
                if b:
                    acc[j] = acc[j] + a * b
        out.append(tuple(acc))
    return tuple(out)


def compose(A, B):
    """The product A B of an m x k and a k x n morphism."""
    if A.cols != B.rows:
        raise ShapeMismatch(f"cannot compose {A.shape} with {B.shape}")
    return ANMatrix(
        A.ctx, A.rows, B.cols, _matmul(A.entries, B.entries, A.rows, A.cols, B.cols, A.ctx)
    )


# -- sampling ---------------------------------------------------------------


def _rescale_into_ball(nums, exp, ctx):
    """Turn integers nums/N^exp into a ball vector by dividing by a power of N."""
    N = ctx.N
    total = sum(abs(a) for a in nums)
    k = exp
    while total > N**k:
        k += 1
    return tuple(NRational(a, k, ctx) for a in nums)


def random_ball_vector(rng, n, ctx, bound=6, max_exp=2):
    """Sample a point of A_N(n).

    Numerators are drawn uniformly from [-bound, bound] at an exponent drawn
    from [0, max_exp]; if the result leaves the ball it is divided by the
    least power of N that brings it back.
    """
    exp = rng.randint(0, max_exp)
    nums = [rng.randint(-bound, bound) for _ in range(n)]
    return ANVector(ctx, _rescale_into_ball(nums, exp, ctx))


def random_an_matrix(rng, m, n, ctx, **kw):
    cols = [random_ball_vector(rng, m, ctx, **kw) for _ in range(n)]
    return ANMatrix(ctx, m, n, tuple(tuple(c[i] for c in cols) for i in range(m)))


# -- law checks -------------------------------------------------------------


@dataclass
class LawReport:
    mode: str
    samples: int
    passed: bool
    counterexample: dict = None

    def __bool__(self):
        return self.passed

    def as_dict(self):
        out = {"mode": self.mode, "samples": self.samples, "passed": self.passed}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


def _fmt(v):
    return [str(x) for x in v]


def _check_associativity(rng, ctx, max_dim):
    n, m, k = (rng.randint(1, max_dim) for _ in range(3))
    t = random_ball_vector(rng, n, ctx)
    s = [random_ball_vector(rng, m, ctx) for _ in range(n)]
    r = [random_ball_vector(rng, k, ctx) for _ in range(m)]
    lhs = substitute(substitute(t, s), r)
    rhs = substitute(t, [substitute(si, r) for si in s])
    if lhs != rhs:
        return {
            "t": _fmt(t),
            "s": [_fmt(v) for v in s],
            "r": [_fmt(v) for v in r],
            "lhs": _fmt(lhs),
            "rhs": _fmt(rhs),
        }
    return None


def _check_unit(rng, ctx, max_dim):
    n, m = rng.randint(1, max_dim), rng.randint(1, max_dim)
    s = [random_ball_vector(rng, m, ctx) for _ in range(n)]
    for j in range(n):
        got = substitute(basis_vector(j, n, ctx), s)
        if got != s[j]:
            return {"j": j, "s": [_fmt(v) for v in s], "got": _fmt(got)}
    # the other unit law: t(e_1, ..., e_n) = t
    t = random_ball_vector(rng, n, ctx)
    got = substitute(t, [basis_vector(i, n, ctx) for i in range(n)])
    if got != t:
        return {"t": _fmt(t), "got": _fmt(got)}
    return None


def _check_commutativity(rng, ctx, max_dim):
    n, m, k = (rng.randint(1, max_dim) for _ in range(3))
    t = random_ball_vector(rng, n, ctx)
    s = random_ball_vector(rng, m, ctx)
    x = [[random_ball_vector(rng, k, ctx) for _ in range(m)] for _ in range(n)]
    lhs = substitute(t, [substitute(s, x[i]) for i in range(n)])
    rhs = substitute(s, [substitute(t, [x[i][j] for i in range(n)]) for j in range(m)])
    if lhs != rhs:
        return {
            "t": _fmt(t),
            "s": _fmt(s),
            "x": [[_fmt(v) for v in row] for row in x],
            "lhs": _fmt(lhs),
            "rhs": _fmt(rhs),
        }
    return None


_LAWS = {
    "associativity": _check_associativity,
    "unit": _check_unit,
    "commutativity": _check_commutativity,
}


def check_laws(mode, samples, seed, ctx, max_dim=5):
    """Evaluate one monad law on ``samples`` random instances.

    A failing law is reported, never raised; the first counterexample is
    attached to the report.
    """
    try:
        law = _LAWS[mode]
    except KeyError:
        raise ValueError(f"unknown law {mode!r}; expected one of {sorted(_LAWS)}") from None
    rng = random.Random(seed)
    for _ in range(samples):
        bad = law(rng, ctx, max_dim)
        if bad is not None:
            return LawReport(mode, samples, False, bad)
    return LawReport(mode, samples, True)
