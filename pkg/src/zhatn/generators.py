"""Seeded random instances for property checks.

All generators take an explicit ``random.Random`` so that every corpus is
reproducible from its seed.
"""

from .arith import NRational, PicElement, pic_to_value
from .bundles import BundleRep
from .monad import ANMatrix
from .octahedral import random_oct

__all__ = [
    "random_pic",
    "random_positive_unit",
    "random_z1n",
    "random_composition",
    "random_idempotent",
    "random_glz",
    "random_bundle",
]


def random_pic(rng, ctx, bound=4):
    return PicElement(tuple(rng.randint(-bound, bound) for _ in ctx.primes), ctx)


def random_positive_unit(rng, ctx, bound=4):
    return pic_to_value(random_pic(rng, ctx, bound))


def random_z1n(rng, ctx, bound=10**4, max_exp=4):
    return NRational(rng.randint(-bound, bound), rng.randint(0, max_exp), ctx)


def random_composition(rng, total, parts):
    """Positive integers of the given count summing to total."""
    cuts = sorted(rng.sample(range(1, total), parts - 1))
    edges = [0] + cuts + [total]
    return [b - a for a, b in zip(edges, edges[1:])]


def _positive_simplex_point(rng, ctx, size):
    e = 0
    while ctx.N**e < size:
        e += 1
    e += rng.randint(0, 1)
    return [NRational(c, e, ctx) for c in random_composition(rng, ctx.N**e, size)]


def random_idempotent(rng, ctx, max_n=8, max_blocks=4, minimal=False, ones=False):
    """A block sum of rank-one idempotents, conjugated by a signed permutation.

    Each block on index set I is u w^T restricted to I: u is supported on a
    random nonempty T inside I with sum |u_i| = 1 and random signs, w agrees
    with the signs of u on T and is drawn from {0, +-1/N, +-1} off T, so that
    w^T u = 1.  ``minimal=True`` forces T = I.  ``ones=True`` gives the plain
    blocks u 1^T with u >= 0, all signs then coming from the conjugation.

    Returns the matrix and its number of blocks.
    """
    k = rng.randint(1, min(max_blocks, max_n))
    n = rng.randint(k, max_n)
    sizes = random_composition(rng, n, k) if k > 1 else [n]
    zero = ctx.zero()
    grid = [[zero] * n for _ in range(n)]
    start = 0
    off_support = [ctx.one(), -ctx.one(), NRational(1, 1, ctx), NRational(-1, 1, ctx), zero]
    for size in sizes:
        idx = list(range(start, start + size))
        start += size
        if minimal:
            support = idx
        else:
            support = sorted(rng.sample(idx, rng.randint(1, size)))
        mags = _positive_simplex_point(rng, ctx, len(support))
        signs = {i: 1 if ones else rng.choice((1, -1)) for i in support}
        u = {i: (m if signs[i] > 0 else -m) for i, m in zip(support, mags)}
        w = {}
        for j in idx:
            if ones:
                w[j] = ctx.one()
            elif j in signs:
                w[j] = ctx.one() if signs[j] > 0 else -ctx.one()
            else:
                w[j] = rng.choice(off_support)
        for i in support:
            for j in idx:
                grid[i][j] = u[i] * w[j]
    C = random_oct(rng, n)
    return ANMatrix(ctx, n, n, tuple(C.conjugate(grid))), k


def random_glz(rng, r, steps=8, bound=3):
    """Random element of GL_r(Z) as a product of elementary matrices."""
    if r == 0:
        return ()
    D = [[int(i == j) for j in range(r)] for i in range(r)]
    for _ in range(steps):
        move = rng.random()
        i, j = rng.randrange(r), rng.randrange(r)
        if move < 0.15:
            # negate column i
            for row in D:
                row[i] = -row[i]
        elif move < 0.3 and i != j:
            for row in D:
                row[i], row[j] = row[j], row[i]
        elif i != j:
            c = rng.choice([c for c in range(-bound, bound + 1) if c])
            for row in D:
                row[j] += c * row[i]
    return tuple(tuple(row) for row in D)


def _matmul(X, Y, ctx):
    n, k, m = len(X), len(Y), len(Y[0]) if Y else 0
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = ctx.zero()
            for l in range(k):
                acc = acc + X[i][l] * Y[l][j]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def _elementary_z1n(rng, ctx, r, steps=4):
    """Product of elementary matrices with small Z[1/N] off-diagonal entries."""
    M = [[ctx.one() if i == j else ctx.zero() for j in range(r)] for i in range(r)]
    for _ in range(steps):
        if r < 2:
            break
        i, j = rng.sample(range(r), 2)
        c = NRational(rng.randint(-3, 3), rng.randint(0, 2), ctx)
        for row in M:
            row[j] = row[j] + c * row[i]
    return tuple(tuple(row) for row in M)


def _lift(D, ctx):
    return tuple(tuple(NRational(x, 0, ctx) for x in row) for row in D)


def random_bundle(rng, ctx, r):
    """Random element of GL_r(Z[1/N]).

    A product of integer elementary matrices, Z[1/N] elementary matrices,
    a diagonal of random units with random signs, and a power of N.
    """
    diag = tuple(
        tuple(
            (random_positive_unit(rng, ctx, 2) * rng.choice((1, -1))) if i == j else ctx.zero()
            for j in range(r)
        )
        for i in range(r)
    )
    M = _matmul(_lift(random_glz(rng, r), ctx), _elementary_z1n(rng, ctx, r), ctx)
    M = _matmul(M, diag, ctx)
    M = _matmul(M, _lift(random_glz(rng, r), ctx), ctx)
    scale = NRational(1, rng.randint(0, 2), ctx) * (ctx.N ** rng.randint(0, 1))
    M = tuple(tuple(scale * x for x in row) for row in M)
    return BundleRep(ctx, r, M)
