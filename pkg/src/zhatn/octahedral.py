"""Signed permutations, i.e. the group Oct_r of symmetries of the r-octahedron."""

import itertools
import math
from dataclasses import dataclass

__all__ = ["OctMatrix", "enumerate_oct", "oct_order", "random_oct"]


@dataclass(frozen=True)
class OctMatrix:
    """The signed permutation matrix C with C e_j = signs[j] * e_{perm[j]}."""

    perm: tuple
    signs: tuple

    def __post_init__(self):
        perm = tuple(int(p) for p in self.perm)
        signs = tuple(int(s) for s in self.signs)
        if sorted(perm) != list(range(len(perm))):
            raise ValueError(f"{perm} is not a permutation")
        if len(signs) != len(perm) or any(s not in (1, -1) for s in signs):
            raise ValueError(f"signs must be a +-1 vector of length {len(perm)}")
        object.__setattr__(self, "perm", perm)
        object.__setattr__(self, "signs", signs)

    @classmethod
    def identity(cls, r):
        return cls(tuple(range(r)), (1,) * r)

    @property
    def size(self):
        return len(self.perm)

    def matrix(self):
        r = self.size
        out = [[0] * r for _ in range(r)]
        for j, (p, s) in enumerate(zip(self.perm, self.signs)):
            out[p][j] = s
        return out

    def inverse(self):
        r = self.size
        perm = [0] * r
        signs = [0] * r
        for j, (p, s) in enumerate(zip(self.perm, self.signs)):
            perm[p] = j
            signs[p] = s
        return OctMatrix(tuple(perm), tuple(signs))

    def __matmul__(self, other):
        # (C D) e_j = C (d_j e_{q_j}) = d_j c_{q_j} e_{p_{q_j}}
        return OctMatrix(
            tuple(self.perm[q] for q in other.perm),
            tuple(d * self.signs[q] for q, d in zip(other.perm, other.signs)),
        )

    def act_left(self, rows):
        """C * M for M given as a list of rows (any ring supporting negation)."""
        out = [None] * self.size
        for j, (p, s) in enumerate(zip(self.perm, self.signs)):
            out[p] = tuple(rows[j]) if s == 1 else tuple(-x for x in rows[j])
        return out

    def conjugate(self, rows):
        """C * M * C^-1: entry (p_i, p_j) becomes s_i s_j m_ij."""
        r = self.size
        out = [[None] * r for _ in range(r)]
        for i in range(r):
            for j in range(r):
                x = rows[i][j]
                out[self.perm[i]][self.perm[j]] = x if self.signs[i] == self.signs[j] else -x
        return [tuple(row) for row in out]


def oct_order(r):
    return 2**r * math.factorial(r)


def enumerate_oct(r):
    for perm in itertools.permutations(range(r)):
        for signs in itertools.product((1, -1), repeat=r):
            yield OctMatrix(perm, signs)


def random_oct(rng, r):
    perm = list(range(r))
    rng.shuffle(perm)
    return OctMatrix(tuple(perm), tuple(rng.choice((1, -1)) for _ in range(r)))
