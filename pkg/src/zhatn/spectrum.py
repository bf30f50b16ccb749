"""Point-set model of Spec A_N and of its gluing with Spec Z.

Every nonempty open set in either space is cofinite, so an open set is
stored as the finite set of points it misses.
"""

from dataclasses import dataclass, field

from sympy import isprime

from .arith import NRational
from .errors import MalformedInput, PointNotInSpace

__all__ = [
    "Point",
    "ZERO",
    "INFINITY",
    "prime_point",
    "SPEC_AN",
    "ZHAT_N",
    "SPACES",
    "OpenSetDesc",
    "WHOLE_SPACE",
    "is_open",
    "contains",
    "closure",
    "specializes",
    "stalk_predicate",
    "express_in_localization",
    "parse_point",
    "format_point",
    "parse_open_set",
    "format_open_set",
]

SPEC_AN = "SpecAN"
ZHAT_N = "ZhatN"
SPACES = (SPEC_AN, ZHAT_N)
WHOLE_SPACE = "whole"


@dataclass(frozen=True, order=True)
class Point:
    """``kind`` is 0 for (0), 1 for a prime (p), 2 for infinity."""

    kind: int
    p: int = 0

    def __post_init__(self):
        if self.kind == 1 and not isprime(self.p):
            raise MalformedInput(f"{self.p} is not prime")
        if self.kind not in (0, 1, 2):
            raise MalformedInput(f"unknown point kind {self.kind}")

    @property
    def is_zero(self):
        return self.kind == 0

    @property
    def is_infinity(self):
        return self.kind == 2

    @property
    def is_prime(self):
        return self.kind == 1

    def __str__(self):
        return format_point(self)


ZERO = Point(0)
INFINITY = Point(2)


def prime_point(p):
    return Point(1, int(p))


def _check_space(space):
    if space not in SPACES:
        raise MalformedInput(f"unknown space {space!r}; expected one of {SPACES}")


def contains(space, x, ctx):
    """Whether x is a point of the given space."""
    _check_space(space)
    if x.is_prime and space == SPEC_AN:
        return ctx.N % x.p != 0
    return True


@dataclass(frozen=True)
class OpenSetDesc:
    space: str
    empty: bool = False
    complement: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        _check_space(self.space)
        object.__setattr__(self, "complement", frozenset(self.complement))

    def __contains__(self, x):
        return not self.empty and x not in self.complement


def is_open(U, ctx):
    if U.empty:
        return True
    for x in U.complement:
        if not contains(U.space, x, ctx):
            raise PointNotInSpace(f"{x} is not a point of {U.space} for N={ctx.N}")
    if ZERO in U.complement:
        return False
    if U.space == SPEC_AN:
        return INFINITY not in U.complement
    if INFINITY in U.complement:
        return True
    return all(x.is_infinity or ctx.N % x.p == 0 for x in U.complement)


def closure(x, space, ctx):
    """Closure of a point: a frozenset, or WHOLE_SPACE for the generic point.

    (0) is generic; infinity and (p) with p | N are closed; (p) with p not
    dividing N specializes to infinity.
    """
    if not contains(space, x, ctx):
        raise PointNotInSpace(f"{x} is not a point of {space} for N={ctx.N}")
    if x.is_zero:
        return WHOLE_SPACE
    if x.is_infinity or ctx.N % x.p == 0:
        return frozenset({x})
    return frozenset({x, INFINITY})


def specializes(x, y, space, ctx):
    """True when y lies in the closure of x."""
    c = closure(x, space, ctx)
    return c == WHOLE_SPACE or y in c


def _lowest_terms_numerator(a):
    return a.as_fraction().numerator


def stalk_predicate(x, a):
    """Membership of a in the prime ideal at x."""
    if x.is_infinity:
        return abs(a) < 1
    if x.is_zero:
        return not a
    return _lowest_terms_numerator(a) % x.p == 0


def express_in_localization(x):
    """Write x = a * N^k with |a| <= 1 and k minimal.

    The pair (a, k) is x seen as a fraction a / N^-k of an element of A_N(1)
    by a power of the inverted element 1/N.
    """
    ctx = x.ctx
    N = ctx.N
    if not x:
        return ctx.zero(), 0
    # |x| = |num| / N^exp <= N^k  <=>  |num| <= N^(exp + k)
    num = abs(x.num)
    k, bound = 0, N**x.exp
    while num > bound:
        bound *= N
        k += 1
    return NRational(x.num, x.exp + k, ctx), k


# -- text forms ---------------------------------------------------------------


def parse_point(text):
    if not isinstance(text, str):
        raise MalformedInput(f"point must be a string, got {text!r}")
    s = text.strip()
    if s == "0":
        return ZERO
    if s == "inf":
        return INFINITY
    if s.startswith("p:") and s[2:].isdigit():
        p = int(s[2:])
        if not isprime(p):
            raise MalformedInput(f"{p} is not prime in point {text!r}")
        return prime_point(p)
    raise MalformedInput(f"malformed point {text!r}; expected '0', 'p:<prime>' or 'inf'")


def format_point(x):
    if x.is_zero:
        return "0"
    if x.is_infinity:
        return "inf"
    return f"p:{x.p}"


def parse_open_set(doc):
    if not isinstance(doc, dict):
        raise MalformedInput("open set must be a JSON object")
    space = doc.get("space")
    _check_space(space)
    complement = doc.get("complement", [])
    if not isinstance(complement, list):
        raise MalformedInput("'complement' must be a list of points")
    empty = doc.get("empty", False)
    if not isinstance(empty, bool):
        raise MalformedInput("'empty' must be a boolean")
    return OpenSetDesc(space, empty, frozenset(parse_point(p) for p in complement))


def format_open_set(U):
    doc = {"space": U.space, "complement": [format_point(x) for x in sorted(U.complement)]}
    if U.empty:
        doc["empty"] = True
    return doc

