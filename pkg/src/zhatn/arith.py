"""Exact arithmetic in Z[1/N].

Elements are stored as ``num / N**exp`` with ``exp`` minimal, so membership
in Z[1/N] is structural: there is no denominator check at runtime, only at
parse time.

>>> ctx = make_context(6)
>>> x = parse_rational("8/3", ctx)
>>> x.num, x.exp
(16, 1)
>>> unit_log(x).exps
(3, -1)
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from math import gcd

from sympy import factorint

from .errors import InvalidModulus, MalformedInput, NotAPositiveUnit, NotInZ1N

__all__ = [
    "Context",
    "NRational",
    "PicElement",
    "make_context",
    "normalize",
    "ring_op",
    "is_unit",
    "unit_log",
    "pic_to_value",
    "pic_op",
    "parse_rational",
    "format_rational",
    "smooth_exponent",
]


@dataclass(frozen=True)
class Context:
    N: int
    primes: tuple

    def __post_init__(self):
        if self.N < 2:
            raise InvalidModulus(f"N must be >= 2, got {self.N}")
        expected = tuple(sorted(factorint(self.N)))
        if tuple(self.primes) != expected:
            raise InvalidModulus(
                f"primes {self.primes} are not the distinct prime divisors of {self.N}"
            )

    @property
    def rank(self):
        """Rank s of the free abelian group of positive units."""
        return len(self.primes)

    def zero(self):
        return NRational(0, 0, self)

    def one(self):
        return NRational(1, 0, self)

    def __call__(self, value):
        """Coerce an int, Fraction, NRational or textual rational."""
        if isinstance(value, NRational):
            if value.ctx != self:
                raise ValueError(f"element of Z[1/{value.ctx.N}] used with N={self.N}")
            return value
        if isinstance(value, bool):
            raise MalformedInput(f"not a rational: {value!r}")
        if isinstance(value, int):
            return NRational(value, 0, self)
        if isinstance(value, Fraction):
            return from_fraction(value, self)
        if isinstance(value, str):
            return parse_rational(value, self)
        raise MalformedInput(f"not a rational: {value!r}")


def make_context(N):
    if not isinstance(N, int) or isinstance(N, bool):
        raise InvalidModulus(f"N must be an integer, got {N!r}")
    if N < 2:
        raise InvalidModulus(f"N must be >= 2, got {N}")
    return Context(N, tuple(sorted(factorint(N))))


def _normal_pair(num, exp, N):
    if num == 0:
        return 0, 0
    if exp < 0:
        return num * N ** (-exp), 0
    while exp > 0 and num % N == 0:
        num //= N
        exp -= 1
    return num, exp


@total_ordering
class NRational:
    """An element ``num / N**exp`` of Z[1/N], always in minimal-exponent form.

    For composite N the numerator may still share factors with N (3/6 stays
    ``(3, 1)`` for N=6, since 1/2 is not an integer).
    """

    __slots__ = ("num", "exp", "ctx")

    def __init__(self, num, exp, ctx):
        num, exp = _normal_pair(int(num), int(exp), ctx.N)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "exp", exp)
        object.__setattr__(self, "ctx", ctx)

    def __setattr__(self, name, value):
        raise AttributeError("NRational is immutable")

    def _coerce(self, other):
        if isinstance(other, NRational):
            if other.ctx.N != self.ctx.N:
                raise ValueError(
                    f"mixing Z[1/{self.ctx.N}] and Z[1/{other.ctx.N}] elements"
                )
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return NRational(other, 0, self.ctx)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        N = self.ctx.N
        e = max(self.exp, other.exp)
        return NRational(
            self.num * N ** (e - self.exp) + other.num * N ** (e - other.exp), e, self.ctx
        )

    __radd__ = __add__

    def __neg__(self):
        return NRational(-self.num, self.exp, self.ctx)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return NRational(self.num * other.num, self.exp + other.exp, self.ctx)

    __rmul__ = __mul__

    def __abs__(self):
        return self if self.num >= 0 else -self

    def __bool__(self):
        return self.num != 0

    def sign(self):
        return (self.num > 0) - (self.num < 0)

    def cmp(self, other):
        other = self._coerce(other)
        N = self.ctx.N
        lhs = self.num * N**other.exp
        rhs = other.num * N**self.exp
        return (lhs > rhs) - (lhs < rhs)

    def __eq__(self, other):
        if isinstance(other, Fraction):
            return self.as_fraction() == other
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.num == other.num and self.exp == other.exp

    def __lt__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.cmp(other) < 0

    def __hash__(self):
        return hash((self.num, self.exp, self.ctx.N))

    def inverse(self):
        """Reciprocal; only units of Z[1/N] have one."""
        if not is_unit(self):
            raise NotAPositiveUnit(f"{self} is not a unit of Z[1/{self.ctx.N}]")
        k = smooth_exponent(abs(self.num), self.ctx.N)
        N = self.ctx.N
        return NRational(N**self.exp * (N**k // self.num), k, self.ctx)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def as_fraction(self):
        return Fraction(self.num, self.ctx.N**self.exp)

    def is_integral(self):
        return self.exp == 0

    def __str__(self):
        return format_rational(self)

    def __repr__(self):
        return f"NRational({self.num}, {self.exp}, N={self.ctx.N})"


def normalize(num, exp, ctx):
    return NRational(num, exp, ctx)


def ring_op(op, x, y=None):
    """Dispatch one of add, sub, mul, neg, abs, cmp."""
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "neg":
        return -x
    if op == "abs":
        return abs(x)
    if op == "cmp":
        return x.cmp(y)
    raise ValueError(f"unknown ring operation {op!r}")


def _strip_smooth(n, N):
    """Divide out every prime of N from n; the cofactor is returned."""
    n = abs(n)
    g = gcd(n, N)
    while g > 1:
        while n % g == 0:
            n //= g
        g = gcd(n, N)
    return n


def smooth_exponent(q, N):
    """Least e with q | N**e, or None when q has a prime factor not dividing N."""
    if q <= 0:
        raise ValueError("q must be positive")
    if _strip_smooth(q, N) != 1:
        return None
    e, power = 0, 1
    while power % q:
        power *= N
        e += 1
    return e


def is_unit(x):
    return x.num != 0 and _strip_smooth(x.num, x.ctx.N) == 1


def _valuation(n, p):
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@dataclass(frozen=True)
class PicElement:
    """Exponent vector of the positive unit prod(p_i ** exps[i])."""

    exps: tuple
    ctx: Context

    def __post_init__(self):
        exps = tuple(int(e) for e in self.exps)
        if len(exps) != len(self.ctx.primes):
            raise ValueError(
                f"expected {len(self.ctx.primes)} exponents for N={self.ctx.N}, got {len(exps)}"
            )
        object.__setattr__(self, "exps", exps)

    @classmethod
    def zero(cls, ctx):
        return cls((0,) * len(ctx.primes), ctx)

    def _check(self, other):
        if not isinstance(other, PicElement):
            return NotImplemented
        if other.ctx.N != self.ctx.N:
            raise ValueError("PicElements over different N")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return PicElement(tuple(a + b for a, b in zip(self.exps, other.exps)), self.ctx)

    def __neg__(self):
        return PicElement(tuple(-a for a in self.exps), self.ctx)

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __mul__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        return PicElement(tuple(k * a for a in self.exps), self.ctx)

    __rmul__ = __mul__

    def is_zero(self):
        return not any(self.exps)

    def as_dict(self):
        return {str(p): e for p, e in zip(self.ctx.primes, self.exps)}


def unit_log(x):
    if x.num <= 0 or not is_unit(x):
        raise NotAPositiveUnit(f"{x} is not a positive unit of Z[1/{x.ctx.N}]")
    ctx = x.ctx
    return PicElement(
        tuple(_valuation(x.num, p) - x.exp * _valuation(ctx.N, p) for p in ctx.primes),
        ctx,
    )


def pic_to_value(a):
    """Inverse of unit_log: p**(-k) is written as (N/p)**k / N**k."""
    ctx = a.ctx
    num, exp = 1, 0
    for p, e in zip(ctx.primes, a.exps):
        if e >= 0:
            num *= p**e
        else:
            num *= (ctx.N // p) ** (-e)
            exp += -e
    return NRational(num, exp, ctx)


def pic_op(op, a, b=None):
    if op == "add":
        return a + b
    if op == "neg":
        return -a
    if op == "zero":
        return PicElement.zero(a.ctx if isinstance(a, PicElement) else a)
    raise ValueError(f"unknown Pic operation {op!r}")


def from_fraction(q, ctx):
    e = smooth_exponent(q.denominator, ctx.N)
    if e is None:
        raise NotInZ1N(f"denominator {q.denominator} of {q} is not {ctx.N}-smooth")
    return NRational(q.numerator * (ctx.N**e // q.denominator), e, ctx)


def parse_rational(text, ctx):
    """Parse ``"p"`` or ``"p/q"`` (q > 0, q | N^inf) into normal form."""
    if isinstance(text, bool):
        raise MalformedInput(f"not a rational: {text!r}")
    if isinstance(text, int):
        return NRational(text, 0, ctx)
    if not isinstance(text, str):
        raise MalformedInput(f"rational must be a string or integer, got {text!r}")
    s = text.strip()
    num_s, sep, den_s = s.partition("/")
    try:
        p = _parse_int(num_s)
        q = _parse_int(den_s) if sep else 1
    except ValueError:
        raise MalformedInput(f"malformed rational {text!r}") from None
    if q <= 0:
        raise MalformedInput(f"denominator must be positive in {text!r}")
    e = smooth_exponent(q, ctx.N)
    if e is None:
        raise NotInZ1N(f"denominator {q} of {text!r} is not {ctx.N}-smooth")
    return NRational(p * (ctx.N**e // q), e, ctx)


def _parse_int(s):
    s = s.strip()
    body = s[1:] if s[:1] in "+-" else s
    if not body.isdigit() or not body.isascii():
        raise ValueError(s)
    return int(s)


def format_rational(x):
    q = x.as_fraction()
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"
