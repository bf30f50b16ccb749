from fractions import Fraction

import pytest
from hypothesis import given, strategies as st
from sympy import factorint

from zhatn.arith import (
    NRational,
    PicElement,
    is_unit,
    make_context,
    normalize,
    parse_rational,
    pic_op,
    pic_to_value,
    ring_op,
    unit_log,
)
from zhatn.errors import InvalidModulus, MalformedInput, NotAPositiveUnit, NotInZ1N

MODULI = [2, 3, 6, 10, 12, 30]


def minimal_exponent_oracle(num, exp, N):
    """Least k such that (num / N^exp) * N^k is an integer, by exhaustive search."""
    value = Fraction(num, N**exp)
    for k in range(exp + 1):
        if (value * N**k).denominator == 1:
            return k
    raise AssertionError("unreachable")


@pytest.mark.parametrize("N, primes", [(6, (2, 3)), (2, (2,)), (12, (2, 3)), (30, (2, 3, 5))])
def test_make_context(N, primes):
    assert make_context(N).primes == primes


@pytest.mark.parametrize("N", [1, 0, -4])
def test_make_context_rejects_small_modulus(N):
    with pytest.raises(InvalidModulus):
        make_context(N)


@pytest.mark.parametrize(
    "num, exp, N, expected",
    [(5, 0, 6, (5, 0)), (3, 1, 6, (3, 1)), (15, 2, 6, (15, 2)), (0, 7, 2, (0, 0)), (12, 2, 2, (3, 0))],
)
def test_normalize_examples(num, exp, N, expected):
    x = normalize(num, exp, make_context(N))
    assert (x.num, x.exp) == expected
    assert x.exp == minimal_exponent_oracle(num, exp, N) or num == 0


@given(st.sampled_from(MODULI), st.integers(-10**6, 10**6), st.integers(0, 6))
def test_normalize_is_minimal_and_idempotent(N, num, exp):
    ctx = make_context(N)
    x = normalize(num, exp, ctx)
    assert x.as_fraction() == Fraction(num, N**exp)
    if num:
        assert x.exp == minimal_exponent_oracle(num, exp, N)
    else:
        assert (x.num, x.exp) == (0, 0)
    y = normalize(x.num, x.exp, ctx)
    assert (y.num, y.exp) == (x.num, x.exp)


@given(st.sampled_from(MODULI), st.integers(-10**4, 10**4), st.integers(0, 4), st.integers(0, 4))
def test_equal_values_normalize_identically(N, num, exp, shift):
    ctx = make_context(N)
    x = normalize(num, exp, ctx)
    y = normalize(num * N**shift, exp + shift, ctx)
    assert (x.num, x.exp) == (y.num, y.exp)


def z1n(N):
    return st.tuples(st.integers(-10**5, 10**5), st.integers(0, 5)).map(
        lambda t: NRational(t[0], t[1], make_context(N))
    )


@pytest.mark.parametrize("N", [2, 6, 10])
@given(data=st.data())
def test_ring_ops_agree_with_fractions(N, data):
    x = data.draw(z1n(N))
    y = data.draw(z1n(N))
    fx, fy = x.as_fraction(), y.as_fraction()
    for op, expected in (("add", fx + fy), ("sub", fx - fy), ("mul", fx * fy)):
        got = ring_op(op, x, y)
        assert got.as_fraction() == expected
        assert got.exp == 0 or got.num % N != 0
    assert ring_op("neg", x).as_fraction() == -fx
    assert ring_op("abs", x).as_fraction() == abs(fx)
    assert ring_op("cmp", x, y) == (fx > fy) - (fx < fy)


def test_ring_op_examples():
    two, six = make_context(2), make_context(6)
    assert ring_op("add", NRational(1, 1, two), NRational(1, 1, two)) == 1
    prod = ring_op("mul", NRational(3, 1, six), NRational(3, 1, six))
    assert (prod.num, prod.exp) == (9, 2)
    assert prod.as_fraction() == Fraction(1, 4)
    a = ring_op("abs", NRational(-5, 3, two))
    assert (a.num, a.exp) == (5, 3)


def unit_oracle(x):
    q = x.as_fraction()
    if q == 0:
        return False
    bad = [p for p in factorint(abs(q.numerator)) if x.ctx.N % p]
    return not bad


@pytest.mark.parametrize(
    "text, N, expected", [("8/3", 6, True), ("5", 6, False), ("1", 6, True), ("0", 2, False), ("-1/4", 2, True)]
)
def test_is_unit_examples(text, N, expected):
    ctx = make_context(N)
    x = parse_rational(text, ctx)
    assert is_unit(x) is expected
    assert unit_oracle(x) is expected


def test_eight_thirds_representation():
    # 8/3 = 16/6 and 6 does not divide 16, so one power of 6 is minimal
    x = parse_rational("8/3", make_context(6))
    assert (x.num, x.exp) == (16, 1)
    assert minimal_exponent_oracle(96, 2, 6) == 1


@pytest.mark.parametrize("N", MODULI)
@given(data=st.data())
def test_is_unit_closure(N, data):
    x, y = data.draw(z1n(N)), data.draw(z1n(N))
    assert is_unit(x) == unit_oracle(x)
    if is_unit(x) and is_unit(y):
        assert is_unit(x * y)
    if is_unit(x):
        inv = x.inverse()
        assert is_unit(inv)
        assert (x * inv) == 1


@pytest.mark.parametrize(
    "text, N, exps", [("8/3", 6, (3, -1)), ("1", 6, (0, 0)), ("8", 2, (3,)), ("1/2", 2, (-1,)), ("25/6", 30, (-1, -1, 2))]
)
def test_unit_log_examples(text, N, exps):
    ctx = make_context(N)
    x = parse_rational(text, ctx)
    p = unit_log(x)
    assert p.exps == exps
    assert pic_to_value(p) == x


@pytest.mark.parametrize("text", ["0", "-2", "5", "3/2"])
def test_unit_log_rejects(text):
    with pytest.raises(NotAPositiveUnit):
        unit_log(parse_rational(text, make_context(2)))


def pic_vectors(N):
    ctx = make_context(N)
    return st.lists(st.integers(-6, 6), min_size=len(ctx.primes), max_size=len(ctx.primes)).map(
        lambda v: PicElement(tuple(v), ctx)
    )


@pytest.mark.parametrize("N", MODULI)
@given(data=st.data())
def test_unit_log_is_an_isomorphism(N, data):
    a, b = data.draw(pic_vectors(N)), data.draw(pic_vectors(N))
    x, y = pic_to_value(a), pic_to_value(b)
    # independent value check through the prime factorization
    expected = Fraction(1)
    for p, e in zip(a.ctx.primes, a.exps):
        expected *= Fraction(p) ** e
    assert x.as_fraction() == expected
    assert unit_log(x) == a
    assert unit_log(x * y) == a + b


def test_pic_op_examples():
    two, six = make_context(2), make_context(6)
    assert pic_op("add", PicElement((1,), two), PicElement((2,), two)).exps == (3,)
    assert pic_op("neg", PicElement((3, -1), six)).exps == (-3, 1)
    x = PicElement((4, -2), six)
    assert pic_op("add", x, pic_op("zero", six)) == x


def test_pic_add_matches_line_bundle_tensor():
    ctx = make_context(2)
    lam, mu = parse_rational("2", ctx), parse_rational("4", ctx)
    assert unit_log(lam) + unit_log(mu) == unit_log(lam * mu)


@pytest.mark.parametrize("text", ["1/0", "1/-2", "abc", "1.5", "", "/2", "2/"])
def test_parse_rational_malformed(text):
    with pytest.raises(MalformedInput):
        parse_rational(text, make_context(2))


def test_parse_rational_rejects_non_smooth_denominator():
    with pytest.raises(NotInZ1N):
        parse_rational("1/3", make_context(2))
    x = parse_rational("-3/12", make_context(6))
    assert x.as_fraction() == Fraction(-1, 4)


def test_mixing_moduli_is_an_error():
    with pytest.raises(ValueError):
        NRational(1, 1, make_context(2)) + NRational(1, 1, make_context(3))


def test_text_roundtrip():
    ctx = make_context(10)
    for text in ["0", "7", "-7", "1/2", "3/5", "-21/100"]:
        assert str(parse_rational(text, ctx)) == text
