import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from pseudotri.laurent import LaurentPoly, NotDivisible


def lp(nvars, terms):
    return LaurentPoly(nvars, terms)


X = LaurentPoly.variable(3, 0)
Y = LaurentPoly.variable(3, 1)
Z = LaurentPoly.variable(3, 2)
ONE = LaurentPoly.one(3)


def test_add_cancels():
    assert (X + (-X)).is_zero()


def test_mul_inverse_monomial():
    xinv = LaurentPoly.monomial(3, (-1, 0, 0))
    assert (xinv * X).is_one()


def test_expansion_example():
    # (z+1)(x+y) = x + y + xz + yz, as used by the worked flip relation
    left = (Z + ONE) * (X + Y)
    expect = X + Y + X * Z + Y * Z
    assert left == expect


def test_div_exact_factor():
    f = X + Y + X * Z + Y * Z
    assert f.div_exact(Z + ONE) == X + Y


def test_div_exact_monomial_shift():
    f = X + Y
    m = LaurentPoly.monomial(3, (1, 1, 1))
    q = f.div_exact(m)
    assert q * m == f
    assert q.denominator_vector() == (1, 1, 1)


def test_div_exact_square():
    f = X * Y + Z + ONE
    assert (f * f).div_exact(f) == f


def test_not_divisible():
    with pytest.raises(NotDivisible):
        X.div_exact(X + ONE)


def test_denominator_vector():
    xz = LaurentPoly.monomial(3, (1, 0, 1))
    f = (X + Y).div_exact(LaurentPoly.monomial(3, (0, 0, 1)))
    assert f.denominator_vector() == (0, 0, 1)
    g = ((X + Y) * (Z + ONE)).div_exact(LaurentPoly.monomial(3, (1, 1, 1)))
    assert g.denominator_vector() == (1, 1, 1)
    assert X.denominator_vector() == (0, 0, 0)


def test_text_form_sorted():
    f = (X + Y) * (Z + ONE)
    assert f.to_text(["x", "y", "z"]) == "x*z + y*z + x + y"


def test_json_round_trip():
    f = (X - Y * Y) * (Z + ONE) * LaurentPoly.constant(3, -3)
    data = f.to_json()
    assert all(isinstance(t["coeff"], str) for t in data["terms"])
    assert LaurentPoly.from_json(data) == f


small_poly = st.builds(
    lambda terms: LaurentPoly(2, {tuple(e): c for e, c in terms}),
    st.lists(
        st.tuples(
            st.tuples(st.integers(-3, 3), st.integers(-3, 3)),
            st.integers(-5, 5),
        ),
        max_size=5,
    ),
)


@given(small_poly, small_poly, small_poly)
@settings(max_examples=200, deadline=None)
def test_ring_laws(f, g, h):
    assert (f + g) + h == f + (g + h)
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h


@given(small_poly, small_poly)
@settings(max_examples=100, deadline=None)
def test_mul_then_div(f, g):
    if f.is_zero():
        return
    assert (g * f).div_exact(f) == g


def test_forty_binomial_product_evaluation():
    # big-integer stress: product of 40 random binomials evaluated exactly
    rng = random.Random(7)
    nv = 3
    prod = LaurentPoly.one(nv)
    factors = []
    for _ in range(40):
        e1 = tuple(rng.randint(-2, 2) for _ in range(nv))
        e2 = tuple(rng.randint(-2, 2) for _ in range(nv))
        c1, c2 = rng.randint(1, 9), rng.randint(1, 9)
        if e1 == e2:
            e2 = tuple(x + 1 for x in e2)
        b = LaurentPoly(nv, {e1: c1, e2: c2})
        factors.append(b)
        prod = prod * b
    point = [Fraction(2), Fraction(3), Fraction(5)]
    direct = Fraction(1)
    for b in factors:
        direct *= b.evaluate(point)
    assert prod.evaluate(point) == direct
    assert max(abs(c) for c in prod.terms.values()) > 2**64  # no silent overflow
