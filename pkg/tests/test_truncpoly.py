from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from jgroup.truncpoly import (
    TruncationMismatch,
    TruncPoly,
    format_poly,
    int_pow,
    monomial_to_mu,
    mu_poly,
    mul,
)

Y2 = TruncPoly.y(2)


def P(*coeffs, t=2):
    return TruncPoly(t, coeffs)


def test_products():
    assert mul(Y2, Y2) == P(0, 0, 1)
    assert mul(Y2, P(0, 0, 1)).is_zero()
    assert mul(P(3, 1), P(3, 1)) == P(9, 6, 1)


def test_powers():
    assert int_pow(P(1, 1), 2) == P(1, 2, 1)
    assert int_pow(P(1, 1), -1) == P(1, -1, 1)
    assert int_pow(P(1, Fraction(1, 3)), 8) == P(1, Fraction(8, 3), Fraction(28, 9))


def test_inverse_of_non_unit_fails():
    with pytest.raises(ZeroDivisionError):
        Y2**-1


def test_mismatched_degrees():
    with pytest.raises(TruncationMismatch):
        TruncPoly.y(2) + TruncPoly.y(3)
    with pytest.raises(TruncationMismatch):
        TruncPoly.y(2) * TruncPoly.y(3)


def test_coefficients_are_padded_and_truncated():
    assert TruncPoly(3, [1]).coeffs == (1, 0, 0, 0)
    assert TruncPoly(1, [0, 1, 5]) == TruncPoly.y(1)


def test_immutable():
    with pytest.raises(AttributeError):
        Y2.t = 5


def test_json_round_trip():
    a = P(0, Fraction(-2, 5), 3)
    assert a.to_list() == ["0", "-2/5", "3"]
    assert TruncPoly.from_json(a.to_json()) == a


@pytest.mark.parametrize(
    "coeffs, text",
    [((0, 9, 6), "9y + 6y^2"), ((1, Fraction(1, 3)), "1 + (1/3)y"),
     ((0, -1, -2), "-y - 2y^2"), ((0,), "0")],
)
def test_format(coeffs, text):
    assert format_poly([Fraction(c) for c in coeffs]) == text


@pytest.mark.parametrize(
    "s, expected", [(1, (0, 1, 0)), (2, (0, 4, 1)), (3, (0, 9, 6))]
)
def test_mu_poly_examples(s, expected):
    assert mu_poly(s, 2) == P(*expected)


@pytest.mark.parametrize("n, expected", [(1, [1]), (2, [-4, 1]), (3, [15, -6, 1])])
def test_monomial_to_mu_examples(n, expected):
    assert monomial_to_mu(n, 3) == expected


def test_monomial_to_mu_range():
    with pytest.raises(ValueError):
        monomial_to_mu(4, 3)


def chebyshev_oracle(s, t):
    y = sympy.Symbol("y")
    expr = sympy.expand(2 * sympy.chebyshevt(s, 1 + y / 2) - 2)
    poly = sympy.Poly(expr, y)
    return TruncPoly(t, [Fraction(int(poly.coeff_monomial(y**n))) for n in range(t + 1)])


@pytest.mark.parametrize("t", [1, 4, 8, 12])
def test_mu_poly_against_sympy_chebyshev(t):
    for s in range(1, 2 * t + 1):
        mu = mu_poly(s, t)
        assert mu == chebyshev_oracle(s, t)
        assert all(c.denominator == 1 for c in mu.coeffs)
        assert mu[0] == 0
        if s <= t:
            assert mu[s] == 1


@pytest.mark.parametrize("t", range(1, 13))
def test_monomial_reconstruction(t):
    for n in range(1, t + 1):
        total = TruncPoly.zero(t)
        for s, c in enumerate(monomial_to_mu(n, t), start=1):
            total = total + mu_poly(s, t) * c
        assert total == TruncPoly.monomial(n, t)


small_q = st.fractions(min_value=-20, max_value=20, max_denominator=9)


def polys(t=4, unit=False):
    head = st.fractions(min_value=1, max_value=5, max_denominator=3) if unit else small_q
    return st.builds(lambda c0, rest: TruncPoly(t, [c0, *rest]),
                     head, st.lists(small_q, min_size=t, max_size=t))


@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a + b - b == a


@given(polys(unit=True), st.integers(-5, 5), st.integers(-5, 5))
def test_power_law(a, m, n):
    assert int_pow(a, m + n) == int_pow(a, m) * int_pow(a, n)


@given(polys(unit=True))
def test_inverse(a):
    assert a * a.inverse() == TruncPoly.one(a.t)
