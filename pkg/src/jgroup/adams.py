"""Adams operations and Bott classes on KO~(CP^2t).

Everything here is parameterised by an odd operator index ``k``; callers may
pass either an int or a :class:`~jgroup.valuation.LocalContext`.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, gcd
from typing import Union

from .truncpoly import TruncPoly, monomial_to_mu, mu_poly
from .valuation import LocalContext

KLike = Union[int, LocalContext]


def _k(k: KLike) -> int:
    k = k.k if isinstance(k, LocalContext) else int(k)
    if k < 1 or k % 2 == 0:
        raise ValueError(f"operator index must be a positive odd integer, got {k}")
    return k


@lru_cache(maxsize=None)
def _bott(k: int) -> tuple[Fraction, ...]:
    q = (k - 1) // 2
    return tuple(Fraction(k, 2 * j + 1) * comb(q + j, 2 * j) for j in range(q + 1))


def bott_coeffs(k: KLike) -> list[Fraction]:
    """b_0..b_q with psi^k(y) = y (sum_j b_j y^j)^2."""
    return list(_bott(_k(k)))


def _bott_poly(k: int, t: int) -> TruncPoly:
    return TruncPoly(t, _bott(k))


@lru_cache(maxsize=None)
def _psi_y(k: int, t: int) -> TruncPoly:
    b = _bott_poly(k, t)
    return TruncPoly.y(t) * b * b


def psi_y(k: KLike, t: int) -> TruncPoly:
    return _psi_y(_k(k), t)


def _require_reduced(P: TruncPoly):
    if P[0] != 0:
        raise ValueError("expected an element of KO~ (zero constant term)")


def psi_apply(k: KLike, P: TruncPoly) -> TruncPoly:
    """psi^k(P), using that psi^k is a ring map with psi^k(y^r) = psi^k(y)^r."""
    _require_reduced(P)
    py = _psi_y(_k(k), P.t)
    out = TruncPoly.zero(P.t)
    power = TruncPoly.one(P.t)
    for r in range(1, P.t + 1):
        power = power * py
        if P[r]:
            out = out + power * P[r]
    return out


@lru_cache(maxsize=None)
def _c_row(k: int, r: int) -> tuple[Fraction, ...]:
    # coefficients of (sum_j b_j y^j)^(2r), i.e. C_{j,r} for j = 0..2rq
    b = _bott(k)
    row = [Fraction(1)]
    for _ in range(2 * r):
        nxt = [Fraction(0)] * (len(row) + len(b) - 1)
        for i, ri in enumerate(row):
            for j, bj in enumerate(b):
                nxt[i + j] += ri * bj
        row = nxt
    return tuple(row)


def c_coeff(k: KLike, j: int, r: int) -> Fraction:
    """Coefficient of y^(r+j) in psi^k(y)^r; zero outside 0 <= j <= 2rq."""
    if r < 1:
        raise ValueError("r must be positive")
    row = _c_row(_k(k), r)
    if j < 0 or j >= len(row):
        return Fraction(0)
    return row[j]


def band_start(k: KLike, r: int) -> int:
    """First i contributing to the y^r coefficient of psi^k(y^i)."""
    return max((r - 1) // _k(k) + 1, 1)


def one_minus_psi_matrix(k: KLike, t: int) -> list[list[Fraction]]:
    """Matrix of (1 - psi^k) on the coordinates (a_1, ..., a_t) of sum a_r y^r.

    Row r, column i (1-based) holds the y^r coefficient of (1 - psi^k)(y^i).
    """
    k = _k(k)
    mat = [[Fraction(0)] * t for _ in range(t)]
    for r in range(1, t + 1):
        mat[r - 1][r - 1] = Fraction(1 - k ** (2 * r))
        for i in range(band_start(k, r), r):
            mat[r - 1][i - 1] = -c_coeff(k, r - i, i)
    return mat


@lru_cache(maxsize=None)
def _theta_mu(k: int, s: int, t: int) -> TruncPoly:
    # theta_k(r L - 2) = (1/k) prod_{u in J} (rL - u - 1/u); in terms of
    # x = rL - 2 this is (1/k) sum_j b_j x^j.
    x = mu_poly(s, t)
    acc = TruncPoly.zero(t)
    power = TruncPoly.one(t)
    for bj in _bott(k):
        acc = acc + power * bj
        power = power * x
    return acc * Fraction(1, k)


@lru_cache(maxsize=None)
def _theta_monomial(k: int, n: int, t: int) -> TruncPoly:
    out = TruncPoly.one(t)
    for s, c in enumerate(monomial_to_mu(n, t), start=1):
        if c:
            out = out * _theta_mu(k, s, t) ** c
    return out


def theta_mu(k: KLike, s: int, t: int) -> TruncPoly:
    """theta_k of the realified line bundle class r(xi^s) - 2."""
    return _theta_mu(_k(k), s, t)


def theta_apply(k: KLike, P: TruncPoly) -> TruncPoly:
    """The Bott class theta_k(P) in 1 + KO~, normalised to constant term 1.

    Computed from the exponential law over the basis r(xi^s) - 2.
    """
    _require_reduced(P)
    k = _k(k)
    out = TruncPoly.one(P.t)
    for n in range(1, P.t + 1):
        m = P[n]
        if not m:
            continue
        if m.denominator != 1:
            raise ValueError("theta_apply needs integer coefficients")
        out = out * _theta_monomial(k, n, P.t) ** int(m)
    _check_k_denominators(k, out)
    return out


def _check_k_denominators(k: int, P: TruncPoly):
    for c in P.coeffs:
        d = c.denominator
        while (g := gcd(d, k)) > 1:
            d //= g
        if d != 1:
            raise ArithmeticError(f"unexpected denominator {c.denominator} in theta_{k}")
