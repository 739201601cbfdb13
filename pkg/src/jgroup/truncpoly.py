"""The truncated polynomial ring Q[y]/(y^(t+1)).

``KO~(CP^2t)`` is the ideal of polynomials with zero constant term in
``Z[y]/(y^(t+1))``, where ``y`` is the realified Hopf bundle minus 2.
Coefficients are kept as Fractions so that images under Bott classes (which
carry powers of k in their denominators) live in the same type.
"""
from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .valuation import rat


class TruncationMismatch(ValueError):
    pass


class TruncPoly:
    """c_0 + c_1 y + ... + c_t y^t with exact rational coefficients.

    Instances are immutable; ``coeffs`` always has length ``t + 1``.
    """

    __slots__ = ("t", "coeffs")

    def __init__(self, t: int, coeffs: Iterable = ()):
        if t < 1:
            raise ValueError("truncation degree must be >= 1")
        cs = [rat(c) for c in coeffs]
        if len(cs) > t + 1:
            # higher terms vanish in the quotient ring
            cs = cs[: t + 1]
        cs.extend([Fraction(0)] * (t + 1 - len(cs)))
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("TruncPoly is immutable")

    @classmethod
    def zero(cls, t: int) -> "TruncPoly":
        return cls(t)

    @classmethod
    def one(cls, t: int) -> "TruncPoly":
        return cls(t, [1])

    @classmethod
    def y(cls, t: int) -> "TruncPoly":
        return cls(t, [0, 1])

    @classmethod
    def monomial(cls, n: int, t: int, c=1) -> "TruncPoly":
        cs = [0] * (t + 1)
        if n <= t:
            cs[n] = c
        return cls(t, cs)

    @classmethod
    def from_reduced(cls, m_vec: Sequence, t: int | None = None) -> "TruncPoly":
        """m_1 y + ... + m_t y^t from the list [m_1, ..., m_t]."""
        if t is None:
            t = len(m_vec)
        return cls(t, [0, *m_vec])

    def __getitem__(self, n: int) -> Fraction:
        return self.coeffs[n]

    @property
    def reduced(self) -> tuple[Fraction, ...]:
        """Coefficients of y^1..y^t."""
        return self.coeffs[1:]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def degree(self) -> int:
        for n in range(self.t, -1, -1):
            if self.coeffs[n]:
                return n
        return -1

    def _check(self, other: "TruncPoly"):
        if self.t != other.t:
            raise TruncationMismatch(
                f"truncation degrees differ: {self.t} vs {other.t}"
            )

    def _coerce(self, other) -> "TruncPoly | None":
        if isinstance(other, TruncPoly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return TruncPoly(self.t, [other])
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return TruncPoly(self.t, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return TruncPoly(self.t, [-a for a in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return TruncPoly(self.t, [a - b for a, b in zip(self.coeffs, o.coeffs)])

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return TruncPoly(self.t, [other * a for a in self.coeffs])
        if not isinstance(other, TruncPoly):
            return NotImplemented
        self._check(other)
        t = self.t
        a, b = self.coeffs, other.coeffs
        out = [Fraction(0)] * (t + 1)
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j in range(t + 1 - i):
                bj = b[j]
                if bj:
                    out[i + j] += ai * bj
        return TruncPoly(t, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / other)
        if isinstance(other, TruncPoly):
            return self * other.inverse()
        return NotImplemented

    def inverse(self) -> "TruncPoly":
        """Inverse of a series with nonzero constant term."""
        c0 = self.coeffs[0]
        if c0 == 0:
            raise ZeroDivisionError("series with zero constant term is not a unit")
        inv_c0 = 1 / c0
        # self = c0 (1 + n) with n nilpotent of order t + 1
        n = self * inv_c0 - 1
        acc = TruncPoly.one(self.t)
        term = TruncPoly.one(self.t)
        neg_n = -n
        for _ in range(self.t):
            term = term * neg_n
            if term.is_zero():
                break
            acc = acc + term
        return acc * inv_c0

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        base = self
        if n < 0:
            base = self.inverse()
            n = -n
        result = TruncPoly.one(self.t)
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, TruncPoly):
            return self.t == other.t and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == TruncPoly(self.t, [other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.t, self.coeffs))

    def __repr__(self):
        return f"TruncPoly(t={self.t}, {self})"

    def __str__(self):
        return format_poly(self.coeffs)

    def to_json(self) -> str:
        return json.dumps(self.to_list())

    def to_list(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_list(cls, items: Sequence[str]) -> "TruncPoly":
        if len(items) < 2:
            raise ValueError("need at least the coefficients of 1 and y")
        return cls(len(items) - 1, [Fraction(s) for s in items])

    @classmethod
    def from_json(cls, text: str) -> "TruncPoly":
        return cls.from_list(json.loads(text))


def format_poly(coeffs: Sequence[Fraction], var: str = "y") -> str:
    """Render as e.g. ``9y + 6y^2`` or ``1 + (1/3)y``."""
    terms = []
    for n, c in enumerate(coeffs):
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        if n == 0:
            body = str(mag)
        else:
            mono = var if n == 1 else f"{var}^{n}"
            if mag == 1:
                body = mono
            elif mag.denominator == 1:
                body = f"{mag}{mono}"
            else:
                body = f"({mag}){mono}"
        terms.append((sign, body))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def add(a: TruncPoly, b: TruncPoly) -> TruncPoly:
    return a + b


def mul(a: TruncPoly, b: TruncPoly) -> TruncPoly:
    return a * b


def int_pow(a: TruncPoly, n: int) -> TruncPoly:
    return a**n


@lru_cache(maxsize=None)
def _realified_powers(s: int, t: int) -> tuple[TruncPoly, ...]:
    # r_j = r(xi^j) as a polynomial in y: r_0 = 2, r_1 = y + 2,
    # r_{j+1} = (y + 2) r_j - r_{j-1}  (character z^j + z^-j)
    w = TruncPoly(t, [2, 1])
    rs = [TruncPoly(t, [2]), w]
    for _ in range(2, s + 1):
        rs.append(w * rs[-1] - rs[-2])
    return tuple(rs)


def mu_poly(s: int, t: int) -> TruncPoly:
    """The class r(xi^s) - 2 written in the y-basis, truncated at degree t."""
    if s < 1:
        raise ValueError("s must be positive")
    return _realified_powers(s, t)[s] - 2


@lru_cache(maxsize=None)
def _monomial_to_mu(n: int) -> tuple[int, ...]:
    f = TruncPoly.monomial(n, n)
    out = [0] * n
    for s in range(n, 0, -1):
        c = f[s]
        if c:
            assert c.denominator == 1
            out[s - 1] = int(c)
            f = f - mu_poly(s, n) * c
    assert f.is_zero()
    return tuple(out)


def monomial_to_mu(n: int, t: int) -> list[int]:
    """Integers c_1..c_n with y^n = sum_s c_s * mu_poly(s)."""
    if not 1 <= n <= t:
        raise ValueError(f"need 1 <= n <= t, got n={n}, t={t}")
    return list(_monomial_to_mu(n))
