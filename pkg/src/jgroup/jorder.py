"""p-primary J-orders of elements of KO~(CP^m), m even.

Two independent engines are provided:

* :func:`jorder_valuation_formula1` works with the image of ``1 - psi^k``
  directly through the M-recursion;
* :func:`jorder_valuation_formula2` works multiplicatively, asking when
  ``theta_k(P)^(p^v)`` has the form ``psi^k(1+u)/(1+u)``, via the L-recursion.

Both return the exponent v in p^v = p-part of the J-order.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import prod
from typing import Sequence

from .adams import band_start, c_coeff, theta_apply
from .truncpoly import TruncPoly
from .valuation import (
    INFINITY,
    LocalContext,
    find_kp,
    lemma32_valuation,
    nu,
    primes_upto,
)


class FormulaDisagreement(RuntimeError):
    """Two engines that must agree returned different answers."""


class SearchCapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class ElementSpec:
    """The element m_1 y + ... + m_t y^t of KO~(CP^m), with m = 2t."""

    m: int
    m_vec: tuple[int, ...]

    def __post_init__(self):
        if self.m < 2 or self.m % 2:
            raise ValueError(
                f"m must be even and >= 2 (odd m reduces to m - 1), got {self.m}"
            )
        vec = tuple(int(x) for x in self.m_vec)
        if len(vec) != self.m // 2:
            raise ValueError(f"expected {self.m // 2} coefficients, got {len(vec)}")
        object.__setattr__(self, "m_vec", vec)

    @property
    def t(self) -> int:
        return self.m // 2

    @classmethod
    def monomial(cls, m: int, n: int) -> "ElementSpec":
        vec = [0] * (m // 2)
        vec[n - 1] = 1
        return cls(m, tuple(vec))

    def poly(self) -> TruncPoly:
        return TruncPoly.from_reduced(self.m_vec, self.t)

    def is_zero(self) -> bool:
        return not any(self.m_vec)


@dataclass
class JOrderReport:
    m: int
    m_vec: tuple[int, ...]
    per_prime: dict[int, int]
    order: int
    cross_checks: dict[str, dict[int, int]] = field(default_factory=dict)

    def to_dict(self) -> dict:
        d = {
            "m": self.m,
            "poly": list(self.m_vec),
            "valuations": {str(p): v for p, v in sorted(self.per_prime.items())},
            "order": str(self.order),
        }
        for name, vals in self.cross_checks.items():
            d[name] = {str(p): v for p, v in sorted(vals.items())}
        return d


def _one_minus_k_pow(k: int, lo: int, hi: int) -> int:
    # prod_{l=lo}^{hi} (1 - k^(2l)); empty product is 1
    return prod((1 - k ** (2 * l) for l in range(lo, hi + 1)), start=1)


def _k_pow_minus_one(k: int, lo: int, hi: int) -> int:
    return prod((k ** (2 * l) - 1 for l in range(lo, hi + 1)), start=1)


def denominator_valuation(ctx: LocalContext, r: int) -> int:
    """nu_p of prod_{i=1}^{r} (k^(2i) - 1)."""
    if ctx.p == 2 and ctx.k != 3:
        return sum(nu(2, ctx.k ** (2 * i) - 1) for i in range(1, r + 1))
    return lemma32_valuation(ctx, 1, r)


def m_values(ctx: LocalContext, spec: ElementSpec) -> list[Fraction]:
    """M_1..M_t, the scaled solutions of (1 - psi^k)(u) = P."""
    k, t = ctx.k, spec.t
    M: list[Fraction] = []
    for r in range(1, t + 1):
        acc = Fraction(spec.m_vec[r - 1] * _one_minus_k_pow(k, 1, r - 1))
        for i in range(band_start(k, r), r):
            c = c_coeff(k, r - i, i)
            if c:
                acc += c * _one_minus_k_pow(k, i + 1, r - 1) * M[i - 1]
        M.append(acc)
    return M


def jorder_valuation_formula1(ctx: LocalContext, spec: ElementSpec) -> int:
    best = 0
    for r, M in enumerate(m_values(ctx, spec), start=1):
        if M:
            best = max(best, denominator_valuation(ctx, r) - nu(ctx.p, M))
    return best


def l_values(ctx: LocalContext, alpha: Sequence[Fraction]) -> list[Fraction]:
    """L_1..L_t from the coefficients alpha_1..alpha_t of 1 + sum alpha_i y^i."""
    k = ctx.k
    t = len(alpha)
    L: list[Fraction] = []
    for r in range(1, t + 1):
        acc = alpha[r - 1] * _k_pow_minus_one(k, 1, r - 1)
        for i in range(1, r):
            if alpha[i - 1]:
                acc += L[r - i - 1] * alpha[i - 1] * _k_pow_minus_one(k, r - i + 1, r - 1)
        for i in range(band_start(k, r), r):
            c = c_coeff(k, r - i, i)
            if c:
                acc -= c * L[i - 1] * _k_pow_minus_one(k, i + 1, r - 1)
        L.append(acc)
    return L


def _formula2_holds(ctx: LocalContext, alpha: Sequence[Fraction]) -> bool:
    for r, L in enumerate(l_values(ctx, alpha), start=1):
        if nu(ctx.p, L) < denominator_valuation(ctx, r):
            return False
    return True


def jorder_valuation_formula2(
    ctx: LocalContext, spec: ElementSpec, v_cap: int | None = None
) -> int:
    """Smallest v for which theta_k(P)^(p^v) = psi^k(1+u)/(1+u) is solvable."""
    if spec.is_zero():
        return 0
    if v_cap is None:
        # the p-part of |JO(CP^m)| bounds every element order
        v_cap = denominator_valuation(ctx, spec.t)
    power = theta_apply(ctx, spec.poly())
    for v in range(v_cap + 1):
        if _formula2_holds(ctx, power.reduced):
            return v
        power = power**ctx.p
    raise SearchCapExceeded(
        f"no v <= {v_cap} satisfies the Bott class criterion at p={ctx.p}"
    )


def _check_small_prime(p: int, experimental: bool):
    if p not in (2, 3) and not experimental:
        raise ValueError(
            f"closed forms are established only for p = 2, 3 (got p={p}); "
            "pass experimental=True to evaluate anyway"
        )


def _nu_sum(p: int, upto: int) -> int:
    return sum(nu(p, s) for s in range(1, upto + 1))


def generator_valuation_closed(
    p: int, n: int, t: int, experimental: bool = False
) -> int:
    """Closed form for nu_p of the J-order of y^n in KO~(CP^2t), p = 2, 3."""
    _check_small_prime(p, experimental)
    if not 1 <= n <= t:
        raise ValueError("need 1 <= n <= t")
    lo, hi = 2 * n // (p - 1), 2 * t // (p - 1)
    shift = 2 * (n - 1) // (p - 1)
    # s = 0 only occurs for p > 2n + 1, outside the proven range
    candidates = [s - shift + nu(p, s) for s in range(max(lo, 1), hi + 1)]
    return max(candidates, default=0)


def prop36_valuation(p: int, n: int, r: int, experimental: bool = False) -> int:
    _check_small_prime(p, experimental)
    if not 1 <= n <= r:
        raise ValueError("need 1 <= n <= r")
    return _nu_sum(p, 2 * (r - 1) // (p - 1)) - _nu_sum(p, 2 * (n - 1) // (p - 1))


def normalized_m_values(ctx: LocalContext, n: int, t: int) -> list[Fraction]:
    """M-bar_n..M-bar_t for the monomial y^n, normalised so M-bar_n = 1."""
    k = ctx.k
    Mbar = {n: Fraction(1)}
    for r in range(n + 1, t + 1):
        acc = Fraction(0)
        for i in range(max(band_start(k, r), n), r):
            c = c_coeff(k, r - i, i)
            if c:
                acc += c * _one_minus_k_pow(k, i + 1, r - 1) * Mbar[i]
        Mbar[r] = acc
    return [Mbar[r] for r in range(n, t + 1)]


def monomial_valuation_normalized(ctx: LocalContext, n: int, t: int) -> int:
    """nu_p(b(y^n)) computed from the normalised recursion."""
    p, k = ctx.p, ctx.k
    best = 0
    for r, M in enumerate(normalized_m_values(ctx, n, t), start=n):
        if M:
            best = max(best, nu(p, _one_minus_k_pow(k, n, r)) - nu(p, M))
    return best


def compare_closed_form(p: int, n: int, t: int) -> dict:
    """Evaluate the closed form and the recursion side by side, any prime."""
    ctx = find_kp(p)
    closed = generator_valuation_closed(p, n, t, experimental=True)
    recursion = jorder_valuation_formula1(ctx, ElementSpec.monomial(2 * t, n))
    return {"p": p, "n": n, "t": t, "closed": closed, "recursion": recursion,
            "agree": closed == recursion}


def full_jorder(spec: ElementSpec, verify: bool = False) -> JOrderReport:
    """J-order of the element: one valuation per prime p <= m + 1.

    With ``verify`` the Bott class engine and the Smith normal form oracle
    are run too, and any disagreement raises :class:`FormulaDisagreement`.
    """
    per_prime: dict[int, int] = {}
    f2: dict[int, int] = {}
    oracle: dict[int, int] = {}
    for p in primes_upto(spec.m + 1):
        ctx = find_kp(p)
        v = jorder_valuation_formula1(ctx, spec)
        per_prime[p] = v
        if verify:
            from .groups import element_order_oracle

            try:
                f2[p] = jorder_valuation_formula2(ctx, spec, v_cap=v + 2)
            except SearchCapExceeded:
                f2[p] = -1
            oracle[p] = element_order_oracle(p, spec)
            if not f2[p] == oracle[p] == v:
                raise FormulaDisagreement(
                    f"p={p}, {spec}: formula I={v}, formula II={f2[p]}, "
                    f"oracle={oracle[p]}"
                )
    order = prod(p**v for p, v in per_prime.items())
    report = JOrderReport(spec.m, spec.m_vec, per_prime, order)
    if verify:
        report.cross_checks = {"formula2": f2, "oracle": oracle}
    return report


__all__ = [
    "ElementSpec",
    "FormulaDisagreement",
    "INFINITY",
    "JOrderReport",
    "SearchCapExceeded",
    "compare_closed_form",
    "denominator_valuation",
    "full_jorder",
    "generator_valuation_closed",
    "jorder_valuation_formula1",
    "jorder_valuation_formula2",
    "l_values",
    "m_values",
    "monomial_valuation_normalized",
    "normalized_m_values",
    "prop36_valuation",
]
