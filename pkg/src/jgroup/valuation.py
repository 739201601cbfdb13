"""Exact rationals, p-adic valuations and the choice of k_p.

Rationals are plain :class:`fractions.Fraction` values; they are always in
lowest terms with a positive denominator, and zero is ``0/1``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

INFINITY = float("inf")


def rat(x) -> Fraction:
    """Coerce an int, Fraction or ``"num/den"`` string to a Fraction."""
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


def rat_to_str(x) -> str:
    return str(rat(x))


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def primes_upto(n: int) -> list[int]:
    return [p for p in range(2, n + 1) if is_prime(p)]


def _nu_int(p: int, n: int) -> int:
    n = abs(n)
    if p == 2:
        return (n & -n).bit_length() - 1
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def nu(p: int, x) -> int | float:
    """p-adic valuation of a rational; ``INFINITY`` for zero.

    Negative for rationals whose denominator is divisible by p.
    """
    if isinstance(x, int):
        return INFINITY if x == 0 else _nu_int(p, x)
    x = rat(x)
    if x == 0:
        return INFINITY
    return _nu_int(p, x.numerator) - _nu_int(p, x.denominator)


def is_p_local(p: int, x) -> bool:
    """True iff x lies in Z_(p)."""
    return rat(x).denominator % p != 0


def multiplicative_order(a: int, n: int) -> int:
    if gcd(a, n) != 1:
        raise ValueError(f"{a} is not a unit mod {n}")
    k, x = 1, a % n
    while x != 1 % n:
        x = x * a % n
        k += 1
    return k


@dataclass(frozen=True)
class LocalContext:
    """A prime together with its odd generator ``k`` of (Z/p^2)^*.

    ``q`` is ``(k - 1) // 2``.
    """

    p: int
    k: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.k % 2 == 0 or self.k < 1:
            raise ValueError("k_p must be a positive odd integer")
        if gcd(self.k, self.p) != 1:
            raise ValueError(f"k_p={self.k} is not coprime to p={self.p}")
        if multiplicative_order(self.k, self.p**2) != self.p * (self.p - 1):
            raise ValueError(f"k_p={self.k} does not generate (Z/{self.p**2})^*")

    @property
    def q(self) -> int:
        return (self.k - 1) // 2


@lru_cache(maxsize=None)
def find_kp(p: int) -> LocalContext:
    """Smallest odd k >= 3 generating (Z/p^2)^*; k_2 = 3 by convention."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p == 2:
        return LocalContext(2, 3)  # 3 generates (Z/4)^*
    target = p * (p - 1)
    k = 3
    while True:
        if k % p and multiplicative_order(k, p * p) == target:
            return LocalContext(p, k)
        k += 2


def lemma31_valuation(ctx: LocalContext, n: int) -> int:
    """Closed form for nu_p(k_p^(2n) - 1)."""
    if n < 1:
        raise ValueError("n must be positive")
    p = ctx.p
    if p == 2:
        if ctx.k != 3:
            raise ValueError("the p = 2 closed form assumes k_2 = 3")
        return 3 + _nu_int(2, n)
    if (2 * n) % (p - 1):
        return 0
    return 1 + _nu_int(p, n)


@lru_cache(maxsize=None)
def _nu_factorial_partial(p: int, n: int) -> int:
    # sum_{i=1}^{n} nu_p(i)
    total, pk = 0, p
    while pk <= n:
        total += n // pk
        pk *= p
    return total


def lemma32_valuation(ctx: LocalContext, s: int, r: int) -> int:
    """Closed form for nu_p of prod_{i=s}^{r} (k_p^(2i) - 1)."""
    if not 1 <= s <= r:
        raise ValueError("need 1 <= s <= r")
    p = ctx.p
    if p == 2:
        if ctx.k != 3:
            raise ValueError("the p = 2 closed form assumes k_2 = 3")
        return 3 * (r - s + 1) + _nu_factorial_partial(2, r) - _nu_factorial_partial(2, s - 1)
    if p > 2 * r + 1:
        return 0
    hi = 2 * r // (p - 1)
    lo = 2 * (s - 1) // (p - 1)
    return hi + _nu_factorial_partial(p, hi) - lo - _nu_factorial_partial(p, lo)


__all__ = [
    "INFINITY",
    "LocalContext",
    "find_kp",
    "is_p_local",
    "is_prime",
    "lemma31_valuation",
    "lemma32_valuation",
    "multiplicative_order",
    "nu",
    "primes_upto",
    "rat",
    "rat_to_str",
]
