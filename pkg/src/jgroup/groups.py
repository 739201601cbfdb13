"""Group structure of JO~(CP^m)_(p) via Smith normal form.

Localised at p, the J-group is the cokernel of the matrix of ``1 - psi^k_p``
acting on Z_(p)^t. Over the integers the cokernel is computed by Smith normal
form and localisation keeps the p-part of each invariant factor.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm, prod
from typing import Iterable, Sequence

from .adams import band_start, c_coeff, one_minus_psi_matrix
from .jorder import ElementSpec
from .valuation import find_kp, is_p_local, nu, primes_upto

Matrix = list[list[int]]


def _identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list[list]:
    return [
        [sum(a * B[k][j] for k, a in enumerate(row)) for j in range(len(B[0]))]
        for row in A
    ]


def determinant(A: Sequence[Sequence]) -> Fraction:
    """Exact determinant by fraction-valued Gaussian elimination."""
    M = [[Fraction(x) for x in row] for row in A]
    n = len(M)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det *= M[c][c]
        for r in range(c + 1, n):
            f = M[r][c] / M[c][c]
            if f:
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return det


@dataclass(frozen=True)
class SNFResult:
    """``U @ A @ V == diag(diagonal)`` with U, V unimodular."""

    diagonal: tuple[int, ...]
    U: tuple[tuple[int, ...], ...]
    V: tuple[tuple[int, ...], ...]


def smith_normal_form(A: Sequence[Sequence[int]]) -> SNFResult:
    """Smith normal form over Z with transform tracking.

    Pivots are the smallest nonzero absolute value in the remaining block,
    ties broken by lowest row and then lowest column.
    """
    D = [[int(x) for x in row] for row in A]
    nrows = len(D)
    ncols = len(D[0]) if nrows else 0
    U = _identity(nrows)
    V = _identity(ncols)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (D, V):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):
        D[dst] = [a + f * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + f * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, f):
        for M in (D, V):
            for row in M:
                row[dst] += f * row[src]

    for s in range(min(nrows, ncols)):
        while True:
            best = None
            for i in range(s, nrows):
                for j in range(s, ncols):
                    a = abs(D[i][j])
                    if a and (best is None or a < best[0]):
                        best = (a, i, j)
            if best is None:
                break
            _, i, j = best
            if i != s:
                swap_rows(s, i)
            if j != s:
                swap_cols(s, j)
            piv = D[s][s]
            clean = True
            for i in range(s + 1, nrows):
                if D[i][s]:
                    add_row(i, s, -(D[i][s] // piv))
                    clean = clean and not D[i][s]
            for j in range(s + 1, ncols):
                if D[s][j]:
                    add_col(j, s, -(D[s][j] // piv))
                    clean = clean and not D[s][j]
            if not clean:
                continue
            bad = next(
                (i for i in range(s + 1, nrows)
                 for j in range(s + 1, ncols) if D[i][j] % piv),
                None,
            )
            if bad is None:
                break
            add_row(s, bad, 1)
        if D[s][s] < 0:
            D[s] = [-a for a in D[s]]
            U[s] = [-a for a in U[s]]

    diag = tuple(D[i][i] for i in range(min(nrows, ncols)))
    return SNFResult(diag, tuple(map(tuple, U)), tuple(map(tuple, V)))


def p_part(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("zero has no finite p-part")
    return p ** nu(p, n)


def _factor(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


class FinAbGroup:
    """A finite abelian group, stored by invariant factors d_1 | d_2 | ...

    Any list of cyclic orders is accepted and normalised.
    """

    __slots__ = ("invariant_factors",)

    def __init__(self, cyclic_orders: Iterable[int] = ()):
        by_prime: dict[int, list[int]] = {}
        for d in cyclic_orders:
            d = abs(int(d))
            if d == 0:
                raise ValueError("infinite cyclic summands are not allowed")
            for p, e in _factor(d).items():
                by_prime.setdefault(p, []).append(p**e)
        for powers in by_prime.values():
            powers.sort(reverse=True)
        length = max((len(v) for v in by_prime.values()), default=0)
        factors = [
            prod(v[i] for v in by_prime.values() if i < len(v)) for i in range(length)
        ]
        object.__setattr__(self, "invariant_factors", tuple(reversed(factors)))

    def __setattr__(self, name, value):
        raise AttributeError("FinAbGroup is immutable")

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)

    def primary_decomposition(self) -> list[int]:
        """Prime-power cyclic orders, sorted by prime then exponent."""
        out = []
        for d in self.invariant_factors:
            out.extend(p**e for p, e in _factor(d).items())
        return sorted(out, key=lambda q: (min(_factor(q)), q))

    def p_part(self, p: int) -> "FinAbGroup":
        return FinAbGroup(p_part(d, p) for d in self.invariant_factors)

    def __eq__(self, other):
        if isinstance(other, FinAbGroup):
            return self.invariant_factors == other.invariant_factors
        return NotImplemented

    def __hash__(self):
        return hash(self.invariant_factors)

    def __repr__(self):
        return f"FinAbGroup({list(self.invariant_factors)})"

    def render(self, sep: str = " ⊕ ") -> str:
        parts = self.primary_decomposition()
        return sep.join(f"Z/{q}" for q in parts) if parts else "0"

    def __str__(self):
        return self.render()

    def to_list(self) -> list[str]:
        return [str(d) for d in self.invariant_factors]


def integer_matrix(p: int, mat: Sequence[Sequence[Fraction]]) -> tuple[Matrix, list[int]]:
    """Clear denominators row by row, allowing only p-unit scalings.

    Returns the integer matrix and the per-row scale factors.
    """
    out, scales = [], []
    for row in mat:
        d = lcm(*(Fraction(x).denominator for x in row))
        if d % p == 0:
            raise ArithmeticError(
                f"row denominator {d} is divisible by p={p}; refusing to rescale"
            )
        out.append([int(Fraction(x) * d) for x in row])
        scales.append(d)
    return out, scales


def local_presentation(p: int, t: int) -> tuple[Matrix, list[int], SNFResult]:
    ctx = find_kp(p)
    A, scales = integer_matrix(p, one_minus_psi_matrix(ctx, t))
    return A, scales, smith_normal_form(A)


def _require_even(m: int):
    if m < 2 or m % 2:
        raise ValueError(f"m must be even and >= 2, got {m}")


def jo_local_group(p: int, m: int) -> FinAbGroup:
    """JO~(CP^m)_(p) as Z_(p)^t modulo the image of 1 - psi^k_p."""
    _require_even(m)
    _, _, snf = local_presentation(p, m // 2)
    return FinAbGroup(q for q in (p_part(d, p) for d in snf.diagonal) if q > 1)


def jo_group(m: int) -> FinAbGroup:
    _require_even(m)
    factors = []
    for p in primes_upto(m + 1):
        factors.extend(jo_local_group(p, m).invariant_factors)
    return FinAbGroup(factors)


def element_order_oracle(p: int, spec: ElementSpec) -> int:
    """Exponent v with p^v the order of the class of P in the local J-group.

    Read off from Smith normal form coordinates, independently of the
    M- and L-recursions.
    """
    _, scales, snf = local_presentation(p, spec.t)
    x = [s * m for s, m in zip(scales, spec.m_vec)]
    Ux = [sum(u * xi for u, xi in zip(row, x)) for row in snf.U]
    best = 0
    for d, c in zip(snf.diagonal, Ux):
        if c:
            best = max(best, nu(p, d) - nu(p, c))
    return best


def solve_preimage(p: int, spec: ElementSpec) -> list[Fraction]:
    """The unique u = sum a_r y^r over Q with (1 - psi^k_p)(u) = P."""
    k = find_kp(p).k
    a: list[Fraction] = []
    for r in range(1, spec.t + 1):
        rhs = Fraction(spec.m_vec[r - 1])
        for i in range(band_start(k, r), r):
            rhs += c_coeff(k, r - i, i) * a[i - 1]
        a.append(rhs / (1 - k ** (2 * r)))
    return a


def to_membership(p: int, spec: ElementSpec) -> bool:
    """True iff P lies in (1 - psi^k_p) applied to KO~(CP^m)_(p)."""
    return all(is_p_local(p, a) for a in solve_preimage(p, spec))
