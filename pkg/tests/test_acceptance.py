"""Acceptance criteria; each test records one PASS/FAIL line in the summary.

All comparisons are exact integer or rational equalities.
"""
import random
import time
from math import prod

from conftest import sweep_specs
from jgroup.adams import psi_apply, psi_y, theta_apply
from jgroup.cli import main
from jgroup.groups import element_order_oracle, jo_group, to_membership
from jgroup.jorder import (
    ElementSpec,
    generator_valuation_closed,
    jorder_valuation_formula1,
    jorder_valuation_formula2,
    normalized_m_values,
    prop36_valuation,
)
from jgroup.truncpoly import TruncPoly
from jgroup.valuation import find_kp, lemma31_valuation, lemma32_valuation, nu, primes_upto


def test_c1_cp4_group(capsys, record_criterion):
    main(["group", "--m", "4"])
    out = capsys.readouterr().out.strip()
    summands = jo_group(4).primary_decomposition()
    ok = out == "Z/2 + Z/64 + Z/9 + Z/5" and summands == [2, 64, 9, 5]
    record_criterion("1 JO(CP^4) = Z/2 + Z/64 + Z/9 + Z/5", ok, out)
    assert ok


def test_c2_cp4_generator_orders(record_criterion):
    ctx = find_kp(2)
    results = {}
    for name, vec in (("y", (1, 0)), ("y^2", (0, 1))):
        spec = ElementSpec(4, vec)
        results[name] = (
            jorder_valuation_formula1(ctx, spec),
            jorder_valuation_formula2(ctx, spec),
            element_order_oracle(2, spec),
        )
    ok = results == {"y": (6, 6, 6), "y^2": (4, 4, 4)}
    record_criterion("2 nu_2 of y, y^2 on CP^4 = 6, 4 (three engines)", ok, str(results))
    assert ok


def test_c3_cp4_relation(record_criterion):
    ok = to_membership(2, ElementSpec(4, (-40, 2)))
    record_criterion("3 2y^2 - 40y lies in TO(CP^4)_(2)", ok)
    assert ok


def test_c4_formula_agreement_sweep(record_criterion):
    start = time.perf_counter()
    failures, checked = [], 0
    for m in range(2, 13, 2):
        specs = sweep_specs(m, n_random=50)
        assert all(abs(x) <= 100 for s in specs for x in s.m_vec)
        for p in primes_upto(m + 1):
            ctx = find_kp(p)
            for spec in specs:
                a = jorder_valuation_formula1(ctx, spec)
                b = jorder_valuation_formula2(ctx, spec)
                c = element_order_oracle(p, spec)
                checked += 1
                if not a == b == c:
                    failures.append((m, p, spec.m_vec, a, b, c))
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 300
    record_criterion("4 formula I = formula II = SNF oracle, m <= 12", ok,
                     f"{checked} cases, {len(failures)} failures, {elapsed:.1f}s")
    assert not failures, failures[:5]
    assert elapsed < 300


def test_c5_closed_forms(record_criterion):
    bad = []
    for p in (2, 3):
        ctx = find_kp(p)
        for t in range(1, 13):
            for n in range(1, t + 1):
                closed = generator_valuation_closed(p, n, t)
                rec = jorder_valuation_formula1(ctx, ElementSpec.monomial(2 * t, n))
                if closed != rec:
                    bad.append(("T", p, n, t, closed, rec))
        for n in range(1, 13):
            for r, M in enumerate(normalized_m_values(ctx, n, 12), start=n):
                if prop36_valuation(p, n, r) != nu(p, M):
                    bad.append(("P", p, n, r))
    record_criterion("5 closed forms for y^n (p = 2, 3, t <= 12)", not bad,
                     f"{len(bad)} mismatches")
    assert not bad


def test_c6_valuation_lemmas(record_criterion):
    bad = 0
    for p in primes_upto(23):
        ctx = find_kp(p)
        k = ctx.k
        for n in range(1, 501):
            if lemma31_valuation(ctx, n) != nu(p, k ** (2 * n) - 1):
                bad += 1
        factors = [k ** (2 * i) - 1 for i in range(1, 41)]
        for r in range(1, 41):
            for s in range(1, r + 1):
                if lemma32_valuation(ctx, s, r) != nu(p, prod(factors[s - 1:r])):
                    bad += 1
    record_criterion("6 valuation lemmas vs direct big integers (p <= 23)", bad == 0,
                     f"{bad} mismatches")
    assert bad == 0


def test_c7_operator_identities(record_criterion):
    rng = random.Random(7)
    bad = []
    odd = [1, 3, 5, 7]
    for t in range(1, 7):
        for _ in range(5):
            P = TruncPoly.from_reduced([rng.randint(-50, 50) for _ in range(t)], t)
            for k in odd:
                for l in odd:
                    if psi_apply(k, psi_apply(l, P)) != psi_apply(k * l, P):
                        bad.append(("psi", k, l, t))
    for _ in range(40):
        t = rng.randint(1, 6)
        k = rng.choice([3, 5, 7, 9, 11])
        a = TruncPoly.from_reduced([rng.randint(-40, 40) for _ in range(t)], t)
        b = TruncPoly.from_reduced([rng.randint(-40, 40) for _ in range(t)], t)
        if theta_apply(k, a + b) != theta_apply(k, a) * theta_apply(k, b):
            bad.append(("exp", k, t))
    for k in (1, 3, 5, 7, 9, 11):
        for t in range(1, 9):
            y = TruncPoly.y(t)
            # Bott class of the 2-plane bundle r(xi) = 2 + y is k * theta_k(y)
            bundle = theta_apply(k, y) * k
            if bundle * bundle * y != psi_y(k, t):
                bad.append(("char", k, t))
    record_criterion("7 psi composition, theta exponential law, character identity",
                     not bad, f"{len(bad)} failures")
    assert not bad


def test_c8_large_primes_vanish(record_criterion):
    bad = []
    for m in range(2, 13, 2):
        above = [q for q in primes_upto(4 * m + 20) if q > m + 1][:2]
        for p in above:
            ctx = find_kp(p)
            for spec in sweep_specs(m, n_random=50):
                vals = (
                    jorder_valuation_formula1(ctx, spec),
                    jorder_valuation_formula2(ctx, spec),
                    element_order_oracle(p, spec),
                )
                if vals != (0, 0, 0):
                    bad.append((m, p, spec.m_vec, vals))
    record_criterion("8 nu_p = 0 for the two primes above m + 1", not bad,
                     f"{len(bad)} failures")
    assert not bad
