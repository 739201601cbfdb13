import random

import pytest

from jgroup.jorder import ElementSpec

_ACCEPTANCE: list[tuple[str, bool, str]] = []


def sweep_specs(m, n_random=50, seed=None, bound=100):
    """All monomials y^n plus seeded random coefficient vectors."""
    t = m // 2
    rng = random.Random(1000 + m if seed is None else seed)
    specs = [ElementSpec.monomial(m, n) for n in range(1, t + 1)]
    specs += [
        ElementSpec(m, tuple(rng.randint(-bound, bound) for _ in range(t)))
        for _ in range(n_random)
    ]
    return specs


@pytest.fixture
def record_criterion():
    def record(name, ok, detail=""):
        _ACCEPTANCE.append((name, bool(ok), detail))
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in _ACCEPTANCE:
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"{status}  {name}" + (f"  ({detail})" if detail else ""))
