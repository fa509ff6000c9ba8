import sys

import pytest
from hypothesis import HealthCheck, settings

from collapse_goodstein import BIG_OMEGA, enumerate_terms, is_ot0

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))

settings.register_profile(
    "default", max_examples=200, deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large])
settings.load_profile("default")

# criterion number -> (title, [(part, ok, detail), ...]); filled by test_acceptance.
ACCEPTANCE = {}


@pytest.fixture(scope="session")
def terms6():
    return enumerate_terms(6)


@pytest.fixture(scope="session")
def ot0_6(terms6):
    return [t for t in terms6 if is_ot0(t)]


@pytest.fixture(scope="session")
def ot0_5():
    return [t for t in enumerate_terms(5) if is_ot0(t)]


@pytest.fixture(scope="session")
def countable_ot0_5(ot0_5):
    return [t for t in ot0_5 if t < BIG_OMEGA]


def acceptance_lines():
    lines = []
    for num in sorted(ACCEPTANCE):
        title, parts = ACCEPTANCE[num]
        ok = all(p[1] for p in parts)
        failed = "; ".join(f"{part}: {detail}" for part, good, detail in parts if not good)
        done = sum(p[1] for p in parts)
        tail = f" ({done}/{len(parts)} parts) {failed}" if failed else f" ({done}/{len(parts)} parts)"
        lines.append(f"{'PASS' if ok else 'FAIL'} C{num} {title}{tail}")
    return lines


def pytest_terminal_summary(terminalreporter):
    lines = acceptance_lines()
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
