"""Shared oracles.  Nothing here imports the code under test's shortcuts:
the semigroup is enumerated by nested loops and tau by plain prefix sums."""
from math import gcd

import pytest

ACCEPTANCE_LINES: list[str] = []


def naive_semigroup(p, q, r):
    x, y, z = p * q, p * r, q * r
    n0 = p * q * r - x - y - z
    out = set()
    for i in range(n0 // x + 1 if n0 >= 0 else 0):
        for j in range((n0 - i * x) // y + 1):
            for k in range((n0 - i * x - j * y) // z + 1):
                out.add(i * x + j * y + k * z)
    return n0, sorted(out)


def naive_tau(p, q, r):
    """tau(0..N0+1) from the definition."""
    n0, s = naive_semigroup(p, q, r)
    members = set(s)
    reflected = {n0 - v for v in s}
    tau = [0]
    for i in range(n0 + 1):
        tau.append(tau[-1] + (i in members) - (i in reflected))
    return tau


def coprime_triples(bound):
    for p in range(2, bound):
        for q in range(p + 1, bound // p + 1):
            for r in range(q + 1, bound // (p * q) + 1):
                if gcd(p, q) == gcd(p, r) == gcd(q, r) == 1:
                    yield p, q, r


@pytest.fixture
def report_line():
    """Print one acceptance line live and keep it for the terminal summary."""
    import sys

    def _report(line):
        ACCEPTANCE_LINES.append(line)
        sys.__stdout__.write("\n" + line + "\n")
        sys.__stdout__.flush()
    return _report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
