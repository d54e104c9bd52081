from fractions import Fraction

import pytest

from cwforest.tree import TreeParams

GRID = [TreeParams(1, 1), TreeParams(1, 2), TreeParams(2, 1), TreeParams(2, 3)]


def brute_row(root, n, p):
    """Row n by breadth-first expansion of whole levels."""
    row = [Fraction(root)]
    for _ in range(n):
        nxt = []
        for y in row:
            a, b = y.numerator, y.denominator
            nxt.append(Fraction(a, p.u * a + b))
            nxt.append(Fraction(a + p.v * b, b))
        row = nxt
    return row


@pytest.fixture(params=GRID, ids=lambda p: f"u{p.u}v{p.v}")
def params(request):
    return request.param


ACCEPTANCE_LINES = []


def record(criterion, ok, detail=""):
    ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'}  criterion {criterion:>2}: {detail}")
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
