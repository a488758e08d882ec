from fractions import Fraction

import pytest

from bspec.exact import LambdaParam

ACCEPTANCE_LINES: list[str] = []


def brute_zero_solve(t, lam, n_max, k_max):
    """(n, k) with t = (1/4)(b/a)^n (2k+1), smallest n <= n_max, |k| <= k_max."""
    for n in range(n_max + 1):
        odd = Fraction(t) * 4 * Fraction(lam.a, lam.b) ** n
        if odd.denominator == 1 and odd.numerator % 2:
            k = (odd.numerator - 1) // 2
            if abs(k) <= k_max:
                return n, k
    return None


def zero_set_window(lam, n_max, k_max):
    """Explicit enumeration of the zero set restricted to a window."""
    out = {}
    for n in range(n_max, -1, -1):
        scale = Fraction(lam.b**n, 4 * lam.a**n)
        for k in range(-k_max, k_max + 1):
            out[scale * (2 * k + 1)] = (n, k)
    return out


@pytest.fixture
def lam34():
    return LambdaParam(3, 4)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
