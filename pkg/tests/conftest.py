from __future__ import annotations

import pytest

from mixmult.monomial_ideal import MonomialIdeal
from mixmult.ring import CoefficientField, Polynomial

ACCEPTANCE_LINES: list[str] = []


def record_criterion(number: int, ok: bool, detail: str) -> None:
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} ({detail})"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)


def mono(*gens):
    """MonomialIdeal from exponent tuples."""
    return MonomialIdeal([tuple(g) for g in gens], len(gens[0]))


def poly(terms: dict, n: int, fld=None) -> Polynomial:
    return Polynomial(terms, n, fld or CoefficientField.prime())


@pytest.fixture
def fp():
    return CoefficientField.prime()


@pytest.fixture
def qq():
    return CoefficientField.rationals()
