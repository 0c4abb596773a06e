from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import strategies as st

from ospexp.expmod import ExpModule
from ospexp.poly import Poly, parse_poly
from ospexp.scalars import Scalar
from ospexp.weyl import WeylOp

BATTERY_G = [
    "x",
    "2*x",
    "-x",
    "1/2*x",
    "x^2",
    "x + x^2",
    "x^3",
    "x + 2*x^3",
    "x^4 + x^2",
]
SIGNS = (1, -1)


def battery() -> list[ExpModule]:
    return [ExpModule(s, parse_poly(g)) for g in BATTERY_G for s in SIGNS]


@pytest.fixture(scope="session")
def modules() -> list[ExpModule]:
    return battery()


small_fractions = st.fractions(min_value=-5, max_value=5, max_denominator=6)
scalars = st.builds(Scalar, small_fractions, small_fractions)
rational_scalars = st.builds(Scalar, small_fractions)


def polys(var: str, max_degree: int = 4, elements=scalars):
    return st.lists(elements, max_size=max_degree + 1).map(lambda cs: Poly(var, cs))


def weyl_ops(max_terms: int = 3, max_power: int = 3):
    key = st.tuples(st.integers(0, max_power), st.integers(0, max_power))
    return st.dictionaries(key, rational_scalars, max_size=max_terms).map(WeylOp)


def exponents(max_degree: int = 3):
    """Nonconstant polynomials in x with zero constant term."""
    return st.lists(rational_scalars, min_size=1, max_size=max_degree).filter(
        lambda cs: not cs[-1].is_zero()
    ).map(lambda cs: Poly("x", [Fraction(0)] + cs))


_ACCEPTANCE_LINES: list[str] = []


def record_acceptance(line: str) -> None:
    _ACCEPTANCE_LINES.append(line)


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
