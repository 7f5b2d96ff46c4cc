import random
from fractions import Fraction

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from spectral_torsion.scalar_ring import A0, B0, I, ZERO, GaussRat, ParamScalar

settings.register_profile("repo", derandomize=True, deadline=None, max_examples=200)
settings.load_profile("repo")

small = st.integers(-9, 9)
nonzero = small.filter(bool)
fractions = st.builds(Fraction, small, nonzero)
gauss = st.builds(GaussRat, fractions, fractions)


@st.composite
def polys(draw, max_terms=3, max_deg=3):
    acc = ZERO
    for _ in range(draw(st.integers(1, max_terms))):
        c = draw(gauss)
        acc = acc + ParamScalar(c) * A0 ** draw(st.integers(0, max_deg)) * B0 ** draw(st.integers(0, max_deg))
    return acc


@st.composite
def scalars(draw):
    n = draw(polys())
    d = draw(polys().filter(bool))
    return n / d


@pytest.fixture
def rng():
    return random.Random(0x5EED)


# one line per acceptance criterion, collected by tests/test_acceptance.py
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
