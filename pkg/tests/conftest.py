import os
import sys

import numpy as np
import pytest
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

import fuzzcorr as fc  # noqa: E402

_ACCEPTANCE: list[tuple[str, bool, str]] = []


@pytest.fixture
def record():
    """Collects one pass/fail line per acceptance criterion for the summary."""
    def _record(label: str, passed: bool, detail: str = ""):
        _ACCEPTANCE.append((label, bool(passed), detail))
        return passed
    return _record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label, passed, detail in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {label}  {detail}")


finite = st.floats(min_value=-10, max_value=10, allow_nan=False, allow_infinity=False)
spread = st.floats(min_value=0, max_value=5, allow_nan=False, allow_infinity=False)
shapes = st.one_of(
    st.just(fc.ShapeFunction.linear()),
    st.floats(min_value=0.25, max_value=4).map(fc.ShapeFunction.power),
)


@st.composite
def lr_numbers(draw, min_spread=0.0):
    qm = draw(finite)
    width = draw(st.floats(min_value=0, max_value=5))
    a = draw(st.floats(min_value=min_spread, max_value=5))
    b = draw(st.floats(min_value=min_spread, max_value=5))
    return fc.LRNumber(qm, qm + width, a, b, draw(shapes), draw(shapes))


def random_lr(rng: np.random.Generator, positive_support: bool = False) -> fc.LRNumber:
    """LR number with linear or power shapes; optionally supported in [0.5, inf)."""
    def shape():
        return fc.ShapeFunction.linear() if rng.random() < 0.5 else fc.ShapeFunction.power(rng.uniform(0.3, 3))
    a, b = rng.uniform(0, 3, size=2)
    width = rng.uniform(0, 2)
    qm = rng.uniform(0.5 + a, 6) if positive_support else rng.uniform(-5, 5)
    A = fc.LRNumber(qm, qm + width, a, b, shape(), shape())
    if positive_support and rng.random() < 0.5:
        A = fc.propagate_lr_linear(A, -1.0, 0.0)
    return A
