import random

import pytest
from hypothesis import strategies as st

from regionlm.index import build_index
from regionlm.regions import RegionSet

SIX_WORDS = "<root><doc>db ir db</doc><doc>db xx yy</doc></root>"


@pytest.fixture
def six():
    return build_index(SIX_WORDS)


@pytest.fixture
def rng():
    return random.Random(1234)


def rs(*rows):
    return RegionSet(rows)


scores = st.one_of(
    st.just(1.0),
    st.sampled_from([0.5, 0.25, 0.2, 0.1, 2.0]),
    st.floats(min_value=1e-3, max_value=3.0, allow_nan=False, allow_infinity=False),
)


@st.composite
def region_sets(draw, max_regions=50, max_position=100):
    rows = {}
    for _ in range(draw(st.integers(0, max_regions))):
        start = draw(st.integers(1, max_position - 1))
        end = draw(st.integers(start + 1, min(max_position, start + draw(st.sampled_from([1, 3, 100])))))
        rows.setdefault((start, end), draw(scores))
    return RegionSet((s, e, v) for (s, e), v in rows.items())
