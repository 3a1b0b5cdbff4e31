from __future__ import annotations

import sys
from pathlib import Path

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from hamlab.digraph import Digraph, from_rows
from hamlab.generators import rows_from_index

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile(
    "suite", max_examples=60, suppress_health_check=[HealthCheck.too_slow], deadline=None
)
settings.load_profile("suite")


@st.composite
def digraphs(draw, min_n: int = 1, max_n: int = 6) -> Digraph:
    """Arbitrary labeled digraph with order in [min_n, max_n]."""
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    index = draw(st.integers(min_value=0, max_value=(1 << (n * (n - 1))) - 1))
    return from_rows(n, rows_from_index(n, index))


@st.composite
def dense_digraphs(draw, min_n: int = 3, max_n: int = 6) -> Digraph:
    """Digraphs biased toward many arcs, where cycles and witnesses abound."""
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    bits = n * (n - 1)
    full = (1 << bits) - 1
    knockout = draw(st.integers(min_value=0, max_value=full))
    sparse = draw(st.integers(min_value=0, max_value=full))
    return from_rows(n, rows_from_index(n, full & ~(knockout & sparse)))
