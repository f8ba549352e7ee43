from __future__ import annotations

import numpy as np
import pytest
from hypothesis import settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from octopara.sampling import make_rng

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

finite = st.floats(-10.0, 10.0, allow_nan=False, allow_infinity=False)
octonions = arrays(np.float64, 8, elements=finite)
seeds = st.integers(0, 2**32 - 1)
dims = st.integers(1, 4)


@pytest.fixture
def rng():
    return make_rng(12345)


def assert_small(value, tol, what=""):
    value = np.abs(np.asarray(value, dtype=float))
    value = float(value.max()) if value.size else 0.0
    assert value <= tol, f"{what} residual {value:.3e} > {tol:.1e}"
