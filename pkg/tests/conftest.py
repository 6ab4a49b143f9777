import numpy as np
import pytest

from nkflag import surfaces


@pytest.fixture()
def rng():
    return np.random.default_rng(20250810)


@pytest.fixture(scope="session")
def summary_cache():
    """Session-wide cache of surface summaries keyed by (id, grid)."""
    cache: dict = {}

    def get(sid: int, n: int):
        key = (sid, n)
        if key not in cache:
            cache[key] = surfaces.surface_summary(sid, n)
        return cache[key]

    return get
