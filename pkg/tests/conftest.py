import random

import pytest
from hypothesis import settings, strategies as st

from semigrid.digits import LaurentDigits
from semigrid.grids import SHIPPED_GRIDS, grid_by_name

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def digit_vectors(bound, lo=-6, hi=6, max_size=8):
    return st.dictionaries(st.integers(lo, hi), st.integers(-bound, bound), max_size=max_size).map(LaurentDigits)


@pytest.fixture(params=SHIPPED_GRIDS)
def grid(request):
    return grid_by_name(request.param)


@pytest.fixture
def rng():
    return random.Random(1234)
