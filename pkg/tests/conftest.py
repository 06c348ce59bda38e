import numpy as np
import pytest
from hypothesis import settings

from xsampler.frames import cosine_frame, trapezoid_pair
from xsampler.signal_model import ModelParams, generate_multipulse
from xsampler.transform import lattice_extent

settings.register_profile("default", deadline=None, max_examples=40)
settings.load_profile("default")

W = 0.13
TABLE_MODEL = ModelParams(3, W, 8.0, 20.0)
TABLE_SHAPES = ("bspline2", "bspline4", "cosine")


def table_signal(seed):
    return generate_multipulse(TABLE_MODEL, TABLE_SHAPES, seed)


@pytest.fixture(scope="session")
def cos_frame():
    return cosine_frame(W)


@pytest.fixture(scope="session")
def cos_extent(cos_frame):
    return lattice_extent(8.0, 20.0, W, cos_frame.mu, cos_frame.B, L0_override=4)


@pytest.fixture(scope="session")
def trap_frame():
    return trapezoid_pair(W)


@pytest.fixture(scope="session")
def signal():
    return table_signal(7)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
