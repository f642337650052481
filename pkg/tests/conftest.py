import numpy as np
import pytest

from cxsynth import create_app
from cxsynth.labels import LabelState


@pytest.fixture()
def app():
    return create_app(testing=True)


@pytest.fixture()
def client(app):
    return app.test_client()


@pytest.fixture()
def rng():
    return np.random.default_rng(20240611)


def single(n, track_x=False):
    return LabelState.single_body(n, track_x)
