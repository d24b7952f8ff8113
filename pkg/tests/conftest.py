import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from corpus import corpus_samples, fixture_model  # noqa: E402


@pytest.fixture(scope="session")
def model():
    return fixture_model()


@pytest.fixture(scope="session")
def samples(model):
    return corpus_samples(model)
