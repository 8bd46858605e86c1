import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from mf_reduction.divisibility import GcdMonoid
from mf_reduction.presets import load_presentation
from mf_reduction.reduction import Reducer


def _reducer(source):
    return Reducer(GcdMonoid(load_presentation(source)))


@pytest.fixture(scope="session")
def braid3():
    return _reducer("braid:3")


@pytest.fixture(scope="session")
def affine_a2():
    return _reducer("affine-A2")


@pytest.fixture(scope="session")
def raag_abc():
    return _reducer("raag-abc")


@pytest.fixture(scope="session")
def free2():
    return _reducer("free:2")


@pytest.fixture(scope="session")
def free3():
    return _reducer("free:3")
