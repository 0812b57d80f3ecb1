import numpy as np
import pytest

from tanglie import catalog_algebra

CATALOG = ("abelian2", "abelian3", "aff1", "heisenberg", "solvable_rr2", "su2")

SWEEP_SEED = 20260810


@pytest.fixture
def rng():
    return np.random.default_rng(SWEEP_SEED)


@pytest.fixture
def heisenberg():
    return catalog_algebra("heisenberg")


@pytest.fixture
def solvable():
    return catalog_algebra("solvable_rr2")


@pytest.fixture
def su2():
    return catalog_algebra("su2")


@pytest.fixture
def aff1():
    return catalog_algebra("aff1")


@pytest.fixture(params=CATALOG)
def catalog_problem(request):
    return catalog_algebra(request.param)
