import pytest

from tvcalc import build_skeleton, enumerate_census


@pytest.fixture(scope="session")
def census1():
    return list(enumerate_census(1))


@pytest.fixture(scope="session")
def census2():
    return list(enumerate_census(2))


@pytest.fixture(scope="session")
def one_vertex_corpus(census1, census2):
    return [tri for tri in census1 + census2
            if build_skeleton(tri).v == 1]


@pytest.fixture(scope="session")
def z2hs1():
    return list(enumerate_census(1, one_vertex=True, z2_homology_sphere=True))


@pytest.fixture(scope="session")
def z2hs2():
    return list(enumerate_census(2, one_vertex=True, z2_homology_sphere=True))
