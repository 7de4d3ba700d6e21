import pytest

from brieskorn.classify import brieskorn_invariants
from brieskorn.plumbing import PlumbingGraph

E8_LEGS = ((-2,), (-2, -2), (-2, -2, -2, -2))

# (a, e0, tw, d, count, d3_can)
GOLDEN = {
    (2, 3, 5): (-2, -1, 2, 1, 2),
    (3, 4, 5): (-1, -2, 0, 2, 0),
    (2, 5, 7): (-1, -3, 0, 2, 0),
    (2, 3, 7): (-1, -5, 0, 2, 0),
    (2, 3, 13): (-1, -5, 0, 2, 0),
}


@pytest.fixture
def e8_graph():
    return PlumbingGraph(-2, E8_LEGS)


@pytest.fixture(params=sorted(GOLDEN))
def golden(request):
    return request.param, brieskorn_invariants(request.param)
