import random
from fractions import Fraction as F

import pytest

from brieskorn.arith import SymIntMatrix, determinant, is_negative_definite
from brieskorn.classify import brieskorn_invariants, brieskorn_tuples
from brieskorn.errors import UnsupportedPresentation, ValidationError
from brieskorn.plumbing import PlumbingGraph, intersection_matrix, standard_graph
from brieskorn.seifert import brieskorn_to_seifert
from brieskorn.surgery import (Knot, SurgeryPresentation, blow_down_once, canonical_vector, complete_blow_down, d3,
                               d3_canonical, d3_table, enumerate_rotation_vectors, fillable_count)


def pres(a):
    return brieskorn_invariants(a).presentation


def test_blow_down_once_examples():
    assert blow_down_once(SymIntMatrix([[-1]]), 0).n == 0
    assert blow_down_once(SymIntMatrix([[-1, 1], [1, -2]]), 0).rows == ((-1,),)
    with pytest.raises(ValidationError):
        blow_down_once(SymIntMatrix([[-2]]), 0)


def test_blow_down_sequence_237():
    q = intersection_matrix(standard_graph(brieskorn_to_seifert((2, 3, 7))))
    q = blow_down_once(q, 0)      # center
    q = blow_down_once(q, 0)      # the -2 leg, now -1
    q = blow_down_once(q, 0)      # the -3 leg, now -1
    assert q.rows == ((-1,),)


def test_presentations():
    p = pres((2, 3, 7))
    assert p.m == 1 and p.q.rows == ((-1,),)
    (c,) = p.components
    assert c.knot == Knot("Torus", 2, 3) and (c.framing, c.tb_max, c.budget) == (-1, 1, 1)

    p = pres((3, 4, 5))
    assert p.q.rows == ((-2, 1, 1, 0), (1, -3, 1, 0), (1, 1, -2, 1), (0, 0, 1, -2))
    assert p.budgets == (0, 1, 0, 0)
    assert all(c.knot.kind == "Unknot" for c in p.components)

    p = pres((2, 5, 7))
    assert p.q.rows == ((-3, 2, 0), (2, -2, 1), (0, 1, -2))
    assert p.budgets == (1, 0, 0)

    p = pres((2, 3, 13))
    assert p.q.rows == ((-1, 1), (1, -2))
    assert [str(c.knot) for c in p.components] == ["T(2,3)", "Unknot"]


@pytest.mark.parametrize("a, count", [((2, 3, 5), 1), ((3, 4, 5), 2), ((2, 3, 7), 2), ((2, 3, 13), 2),
                                      ((2, 3, 19), 2), ((2, 5, 7), 2)])
def test_fillable_count(a, count):
    p = pres(a)
    assert fillable_count(p) == count == len(enumerate_rotation_vectors(p))


def test_rotation_vectors():
    assert enumerate_rotation_vectors(pres((2, 3, 5))) == [(0,) * 8]
    assert enumerate_rotation_vectors(pres((2, 3, 7))) == [(-1,), (1,)]
    assert enumerate_rotation_vectors(pres((3, 4, 5))) == [(0, -1, 0, 0), (0, 1, 0, 0)]


@pytest.mark.parametrize("a, v, value", [((2, 3, 7), (1,), 0), ((2, 3, 7), (-1,), 0),
                                         ((2, 5, 7), (1, 0, 0), 0), ((2, 5, 7), (-1, 0, 0), 0),
                                         ((2, 3, 5), (0,) * 8, 2)])
def test_d3_examples(a, v, value):
    assert d3(pres(a), v) == value


@pytest.mark.parametrize("a, value", [((3, 4, 5), 0), ((2, 3, 5), 2), ((2, 3, 13), 0)])
def test_d3_canonical(a, value):
    assert d3_canonical(pres(a)) == value


def test_d3_rejects_bad_vectors():
    p = pres((3, 4, 5))
    for v in [(0, 0, 0, 0), (0, 3, 0, 0), (0, 1, 0), (2, 1, 0, 0)]:
        with pytest.raises(ValidationError):
            d3(p, v)


def test_json_round_trip():
    for a in [(2, 3, 7), (3, 4, 5), (2, 3, 13), (2, 3, 5)]:
        p = pres(a)
        assert SurgeryPresentation.from_json(p.to_json()) == p


def test_negative_budget_is_unsupported():
    # an indefinite candidate: the surviving T(3,5) gets framing 7 > tb_max - 1
    g = PlumbingGraph(-1, ((-8,), (-3,), (-2, -3)))
    with pytest.raises(UnsupportedPresentation):
        complete_blow_down(g)
    p = complete_blow_down(g, strict=False)
    assert min(p.budgets) < 0


def test_structure_over_range():
    for a in brieskorn_tuples(30):
        inv = brieskorn_invariants(a)
        p = inv.presentation
        if p.m == 0:
            continue
        assert is_negative_definite(p.q)
        assert abs(determinant(p.q)) == 1
        for c, f in zip(p.components, p.q.diagonal()):
            assert c.framing == f and c.budget == c.tb_max - 1 - f >= 0
        rng = random.Random(hash(a))
        assert complete_blow_down(inv.graph, inv.twisting, rng=rng) == p


def test_d3_properties_small_rank():
    seen = 0
    for a in brieskorn_tuples(40):
        p = pres(a)
        if not 0 < p.m <= 6:
            continue
        seen += 1
        vectors, values = d3_table(p)
        table = dict(zip(vectors, values))
        w = canonical_vector(p)
        low = d3_canonical(p)
        assert table[w] == low
        for v, x in table.items():
            assert table[tuple(-t for t in v)] == x
            assert all((vi - qi) % 2 == 0 for vi, qi in zip(v, p.q.diagonal()))
            assert x >= low
            assert (x == low) == (v in (w, tuple(-t for t in w)))
    assert seen > 100


def test_d3_table_matches_exact():
    p = pres((2, 3, 25))
    vectors, values = d3_table(p)
    assert values == [d3(p, v) for v in vectors]
