import random
from fractions import Fraction as F

import pytest

from brieskorn.arith import SymIntMatrix
from brieskorn.classify import brieskorn_invariants, brieskorn_tuples
from brieskorn.errors import ValidationError
from brieskorn.mlemma import (BoxProblem, box_min, expected_argmins, grid_min, lemma_check, random_box_problem,
                              validate_m_matrix)


def test_validate_examples():
    rep = validate_m_matrix(SymIntMatrix([[-2, 1], [1, -2]]))
    assert rep.valid and rep.inverse_negative
    rep = validate_m_matrix(SymIntMatrix([[-2, 0], [0, -2]]))
    assert not rep.valid and "reducible" in rep.violations
    rep = validate_m_matrix(SymIntMatrix([[-2, -1], [-1, -2]]))
    assert "negative off-diagonal entry" in rep.violations


def test_blown_down_forms_are_m_matrices():
    for a in brieskorn_tuples(40):
        p = brieskorn_invariants(a).presentation
        if p.m:
            assert validate_m_matrix(p.q).valid, a


def test_box_problem_validation():
    with pytest.raises(ValidationError):
        BoxProblem(SymIntMatrix([[-2, 0], [0, -2]]), (1, 1))
    with pytest.raises(ValidationError):
        BoxProblem(SymIntMatrix([[-1]]), (-1,))
    with pytest.raises(ValidationError):
        BoxProblem(SymIntMatrix([[-1]]), (1, 1))


def test_box_min_examples():
    assert box_min(BoxProblem(SymIntMatrix([[-1]]), (1,))) == (-1, [(-1,), (1,)])
    value, argmins = box_min(BoxProblem(SymIntMatrix([[-2, 1], [1, -2]]), (1, 1)))
    assert value == -2 and argmins == [(-1, -1), (1, 1)]


def test_lemma_check_seeded():
    res = lemma_check(500, seed=1, max_rank=6)
    assert res.summary() == "500/500 minima at ±W" and not res.failures
    assert lemma_check(50, seed=7) == lemma_check(50, seed=7)


def test_grid_never_below_corners():
    rng = random.Random(3)
    for _ in range(40):
        p = random_box_problem(rng, max_rank=3)
        assert grid_min(p) >= box_min(p)[0]
        assert grid_min(p) == box_min(p)[0]


def test_scaling():
    rng = random.Random(5)
    for _ in range(40):
        p = random_box_problem(rng, max_rank=5)
        c = F(rng.randint(1, 5), rng.randint(1, 5))
        scaled = BoxProblem(p.q, tuple(c * x for x in p.w))
        v, arg = box_min(p)
        v2, arg2 = box_min(scaled)
        assert v2 == c * c * v
        assert arg2 == sorted(tuple(c * x for x in a) for a in arg)


def test_degenerate_zero_widths():
    rng = random.Random(11)
    seen = 0
    for _ in range(200):
        p = random_box_problem(rng, max_rank=5, positive=False)
        _, argmins = box_min(p)
        assert argmins == expected_argmins(p.w)
        if 0 in p.w:
            seen += 1
            if all(x == 0 for x in p.w):
                assert argmins == [p.w]
    assert seen > 20


def test_rank_limit():
    q = SymIntMatrix([[-3 if i == j else int(abs(i - j) == 1) for j in range(25)] for i in range(25)])
    with pytest.raises(ValidationError):
        box_min(BoxProblem(q, (1,) * 25))
