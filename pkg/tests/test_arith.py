from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from brieskorn.arith import (SymIntMatrix, as_rational, determinant, eval_neg_cont_frac, exact_inverse,
                             format_rational, integer_inverse, is_irreducible, is_negative_definite,
                             leading_minors, matmul, neg_cont_frac, solve, sparse_determinant)
from brieskorn.errors import SingularMatrixError, ValidationError
from brieskorn.plumbing import PlumbingGraph, intersection_matrix

from conftest import E8_LEGS


def identity(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


@pytest.mark.parametrize("x, cs", [(7, [7]), (2, [2]), (Fraction(5, 2), [3, 2]), (Fraction(7, 2), [4, 2])])
def test_neg_cont_frac_examples(x, cs):
    assert neg_cont_frac(x) == cs
    assert eval_neg_cont_frac(cs) == x


@pytest.mark.parametrize("x", [1, Fraction(1, 2), 0, -3])
def test_neg_cont_frac_domain(x):
    with pytest.raises(ValidationError):
        neg_cont_frac(x)


@given(st.lists(st.integers(2, 9), min_size=1, max_size=8))
def test_neg_cont_frac_round_trip(cs):
    assert neg_cont_frac(eval_neg_cont_frac(cs)) == cs


def test_rational_parsing():
    assert as_rational("3/6") == Fraction(1, 2)
    assert format_rational(Fraction(-4, 6)) == "-2/3"
    assert format_rational(Fraction(5)) == "5"
    for bad in ("1/0", "x", True, 1.5):
        with pytest.raises(ValidationError):
            as_rational(bad)


def test_matrix_validation():
    with pytest.raises(ValidationError):
        SymIntMatrix([[1, 2], [3, 4]])
    with pytest.raises(ValidationError):
        SymIntMatrix([[1, 2]])
    with pytest.raises(ValidationError):
        SymIntMatrix([[Fraction(1, 2)]])
    q = SymIntMatrix.from_sparse(2, {(0, 0): -2, (0, 1): 1, (1, 1): -2})
    assert q == SymIntMatrix([[-2, 1], [1, -2]])


def test_inverse_examples():
    assert exact_inverse([[-1]]) == ((Fraction(-1),),)
    third = Fraction(1, 3)
    assert exact_inverse([[-2, 1], [1, -2]]) == ((-2 * third, -third), (-third, -2 * third))
    with pytest.raises(SingularMatrixError):
        exact_inverse([[1, 1], [1, 1]])


def test_e8_inverse_negative():
    q = intersection_matrix(PlumbingGraph(-2, E8_LEGS))
    inv = exact_inverse(q)
    assert all(x < 0 for row in inv for x in row)
    assert matmul(q.rows, inv) == identity(8)
    n_mat, den = integer_inverse(q)
    assert den == 1 and all(x < 0 for row in n_mat for x in row)


def test_zero_pivot_fallback():
    # the first min-degree pivot is a zero diagonal entry
    q = SymIntMatrix([[0, 1, 0], [1, 0, 1], [0, 1, -1]])
    inv = exact_inverse(q)
    assert matmul(q.rows, inv) == identity(3)
    assert sparse_determinant(q) == determinant(q)
    assert solve(q, [1, 2, 3]) == [sum(inv[i][j] * b for j, b in enumerate([1, 2, 3])) for i in range(3)]


@pytest.mark.parametrize("rows, expected", [([[-1]], True), ([[-2, 1], [1, -2]], True), ([[0]], False),
                                            ([[-1, 1], [1, -1]], False), ([[2]], False),
                                            ([[-1, 2], [2, -1]], False)])
def test_negative_definite_examples(rows, expected):
    assert is_negative_definite(rows) is expected


def test_irreducible_examples():
    assert is_irreducible([[-2, 1], [1, -2]])
    assert not is_irreducible([[-2, 0], [0, -2]])
    assert is_irreducible([[5]])


def symmetric_matrices(max_n=5, lo=-6, hi=6):
    def build(args):
        n, vals = args
        rows = [[0] * n for _ in range(n)]
        it = iter(vals)
        for i in range(n):
            for j in range(i, n):
                rows[i][j] = rows[j][i] = next(it)
        return SymIntMatrix(rows)
    return st.integers(1, max_n).flatmap(
        lambda n: st.tuples(st.just(n), st.lists(st.integers(lo, hi), min_size=n * (n + 1) // 2,
                                                 max_size=n * (n + 1) // 2))).map(build)


@settings(max_examples=300)
@given(symmetric_matrices())
def test_definiteness_matches_leading_minors(q):
    minors = leading_minors(q)
    alternating = all((-1) ** (k + 1) * m > 0 for k, m in enumerate(minors))
    assert is_negative_definite(q) == alternating
    if is_negative_definite(q):
        assert determinant(q) * (-1) ** q.n > 0


@settings(max_examples=300)
@given(symmetric_matrices())
def test_determinant_routes_agree(q):
    assert sparse_determinant(q) == determinant(q)


@settings(max_examples=200)
@given(symmetric_matrices(max_n=4))
def test_inverse_involution(q):
    if determinant(q) == 0:
        with pytest.raises(SingularMatrixError):
            exact_inverse(q)
        return
    inv = exact_inverse(q)
    assert matmul(q.rows, inv) == identity(q.n)
    back = exact_inverse_rational(inv)
    assert back == [[Fraction(x) for x in row] for row in q.rows]


def exact_inverse_rational(a):
    # plain Gauss-Jordan on rationals, independent of the library
    n = len(a)
    m = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for k in range(n):
        p = next(i for i in range(k, n) if m[i][k] != 0)
        m[k], m[p] = m[p], m[k]
        m[k] = [x / m[k][k] for x in m[k]]
        for i in range(n):
            if i != k and m[i][k]:
                f = m[i][k]
                m[i] = [x - f * y for x, y in zip(m[i], m[k])]
    return [row[n:] for row in m]
