# File: tests/core/test_exact_linalg.py

from fractions import Fraction

from src.core import exact_linalg as la


def test_nullspace_and_rank():
    rows = [[1, 1, 0], [0, 0, 1]]
    basis = la.nullspace(rows, 3)
    assert len(basis) == 1
    x = basis[0]
    assert x[0] + x[1] == 0 and x[2] == 0
    assert la.rank(rows) == 2
    assert la.rank([]) == 0
    assert len(la.nullspace([], 2)) == 2


def test_solve_returns_particular_and_null_basis():
    solved = la.solve([[1, 1]], [Fraction(2)], 2)
    assert solved is not None
    particular, null_basis = solved
    assert particular[0] + particular[1] == 2
    assert len(null_basis) == 1


def test_solve_detects_inconsistency():
    assert la.solve([[1, 1], [1, 1]], [1, 2], 2) is None


def test_min_norm_projects_out_the_null_space():
    particular, null_basis = la.solve([[1, 1]], [Fraction(2)], 2)
    assert la.min_norm(particular, null_basis) == [Fraction(1), Fraction(1)]
    assert la.min_norm([Fraction(3)], []) == [Fraction(3)]


def test_spans():
    a = [[1, 0, 0], [0, 1, 0]]
    b = [[1, 1, 0], [1, -1, 0]]
    assert la.same_span(a, b)
    assert la.in_span(a, [[2, 3, 0]])
    assert not la.in_span(a, [[0, 0, 1]])
