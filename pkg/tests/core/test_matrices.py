# File: tests/core/test_matrices.py

from fractions import Fraction

import pytest

from src.core import matrices as mx
from src.core.field_tower import (
    ROOT4_H,
    SQRT_H,
    SQRT_HBAR,
    FieldElement,
    sigma0_on,
)
from src.exceptions import DivisionByZero, SizeMismatch

HBAR = FieldElement.hbar()


def test_normalize_collapses_rationals():
    assert mx.normalize(FieldElement.from_int(3)) == 3
    assert isinstance(mx.normalize(FieldElement.from_int(3)), int)
    assert mx.normalize(Fraction(4, 2)) == 2
    assert mx.normalize(HBAR) == HBAR


def test_identity_and_elementary():
    assert mx.identity(2) == ((1, 0), (0, 1))
    assert mx.elementary(3, 1, 3, 5)[0][2] == 5
    assert mx.is_diagonal(mx.diag([1, HBAR]))


def test_mul_and_inverse_over_tower():
    a = mx.from_rows([[1, SQRT_HBAR], [0, HBAR]])
    assert mx.equal(mx.mul(a, mx.inverse(a)), mx.identity(2))
    assert mx.determinant(a) == HBAR


def test_mul_size_mismatch():
    with pytest.raises(SizeMismatch):
        mx.mul(((1, 2),), ((1, 2),))


def test_singular_inverse_raises():
    with pytest.raises(DivisionByZero):
        mx.inverse(((1, 2), (2, 4)))
    assert mx.determinant(((1, 2), (2, 4))) == 0


def test_rank_and_left_combination():
    rows = [[1, 0, 1], [0, 1, 1]]
    assert mx.rank(rows) == 2
    assert mx.solve_left_combination(rows, [2, 3, 5]) == [2, 3]
    assert mx.solve_left_combination(rows, [0, 0, 1]) is None


def test_trace_transpose_commutator():
    a = mx.from_rows([[1, 2], [3, 4]])
    b = mx.from_rows([[0, 1], [1, 0]])
    assert mx.trace(a) == 5
    assert mx.transpose(a) == ((1, 3), (2, 4))
    assert mx.trace(mx.commutator(a, b)) == 0
    assert mx.trace_of_product(a, b) == mx.trace(mx.mul(a, b))


def test_apply_galois_and_matrix_tower():
    a = mx.diag([SQRT_HBAR, 1])
    tower = mx.matrix_tower(a)
    assert tower.generators == (SQRT_H,)
    moved = mx.apply_galois(sigma0_on(tower), a)
    assert mx.equal(moved, mx.diag([-SQRT_HBAR, 1]))
    assert not mx.is_over_base(a)
    assert ROOT4_H not in tower.generators


def test_column_echelon_basis_ignores_column_scaling():
    a = mx.from_rows([[1, 2], [3, 4], [5, 7]])
    scaled = mx.mul(a, mx.from_rows([[2, 1], [0, 1]]))
    basis, chosen = mx.column_echelon_basis(a, [0, 1])
    basis_scaled, _ = mx.column_echelon_basis(scaled, [0, 1])
    assert chosen == [0, 1]
    assert mx.equal(basis, basis_scaled)


def test_to_text_uses_canonical_form():
    assert mx.to_text(mx.diag([Fraction(1, 2), HBAR])) == [["{1/2}", "0"], ["0", "{h}"]]
