# File: tests/core/test_lie_algebra.py

import random
from fractions import Fraction

import pytest

from src.core import matrices as mx
from src.core.field_tower import FieldElement
from src.core.lie_algebra import (
    TorusElement,
    adjoint_on_tensor,
    bracket,
    build_algebra,
    cartan_casimir,
    casimir,
    character_value,
    group_inverse,
    group_membership,
    invariant_form,
    root_character,
    simple_root_vector,
    torus_from_matrix,
)
from src.core.root_system import Series, algebra_dimension
from src.core.tensors import element_add
from src.exceptions import IndexOutOfRange, NotInAlgebra, NotInTorus, SizeMismatch

HBAR = FieldElement.hbar()


@pytest.fixture(scope="module")
def b2():
    return build_algebra(Series.B, 2)


@pytest.fixture(scope="module")
def c3():
    return build_algebra(Series.C, 3)


@pytest.mark.parametrize(
    "series, n", [(Series.B, 2), (Series.C, 3), (Series.D, 3), (Series.D, 4)]
)
def test_basis_closure_reaches_the_full_dimension(series, n):
    algebra = build_algebra(series, n)
    assert algebra.dimension == algebra_dimension(series, n)
    assert len(set(algebra.labels)) == algebra.dimension
    assert len(algebra.cartan_indices) == n


def test_basis_layout(b2):
    p = len(b2.positive_roots)
    assert p == 4
    assert sum(b2.basis[0].root) == 1
    assert b2.basis[p].root == tuple(-c for c in b2.basis[0].root)
    assert b2.cartan_indices == (8, 9)
    assert b2.basis[8].is_cartan
    assert b2.negative_index(0) == p


def test_build_algebra_is_cached(b2):
    assert build_algebra(Series.B, 2) is b2


def test_bracket_is_antisymmetric(b2):
    for a in range(b2.dimension):
        for b in range(b2.dimension):
            assert element_add(bracket(b2, {a: 1}, {b: 1}), bracket(b2, {b: 1}, {a: 1})) == {}


def test_jacobi_identity_on_random_triples(c3):
    rng = random.Random(0)
    for _ in range(50):
        a, b, c = (rng.randrange(c3.dimension) for _ in range(3))
        x, y, z = {a: 1}, {b: 1}, {c: 1}
        total = element_add(
            element_add(
                bracket(c3, x, bracket(c3, y, z)), bracket(c3, y, bracket(c3, z, x))
            ),
            bracket(c3, z, bracket(c3, x, y)),
        )
        assert total == {}


def test_cartan_acts_on_root_vectors_by_the_root(b2):
    for k, element in enumerate(b2.basis[: len(b2.positive_roots)]):
        for i, h in enumerate(b2.cartan_indices, start=1):
            expected = b2.root_value_on_cartan(element.root, i)
            result = bracket(b2, {h: 1}, {k: 1})
            assert result == ({k: expected} if expected else {})


def test_invariant_form_is_ad_invariant(b2):
    for x in range(b2.dimension):
        for y in range(b2.dimension):
            for z in range(b2.dimension):
                left = invariant_form(b2, bracket(b2, {x: 1}, {y: 1}), {z: 1})
                right = invariant_form(b2, {y: 1}, bracket(b2, {x: 1}, {z: 1}))
                assert left + right == 0


def test_root_vectors_are_normalized(b2):
    p = len(b2.positive_roots)
    for k in range(p):
        assert invariant_form(b2, {k: 1}, {k + p: 1}) == 1


def test_casimir_is_symmetric_with_half_cartan_part(b2):
    omega = casimir(b2)
    assert omega.transpose() == omega
    assert dict(cartan_casimir(b2).items()) == {
        (h, h): Fraction(1, 2) for h in b2.cartan_indices
    }


def test_casimir_is_ad_invariant(b2):
    X = TorusElement((2, Fraction(1, 3))).matrix(Series.B)
    assert adjoint_on_tensor(b2, X, casimir(b2)) == casimir(b2)


def test_matrix_round_trip(b2):
    element = {0: 1, 5: Fraction(2, 3), 9: -1}
    assert b2.element_of(b2.matrix_of(element)) == element
    assert mx.equal(simple_root_vector(b2, 1), b2.matrix_of(b2.root_vector((1, 0))))
    with pytest.raises(IndexOutOfRange):
        simple_root_vector(b2, 3)


def test_element_of_rejects_matrices_outside_the_algebra(b2):
    with pytest.raises(NotInAlgebra):
        b2.element_of(mx.identity(5))
    with pytest.raises(SizeMismatch):
        b2.element_of(mx.identity(4))


@pytest.mark.parametrize("series, n", [(Series.B, 2), (Series.C, 2), (Series.D, 3)])
def test_torus_elements_are_in_the_group(series, n):
    algebra = build_algebra(series, n)
    params = (HBAR, 2, 3)[:n]
    X = TorusElement(params).matrix(series)
    assert group_membership(algebra, X)
    assert mx.equal(mx.mul(X, group_inverse(algebra, X)), mx.identity(algebra.size))
    assert torus_from_matrix(algebra, X).parameters == params


def test_group_membership_rejects_non_isometries(b2):
    assert not group_membership(b2, mx.diag([2, 1, 1, 1, 1]))
    with pytest.raises(SizeMismatch):
        group_membership(b2, mx.identity(3))


def test_torus_from_matrix_checks_shape(b2):
    with pytest.raises(NotInTorus):
        torus_from_matrix(b2, mx.diag([2, 1, 1, 1, 1]))
    with pytest.raises(NotInTorus):
        torus_from_matrix(b2, mx.elementary(5, 1, 2))


def test_characters():
    t = TorusElement((6, 2))
    assert character_value(build_algebra(Series.B, 2), 1, t) == 3
    assert character_value(build_algebra(Series.B, 2), 2, t) == 2
    assert character_value(build_algebra(Series.C, 2), 2, t) == 4
    assert root_character(build_algebra(Series.B, 2), (1, 2), t) == 12
    t3 = TorusElement((1, 2, 5))
    assert character_value(build_algebra(Series.D, 3), 3, t3) == 10
