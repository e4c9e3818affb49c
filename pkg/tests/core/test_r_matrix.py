# File: tests/core/test_r_matrix.py

from fractions import Fraction

import pytest

from src.core import exact_linalg as la
from src.core.bd_triples import drinfeld_jimbo, enumerate_admissible, make_triple
from src.core.lie_algebra import (
    TorusElement,
    build_algebra,
    cartan_casimir,
    casimir,
)
from src.core.matrices import diag, elementary
from src.core.r_matrix import (
    build_r,
    centralizer_contains,
    centralizer_matches_triple,
    centralizer_relations,
    cybe_residual,
    eigenspace_normalizers,
    jordan_chevalley,
    phi_endomorphism,
    r0_residuals,
    solve_r0,
    squarefree_spectrum,
    theta,
    torus_in_centralizer,
    torus_weights,
    validate_r0,
)
from src.core.root_system import Series
from src.core.tensors import RTensor
from src.exceptions import InvalidRZero, IrrationalSpectrum, NotInTorus


@pytest.fixture(scope="module")
def d4():
    return build_algebra(Series.D, 4)


def test_dj_r0_is_half_the_cartan_casimir():
    b2 = build_algebra(Series.B, 2)
    solution = solve_r0(b2, drinfeld_jimbo(Series.B, 2))
    assert solution.particular == cartan_casimir(b2).scale(Fraction(1, 2))
    assert len(solution.homogeneous) == 1
    assert solution.skew_coefficients == (Fraction(0),)


def test_r0_satisfies_every_condition(d4):
    for triple in enumerate_admissible(Series.D, 4, 5):
        r0 = solve_r0(d4, triple).particular
        symmetric, roots = r0_residuals(d4, triple, r0)
        assert symmetric.is_zero()
        assert not any(roots)
        validate_r0(d4, triple, r0)


def test_homogeneous_directions_keep_r0_valid(d4):
    triple = make_triple(Series.D, 4, {1: 3})
    solution = solve_r0(d4, triple)
    assert solution.homogeneous
    for direction in solution.homogeneous:
        validate_r0(d4, triple, solution.particular + direction)


def test_validate_r0_rejects_bad_tensors(d4):
    triple = drinfeld_jimbo(Series.D, 4)
    with pytest.raises(InvalidRZero):
        validate_r0(d4, triple, RTensor())
    with pytest.raises(InvalidRZero):
        validate_r0(d4, triple, RTensor.build({(0, 0): 1}))
    with pytest.raises(InvalidRZero):
        build_r(d4, triple, r0=RTensor.build({(0, 12): 1}))


def test_r_plus_r21_is_the_casimir(d4):
    for triple in enumerate_admissible(Series.D, 4, 5)[:8]:
        r = build_r(d4, triple)
        assert r + r.transpose() == casimir(d4)


@pytest.mark.parametrize(
    "series, n, tau",
    [
        (Series.B, 2, {}),
        (Series.C, 3, {1: 2}),
        (Series.D, 4, {3: 4}),
        (Series.D, 4, {3: 2, 2: 4}),
        (Series.D, 3, {2: 1, 1: 3}),
    ],
)
def test_r_and_r21_solve_the_yang_baxter_equation(series, n, tau):
    algebra = build_algebra(series, n)
    r = build_r(algebra, make_triple(series, n, tau))
    assert cybe_residual(algebra, r).is_zero()
    assert cybe_residual(algebra, r.transpose()).is_zero()


def _every_triple(series, n, *marks):
    return [
        pytest.param(
            series, n, triple, id=f"{series.value}{n} {triple.describe()}", marks=marks
        )
        for triple in enumerate_admissible(series, n, 5)
    ]


EVERY_TRIPLE = (
    _every_triple(Series.B, 3)
    + _every_triple(Series.C, 3)
    + _every_triple(Series.D, 4, pytest.mark.slow)
)


@pytest.mark.parametrize("series, n, triple", EVERY_TRIPLE)
def test_every_triple_solves_the_yang_baxter_equation(series, n, triple):
    algebra = build_algebra(series, n)
    r = build_r(algebra, triple)
    assert r + r.transpose() == casimir(algebra)
    assert cybe_residual(algebra, r).is_zero()


def test_torus_weights_of_dj_vanish(d4):
    r = build_r(d4, drinfeld_jimbo(Series.D, 4))
    assert torus_weights(d4, r) == []
    assert centralizer_matches_triple(d4, drinfeld_jimbo(Series.D, 4), r)


def test_torus_weights_follow_the_strings(d4):
    triple = make_triple(Series.D, 4, {3: 4})
    r = build_r(d4, triple)
    assert centralizer_relations(triple) == [(0, 0, -1, 1)]
    assert torus_weights(d4, r) == [(0, 0, -1, 1)]
    assert centralizer_matches_triple(d4, triple, r)
    assert not centralizer_matches_triple(d4, drinfeld_jimbo(Series.D, 4), r)


def test_centralizer_ignores_homogeneous_shifts(d4):
    triple = make_triple(Series.D, 4, {1: 3})
    solution = solve_r0(d4, triple)
    for direction in solution.homogeneous:
        shifted = build_r(d4, triple, solution.particular + direction)
        assert torus_weights(d4, shifted) == torus_weights(d4, build_r(d4, triple))
        assert centralizer_matches_triple(d4, triple, shifted)


def test_casimir_alone_is_not_a_solution():
    b2 = build_algebra(Series.B, 2)
    residual = cybe_residual(b2, casimir(b2))
    assert not residual.is_zero()
    assert len(residual.to_entries(b2.labels, limit=3)) == 3


def test_theta_maps_simple_root_vectors():
    c3 = build_algebra(Series.C, 3)
    triple = make_triple(Series.C, 3, {1: 2})
    assert theta(c3, triple, (1, 0, 0)) == c3.root_vector((0, 1, 0))


def test_phi_of_casimir_is_the_identity(d4):
    rows = phi_endomorphism(d4, casimir(d4))
    assert rows == [
        [Fraction(int(i == j)) for j in range(d4.dimension)]
        for i in range(d4.dimension)
    ]


def test_dj_spectrum_splits_into_borel_parts():
    b2 = build_algebra(Series.B, 2)
    r = build_r(b2, drinfeld_jimbo(Series.B, 2))
    semisimple, nilpotent = jordan_chevalley(phi_endomorphism(b2, r))
    assert not any(v for row in nilpotent for v in row)
    infos = {i.eigenvalue: i for i in eigenspace_normalizers(b2, semisimple)}
    assert infos[Fraction(0)].normalizer == "b+"
    assert infos[Fraction(1)].normalizer == "b-"
    assert infos[Fraction(0)].dimension == infos[Fraction(1)].dimension == 4


def test_jordan_chevalley_parts_commute(d4):
    r = build_r(d4, make_triple(Series.D, 4, {3: 4}))
    rows = phi_endomorphism(d4, r)
    semisimple, nilpotent = jordan_chevalley(rows)
    S, N, A = la.to_domain(semisimple), la.to_domain(nilpotent), la.to_domain(rows)
    assert la.from_domain(S + N) == la.from_domain(A)
    assert la.from_domain(S * N) == la.from_domain(N * S)
    assert any(v for row in nilpotent for v in row)
    power = N
    for _ in range(d4.dimension):
        power = power * N
    assert not any(v for row in la.from_domain(power) for v in row)


def test_squarefree_spectrum():
    _, eigenvalues = squarefree_spectrum([[1, 1], [0, 1]])
    assert eigenvalues == [Fraction(1)]
    _, eigenvalues = squarefree_spectrum([[2, 0], [0, Fraction(1, 2)]])
    assert eigenvalues == [Fraction(1, 2), Fraction(2)]


@pytest.mark.parametrize("rows", [[[0, 1], [2, 0]], [[0, -1], [1, 0]]])
def test_irrational_spectrum_is_surfaced(rows):
    with pytest.raises(IrrationalSpectrum):
        squarefree_spectrum(rows)


def test_torus_centralizer_condition(d4):
    triple = make_triple(Series.D, 4, {3: 4})
    assert torus_in_centralizer(triple, d4, TorusElement((2, 3, 5, 1)))
    assert not torus_in_centralizer(triple, d4, TorusElement((2, 3, 5, 7)))
    assert centralizer_contains(
        d4, triple, TorusElement((2, 3, 5, 1)).matrix(Series.D)
    )
    with pytest.raises(NotInTorus):
        centralizer_contains(d4, triple, elementary(8, 1, 2))
    with pytest.raises(NotInTorus):
        centralizer_contains(d4, triple, diag([2, 1, 1, 1, 1, 1, 1, 1]))
