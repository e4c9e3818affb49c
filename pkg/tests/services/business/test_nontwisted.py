# File: tests/services/business/test_nontwisted.py

from itertools import combinations

import pytest

from src.core import matrices as mx
from src.core.bd_triples import (
    drinfeld_jimbo,
    enumerate_admissible,
    joins_last_pair,
    make_triple,
)
from src.core.field_tower import SQRT_HBAR, FieldElement
from src.core.lie_algebra import TorusElement, build_algebra, character_value
from src.core.root_system import Series
from src.exceptions import NotACocycle, NotInGroup
from src.services.business.cocycles import unipotent
from src.services.business.field_policy import (
    LaurentSeriesPolicy,
    RationalFunctionPolicy,
)
from src.services.business.nontwisted import (
    NontwistedClassifier,
    classify_nontwisted,
    is_nontwisted_cocycle,
    split_representative,
    torus_factor,
)
from src.services.business.probes import ProbeGenerator

HBAR = FieldElement.hbar()


@pytest.fixture(scope="module")
def d4():
    return build_algebra(Series.D, 4)


@pytest.fixture(scope="module")
def split_triple():
    return make_triple(Series.D, 4, {3: 4})


@pytest.fixture
def classifier():
    return NontwistedClassifier()


def test_split_triple_has_two_classes(d4, split_triple):
    result = classify_nontwisted(d4, split_triple)
    assert result.labels() == ["one", "hbar"]
    assert result.finite
    assert result.note == ""


def test_other_d4_rows_are_trivial(d4):
    result = classify_nontwisted(d4, make_triple(Series.D, 4, {1: 3}))
    assert result.labels() == ["trivial"]
    assert mx.equal(result.classes[0].representative.matrix, mx.identity(8))


def test_c3_is_trivial_everywhere():
    c3 = build_algebra(Series.C, 3)
    for triple in enumerate_admissible(Series.C, 3, 5):
        assert classify_nontwisted(c3, triple).count == 1


def test_rational_policy_gives_an_infinite_sample(d4, split_triple):
    result = classify_nontwisted(d4, split_triple, RationalFunctionPolicy())
    assert result.count == 2
    assert result.labels() == ["one", "{h}"]
    assert not result.finite
    assert "rational" in result.note


@pytest.mark.parametrize("policy", [LaurentSeriesPolicy(), RationalFunctionPolicy()])
def test_each_representative_reduces_to_its_own_class(d4, split_triple, policy):
    classifier = NontwistedClassifier(policy)
    classes = classifier.classify(d4, split_triple).classes
    for cls in classes:
        X = cls.representative.matrix
        reduction = classifier.reduce(d4, split_triple, X)
        assert reduction.label == cls.label
        assert reduction.has_witnesses()
        assert mx.equal(
            mx.mul_chain(reduction.Q, reduction.representative, reduction.C), X
        )
    for first, second in combinations(classes, 2):
        result = classifier.equivalent(
            d4,
            split_triple,
            first.representative.matrix,
            second.representative.matrix,
        )
        assert not result.equivalent


def test_constant_multiples_stay_in_their_rational_class(d4, split_triple):
    classifier = NontwistedClassifier(RationalFunctionPolicy())
    X = classifier.representative(d4, split_triple, 2 * HBAR)
    reduction = classifier.reduce(d4, split_triple, X)
    assert reduction.label == "{h}"
    assert reduction.has_witnesses()
    hbar = classifier.representative(d4, split_triple, HBAR)
    result = classifier.equivalent(d4, split_triple, X, hbar)
    assert result.equivalent
    assert mx.equal(mx.mul_chain(result.Q, hbar, result.C), X)
    two = classifier.representative(d4, split_triple, 2)
    assert classifier.reduce(d4, split_triple, two).label == "one"



def test_split_representative_has_the_requested_character_ratio(d4, split_triple):
    t = split_representative(d4, split_triple, HBAR)
    ratio = character_value(d4, 4, t) / character_value(d4, 3, t)
    assert ratio == HBAR
    assert character_value(d4, 1, t) == 1


def test_hbar_representative_is_a_cocycle_outside_the_base(
    d4, split_triple, classifier
):
    X = classifier.representative(d4, split_triple, HBAR)
    assert not mx.is_over_base(X)
    assert classifier.is_cocycle(d4, split_triple, X)
    assert classifier.reduce(d4, split_triple, X).label == "hbar"


def test_cocycle_check_rejects_non_group_matrices(d4, split_triple):
    with pytest.raises(NotInGroup):
        is_nontwisted_cocycle(d4, split_triple, mx.diag([2] + [1] * 7))


def test_unipotent_over_the_tower_is_not_a_cocycle(d4, split_triple, classifier):
    X = unipotent(d4, 0, SQRT_HBAR)
    assert not is_nontwisted_cocycle(d4, split_triple, X)
    with pytest.raises(NotACocycle):
        classifier.reduce(d4, split_triple, X)


def test_torus_factor_reconstructs_the_matrix(d4):
    t = TorusElement((SQRT_HBAR, 2, 1, HBAR))
    X = mx.mul(unipotent(d4, 1, 3), t.matrix(Series.D))
    Q, t_found = torus_factor(d4, X)
    assert mx.is_over_base(Q)
    assert mx.equal(mx.mul(Q, t_found.matrix(Series.D)), X)


def test_drinfeld_jimbo_torus_elements_are_trivial(d4, classifier):
    triple = drinfeld_jimbo(Series.D, 4)
    X = TorusElement((SQRT_HBAR, 1, 2, 1)).matrix(Series.D)
    assert classifier.reduce(d4, triple, X).label == "trivial"


def _assert_reduces_with_witnesses(classifier, algebra, triple, sample):
    reduction = classifier.reduce(algebra, triple, sample.matrix)
    assert reduction.label == sample.label
    assert reduction.has_witnesses()
    assert mx.is_over_base(reduction.Q)
    assert classifier.is_cocycle(algebra, triple, reduction.representative)
    rebuilt = mx.mul_chain(reduction.Q, reduction.representative, reduction.C)
    assert mx.equal(rebuilt, sample.matrix)


@pytest.mark.parametrize("seed", [11, 12, 13, 14])
def test_random_cocycles_reduce_to_their_square_class(
    d4, split_triple, classifier, seed
):
    generator = ProbeGenerator(seed)
    k, m = generator.split_parameter()
    sample = generator.nontwisted_cocycle(d4, split_triple, classifier, k=k)
    assert sample.label == ("hbar" if m % 2 else "one")
    _assert_reduces_with_witnesses(classifier, d4, split_triple, sample)


SPLIT_D4_TRIPLES = [
    pytest.param(t, id=t.describe())
    for t in enumerate_admissible(Series.D, 4, 5)
    if joins_last_pair(t)
]


@pytest.mark.slow
@pytest.mark.parametrize("triple", SPLIT_D4_TRIPLES)
def test_fifty_random_cocycles_per_split_d4_triple(d4, classifier, triple):
    for seed in range(50):
        generator = ProbeGenerator(seed)
        k, m = generator.split_parameter()
        sample = generator.nontwisted_cocycle(d4, triple, classifier, k=k)
        assert sample.label == ("hbar" if m % 2 else "one")
        _assert_reduces_with_witnesses(classifier, d4, triple, sample)


def test_equivalence_separates_square_classes(d4, split_triple, classifier):
    one = classifier.representative(d4, split_triple, 1)
    hbar = classifier.representative(d4, split_triple, HBAR)
    assert not classifier.equivalent(d4, split_triple, one, hbar).equivalent
    generator = ProbeGenerator(3)
    sample = generator.nontwisted_cocycle(d4, split_triple, classifier, k=HBAR**3)
    result = classifier.equivalent(d4, split_triple, sample.matrix, hbar)
    assert result.equivalent
    assert mx.equal(mx.mul_chain(result.Q, hbar, result.C), sample.matrix)


@pytest.mark.slow
@pytest.mark.parametrize("series", [Series.B, Series.C])
def test_rank_four_b_and_c_rows_are_all_trivial(series):
    algebra = build_algebra(series, 4)
    triples = enumerate_admissible(series, 4, 5)
    assert triples
    for triple in triples:
        result = classify_nontwisted(algebra, triple)
        assert result.labels() == ["trivial"]
        identity = mx.identity(algebra.size)
        assert mx.equal(result.classes[0].representative.matrix, identity)


@pytest.mark.slow
def test_d5_split_rows_have_two_classes():
    d5 = build_algebra(Series.D, 5)
    triples = enumerate_admissible(Series.D, 5, 5)
    classifier = NontwistedClassifier()
    assert any(joins_last_pair(t) for t in triples)
    for triple in triples:
        result = classifier.classify(d5, triple)
        joins = any(4 in s and 5 in s for s in triple.strings)
        assert joins == joins_last_pair(triple)
        assert result.count == (2 if joins else 1)
        for cls in result.classes:
            X = cls.representative.matrix
            assert classifier.reduce(d5, triple, X).label == cls.label
