# File: tests/services/business/test_classifiers.py

import pytest

from src.core import matrices as mx
from src.core.bd_triples import make_triple
from src.core.field_tower import SQRT_HBAR, FieldElement
from src.core.lie_algebra import build_algebra
from src.core.root_system import Series
from src.exceptions import NotACocycle
from src.services.business.cocycles import CocycleKind, unipotent
from src.services.business.classifiers import classifier_for, cocycles_equivalent
from src.services.business.field_policy import RationalFunctionPolicy
from src.services.business.nontwisted import NontwistedClassifier
from src.services.business.twisted import TwistedClassifier

HBAR = FieldElement.hbar()


def test_classifier_for_each_kind():
    assert isinstance(classifier_for("twisted"), TwistedClassifier)
    assert isinstance(classifier_for(CocycleKind.NONTWISTED), NontwistedClassifier)
    policy = RationalFunctionPolicy()
    assert classifier_for("nontwisted", policy).policy is policy


def test_classifier_for_rejects_unknown_kinds():
    with pytest.raises(ValueError):
        classifier_for("untwisted")


def test_cocycles_equivalent_compares_square_classes():
    d4 = build_algebra(Series.D, 4)
    triple = make_triple(Series.D, 4, {3: 4})
    rep = NontwistedClassifier().representative(d4, triple, HBAR)
    same = cocycles_equivalent(d4, triple, rep, rep, "nontwisted")
    assert same.equivalent and same.label1 == "hbar"
    different = cocycles_equivalent(d4, triple, mx.identity(8), rep, "nontwisted")
    assert not different.equivalent
    assert (different.label1, different.label2) == ("one", "hbar")


def test_cocycles_equivalent_rejects_non_cocycles():
    d4 = build_algebra(Series.D, 4)
    triple = make_triple(Series.D, 4, {3: 4})
    bad = unipotent(d4, 2, SQRT_HBAR)
    with pytest.raises(NotACocycle):
        cocycles_equivalent(d4, triple, mx.identity(8), bad, CocycleKind.NONTWISTED)
