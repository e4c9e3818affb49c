# File: tests/services/business/test_field_policy.py

import pytest

from src.core.field_tower import ONE, SQRT_HBAR, FieldElement, sqrt_witness
from src.exceptions import NotInBaseField, ZeroElement
from src.services.business.field_policy import (
    LaurentSeriesPolicy,
    RationalFunctionPolicy,
    policy_by_name,
)

HBAR = FieldElement.hbar()
TWO = FieldElement.from_int(2)
SQRT_2, _ = sqrt_witness(TWO)


class TestLaurentSeriesPolicy:
    policy = LaurentSeriesPolicy()

    def test_squareness_follows_valuation_parity(self):
        assert self.policy.is_square(TWO)
        assert self.policy.is_square(TWO * HBAR * HBAR)
        assert not self.policy.is_square(HBAR)
        assert not self.policy.is_square(TWO * HBAR.inverse())

    def test_square_classes(self):
        assert self.policy.square_class(TWO) == "one"
        assert self.policy.square_class(3 * HBAR**3) == "hbar"
        assert self.policy.same_class(HBAR, 4 * HBAR**3)
        assert not self.policy.same_class(ONE, HBAR)

    def test_representatives(self):
        assert self.policy.representative(5 * HBAR**3) == HBAR
        assert self.policy.representative(HBAR**2) == ONE
        assert self.policy.class_representatives() == [ONE, HBAR]
        assert self.policy.is_finite()


class TestRationalFunctionPolicy:
    policy = RationalFunctionPolicy()

    def test_constants_are_squares(self):
        assert self.policy.is_square(TWO)
        assert self.policy.is_square(FieldElement.from_int(9))
        assert self.policy.is_square(FieldElement.from_int(4) * HBAR**2)
        assert self.policy.is_square(TWO * SQRT_2)
        assert not self.policy.is_square(HBAR)

    def test_class_is_the_square_free_part(self):
        assert self.policy.representative(HBAR**3) == HBAR
        assert self.policy.representative(2 * HBAR) == HBAR
        assert self.policy.representative(3 * HBAR.inverse()) == HBAR
        assert self.policy.square_class(TWO) == "one"
        assert self.policy.same_class(TWO, ONE)
        assert self.policy.same_class(2 * HBAR, 5 * HBAR**3)

    def test_non_monomial_classes_are_new_classes(self):
        one_plus_h = ONE + HBAR
        assert not self.policy.is_square(one_plus_h)
        assert self.policy.representative(4 * one_plus_h**3) == one_plus_h
        assert self.policy.is_square(one_plus_h**2 / HBAR**4)
        assert not self.policy.same_class(one_plus_h, HBAR)
        assert self.policy.square_class(one_plus_h) not in ("one", "{h}")

    def test_class_set_is_an_infinite_sample(self):
        assert self.policy.class_representatives() == [ONE, HBAR]
        assert [self.policy.square_class(k) for k in [ONE, HBAR]] == ["one", "{h}"]
        assert not self.policy.is_finite()

    def test_rejects_zero_and_tower_elements(self):
        with pytest.raises(ZeroElement):
            self.policy.is_square(FieldElement.from_int(0))
        with pytest.raises(NotInBaseField):
            self.policy.square_class(SQRT_HBAR)



def test_policy_by_name():
    assert isinstance(policy_by_name("laurent"), LaurentSeriesPolicy)
    assert isinstance(policy_by_name("Rational"), RationalFunctionPolicy)
    with pytest.raises(ValueError):
        policy_by_name("padic")
