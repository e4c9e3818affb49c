# File: tests/core/test_tensors.py

from fractions import Fraction

from src.core.field_tower import FieldElement
from src.core.tensors import RTensor, Tensor3, element_add, element_scale

HBAR = FieldElement.hbar()


def test_element_helpers_drop_zeros():
    assert element_add({0: 1, 1: 2}, {1: 1}, c=-2) == {0: 1}
    assert element_scale(0, {0: 1}) == {}
    assert element_scale(Fraction(1, 2), {3: 4}) == {3: 2}


def test_product_and_wedge():
    t = RTensor.product({0: 1}, {1: 2, 2: 1})
    assert dict(t.items()) == {(0, 1): 2, (0, 2): 1}
    w = RTensor.wedge({0: 1}, {1: 1})
    assert w.transpose() == w.scale(-1)


def test_arithmetic_cancels_to_zero():
    t = RTensor.build({(0, 1): HBAR, (1, 1): 3})
    assert (t - t).is_zero()
    assert t + t == t.scale(2)
    assert RTensor.build({(0, 0): 0}).is_zero()


def test_restrict_keeps_both_legs():
    t = RTensor.build({(0, 1): 1, (1, 2): 1, (2, 2): 5})
    assert dict(t.restrict([1, 2]).items()) == {(1, 2): 1, (2, 2): 5}


def test_to_entries_uses_labels():
    t = RTensor.build({(1, 0): Fraction(1, 2)})
    assert t.to_entries(["x", "y"]) == [("y", "x", "{1/2}")]


def test_tensor3_entries_are_limited():
    t = Tensor3({(0, 0, k): 1 for k in range(3)})
    assert not t.is_zero()
    assert t.support_size() == 3
    assert t.to_entries(["a", "b", "c"], limit=2) == [
        "a (x) a (x) a: {1}",
        "a (x) a (x) b: {1}",
    ]
