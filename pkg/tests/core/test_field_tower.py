# File: tests/core/test_field_tower.py

from fractions import Fraction

import pytest

from src.core.field_tower import (
    HBAR_SYMBOL,
    IMAG_UNIT,
    ONE,
    ROOT4_H,
    ROOT4_HBAR,
    SQRT_H,
    SQRT_HBAR,
    ZERO,
    FieldElement,
    GaloisElement,
    SquareClass,
    Tower,
    apply_automorphism,
    base_sqrt,
    constant_root,
    extend_automorphism,
    format_element,
    galois_group,
    galois_group_over_sqrt_h,
    is_square_semantic,
    parse_element,
    sigma0_on,
    sqrt_witness,
    square_class,
    tower_of,
    valuation,
)
from src.exceptions import (
    AutomorphismTowerMismatch,
    DivisionByZero,
    FieldParseError,
    NoConsistentExtension,
    NotConstructivelyRepresentable,
    NotInBaseField,
    ZeroElement,
)

HBAR = FieldElement.hbar()


# --- Arithmetic ---


def test_generator_squares_reduce_into_lower_tower():
    assert SQRT_HBAR * SQRT_HBAR == HBAR
    assert ROOT4_HBAR * ROOT4_HBAR == SQRT_HBAR
    assert IMAG_UNIT * IMAG_UNIT == -1


def test_inverse_in_tower():
    a = 1 + SQRT_HBAR
    assert a * a.inverse() == ONE
    b = 3 * ROOT4_HBAR + HBAR
    assert b / b == 1


def test_division_by_zero_raises():
    with pytest.raises(DivisionByZero):
        ONE / ZERO


def test_powers_and_negative_powers():
    assert SQRT_HBAR**4 == HBAR * HBAR
    assert HBAR**-1 * HBAR == 1


def test_hbar_power_uses_root_generators():
    assert FieldElement.hbar_power(Fraction(1, 2)) == SQRT_HBAR
    assert FieldElement.hbar_power(Fraction(3, 4)) == SQRT_HBAR * ROOT4_HBAR
    assert FieldElement.hbar_power(Fraction(-1)) * HBAR == 1
    with pytest.raises(NotConstructivelyRepresentable):
        FieldElement.hbar_power(Fraction(1, 8))


def test_equality_with_python_numbers_and_hash():
    assert FieldElement.from_int(2) == 2
    assert FieldElement.from_fraction(Fraction(1, 2)) == Fraction(1, 2)
    assert hash(FieldElement.from_int(2)) == hash(2)


def test_coerce_rejects_booleans():
    with pytest.raises(TypeError):
        FieldElement.coerce(True)


# --- Valuation and square classes ---


def test_valuation_counts_fractional_orders():
    assert valuation(HBAR * HBAR) == 2
    assert valuation(SQRT_HBAR) == Fraction(1, 2)
    assert valuation(1 + HBAR) == 0
    with pytest.raises(ZeroElement):
        valuation(ZERO)


@pytest.mark.parametrize(
    "value, expected",
    [
        (ONE, SquareClass.ONE),
        (HBAR, SquareClass.HBAR),
        (HBAR**3, SquareClass.HBAR),
        (FieldElement.from_int(-7) * HBAR**2, SquareClass.ONE),
        (1 + HBAR, SquareClass.ONE),
    ],
)
def test_square_class_follows_valuation_parity(value, expected):
    assert square_class(value) is expected


def test_square_class_rejects_tower_elements():
    with pytest.raises(NotInBaseField):
        is_square_semantic(SQRT_HBAR)


# --- Square roots ---


def test_base_sqrt_of_square_polynomial():
    value = (1 + HBAR) * (1 + HBAR)
    root = base_sqrt(value.base_value())
    assert root * root == value


def test_base_sqrt_adjoins_constant_roots():
    root = base_sqrt(FieldElement.from_int(3).base_value())
    assert root * root == 3
    assert constant_root(3) in root.generators()


def test_base_sqrt_of_negative_uses_imaginary_unit():
    root = base_sqrt((-HBAR).base_value())
    assert root * root == -HBAR


def test_base_sqrt_rejects_non_square_units():
    with pytest.raises(NotConstructivelyRepresentable):
        base_sqrt((1 + HBAR).base_value())


def test_sqrt_witness_over_sqrt_h():
    root, tower = sqrt_witness(2 * SQRT_HBAR)
    assert root * root == 2 * SQRT_HBAR
    assert ROOT4_H in tower.generators
    assert SQRT_H in tower.generators


def test_sqrt_witness_rejects_mixed_radicands():
    with pytest.raises(NotConstructivelyRepresentable):
        sqrt_witness(1 + SQRT_HBAR)


# --- Towers and Galois action ---


def test_tower_of_closes_under_squares():
    assert tower_of([ROOT4_HBAR]).generators == (SQRT_H, ROOT4_H)
    assert tower_of([1, Fraction(1, 2)]).generators == ()


def test_galois_group_sizes():
    assert len(galois_group(Tower(()))) == 1
    assert len(galois_group(tower_of([SQRT_HBAR]))) == 2
    assert len(galois_group(tower_of([ROOT4_HBAR]))) == 4
    assert galois_group(tower_of([ROOT4_HBAR]))[0].is_identity()


def test_galois_group_over_sqrt_h_fixes_sqrt_h():
    group = galois_group_over_sqrt_h(tower_of([ROOT4_HBAR]))
    assert len(group) == 2
    for sigma in group:
        assert apply_automorphism(sigma, SQRT_HBAR) == SQRT_HBAR


def test_sigma0_negates_sqrt_h():
    sigma = sigma0_on(tower_of([ROOT4_HBAR]))
    assert apply_automorphism(sigma, SQRT_HBAR) == -SQRT_HBAR
    image = apply_automorphism(sigma, ROOT4_HBAR)
    assert image * image == -SQRT_HBAR


def test_automorphism_is_multiplicative():
    tower = tower_of([ROOT4_HBAR])
    a, b = 1 + ROOT4_HBAR, 2 * SQRT_HBAR + HBAR
    for sigma in galois_group(tower):
        assert apply_automorphism(sigma, a * b) == apply_automorphism(
            sigma, a
        ) * apply_automorphism(sigma, b)


def test_apply_automorphism_outside_tower_raises():
    with pytest.raises(AutomorphismTowerMismatch):
        apply_automorphism(GaloisElement(()), ROOT4_HBAR)


def test_extension_must_respect_squares():
    bad = GaloisElement.from_mapping({SQRT_H: 0, ROOT4_H: 1})
    with pytest.raises(NoConsistentExtension):
        extend_automorphism(bad, tower_of([ROOT4_HBAR]))


def test_describe():
    assert GaloisElement(()).describe() == "id"
    assert GaloisElement.from_mapping({SQRT_H: 2}).describe() == "sqrt_h->-sqrt_h"


# --- Text form ---


@pytest.mark.parametrize(
    "value",
    [
        ZERO,
        FieldElement.from_fraction(Fraction(-3, 4)),
        HBAR + IMAG_UNIT,
        (1 + HBAR) * SQRT_HBAR + 5 * ROOT4_HBAR,
        FieldElement.generator(constant_root(2)) / HBAR,
    ],
)
def test_format_parse_round_trip(value):
    assert parse_element(format_element(value)) == value


def test_parse_bare_rational_function():
    assert parse_element("h**2/(1 + h)") * (1 + HBAR) == HBAR * HBAR
    assert format_element(ZERO) == "0"


@pytest.mark.parametrize("text", ["", "{1}*sqrt_6", "__import__('os')", "{1} junk"])
def test_parse_rejects_bad_text(text):
    with pytest.raises(FieldParseError):
        parse_element(text)


def test_to_sympy_agrees_on_squares():
    value = (2 * SQRT_HBAR).to_sympy()
    assert (value**2 - 4 * HBAR_SYMBOL).simplify() == 0
