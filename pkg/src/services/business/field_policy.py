"""
Square-class policies for the base field.

`LaurentSeriesPolicy` models C((h)): an element is a square exactly when its
valuation is even, so there are two classes represented by 1 and h.
`RationalFunctionPolicy` models C(h), computed over Q(i)(h): nonzero
constants are squares, so the class of a rational function is its monic
square-free part and the class set is infinite.
"""

import logging
from typing import List

from sympy.polys.fields import FracElement

from src.core.field_tower import (
    BASE_FIELD,
    ONE,
    FieldElement,
    Scalar,
    SquareClass,
    format_element,
    is_square_semantic,
    square_class,
)
from src.exceptions import NotInBaseField, ZeroElement
from src.interfaces.field_policy_interface import IFieldPolicy

logger = logging.getLogger(__name__)

HBAR = FieldElement.hbar()


class LaurentSeriesPolicy(IFieldPolicy):
    """Square classes of C((h)): {1, h}."""

    name = "laurent"

    def is_square(self, value: FieldElement) -> bool:
        return is_square_semantic(FieldElement.coerce(value))

    def square_class(self, value: FieldElement) -> str:
        return square_class(FieldElement.coerce(value)).value

    def same_class(self, a: FieldElement, b: FieldElement) -> bool:
        return self.is_square(FieldElement.coerce(a) / b)

    def representative(self, value: FieldElement) -> FieldElement:
        return ONE if self.is_square(value) else HBAR

    def class_representatives(self) -> List[FieldElement]:
        return [ONE, HBAR]

    def is_finite(self) -> bool:
        return True


class RationalFunctionPolicy(IFieldPolicy):
    """
    Square classes of C(h), computed over Q(i)(h).

    Nonzero constants are squares, so the class of f is the monic square-free
    part of numerator times denominator. The class set is infinite;
    `class_representatives` lists the classes whose square roots lie in a
    finite tower.
    """

    name = "rational"

    def _base_part(self, value: Scalar) -> FracElement:
        """Q(i)(h) part of value; a single constant-root factor is dropped."""
        value = FieldElement.coerce(value)
        if value.is_zero():
            raise ZeroElement("Square classes are defined for nonzero elements only.")
        if value.is_pure_base():
            return value.base_value()
        if value.is_base() and len(value.terms) == 1:
            ((_, coeff),) = value.terms.items()
            return coeff
        raise NotInBaseField(
            f"{format_element(value)} is not a constant times a rational function."
        )

    def square_free_part(self, value: Scalar) -> FieldElement:
        base = self._base_part(value)
        part = BASE_FIELD.one
        for poly in (base.numer, base.denom):
            _, factors = poly.sqf_list()
            for factor, multiplicity in factors:
                if multiplicity % 2:
                    part = part * BASE_FIELD.new(factor, BASE_FIELD.ring.one)
        return FieldElement.from_base(part)

    def is_square(self, value: FieldElement) -> bool:
        return self.square_free_part(value) == ONE

    def square_class(self, value: FieldElement) -> str:
        part = self.square_free_part(value)
        return SquareClass.ONE.value if part == ONE else format_element(part)

    def same_class(self, a: FieldElement, b: FieldElement) -> bool:
        return self.square_free_part(a) == self.square_free_part(b)

    def representative(self, value: FieldElement) -> FieldElement:
        part = self.square_free_part(value)
        logger.debug(f"Square-class representative of {value}: {part}")
        return part

    def class_representatives(self) -> List[FieldElement]:
        return [ONE, HBAR]

    def is_finite(self) -> bool:
        return False


_POLICIES = {
    LaurentSeriesPolicy.name: LaurentSeriesPolicy,
    RationalFunctionPolicy.name: RationalFunctionPolicy,
}


def policy_by_name(name: str) -> IFieldPolicy:
    """
    Raises:
        ValueError: for an unknown policy name.
    """
    try:
        return _POLICIES[name.lower()]()
    except KeyError:
        raise ValueError(
            f"Unknown field policy '{name}'. Choose one of {sorted(_POLICIES)}."
        ) from None
