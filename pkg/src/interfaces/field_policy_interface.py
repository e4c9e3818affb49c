"""
Defines the abstract interface for field policies.

A field policy decides how square classes of the base field are handled when
cohomology sets are indexed by K*/(K*)^2. The Laurent-series model of C((h))
has exactly two classes, while the rational-function field C(h) has
infinitely many, one per monic square-free polynomial, and can only be sampled. Classifiers receive a policy through
their constructor so either model can be swapped in.
"""

from abc import ABC, abstractmethod
from typing import List

from src.core.field_tower import FieldElement


class IFieldPolicy(ABC):
    """
    An abstract base class for square-class arithmetic in the base field.
    """

    name: str

    @abstractmethod
    def is_square(self, value: FieldElement) -> bool:
        """
        Decides whether a nonzero base-field element is a square.

        Args:
            value (FieldElement): A nonzero element of K.

        Returns:
            bool: True when value lies in (K*)^2 under this policy.
        """
        pass

    @abstractmethod
    def square_class(self, value: FieldElement) -> str:
        """
        Returns the label of the square class of value.

        Args:
            value (FieldElement): A nonzero element of K.

        Returns:
            str: A stable label, e.g. 'one' or 'hbar'.
        """
        pass

    @abstractmethod
    def same_class(self, a: FieldElement, b: FieldElement) -> bool:
        """
        Decides whether a/b is a square.

        Args:
            a (FieldElement): A nonzero element of K.
            b (FieldElement): A nonzero element of K.

        Returns:
            bool: True when a and b have the same square class.
        """
        pass

    @abstractmethod
    def representative(self, value: FieldElement) -> FieldElement:
        """
        Returns the canonical representative of the square class of value.

        Args:
            value (FieldElement): A nonzero element of K.

        Returns:
            FieldElement: k with value/k a square.
        """
        pass

    @abstractmethod
    def class_representatives(self) -> List[FieldElement]:
        """
        Lists representatives of the square classes, the trivial class first.

        For infinite class sets this is a fixed sample.

        Returns:
            List[FieldElement]: Pairwise inequivalent representatives.
        """
        pass

    @abstractmethod
    def is_finite(self) -> bool:
        """
        Returns:
            bool: True when class_representatives lists every class.
        """
        pass
