"""
Defines the abstract interface for Belavin-Drinfeld cohomology classifiers.

A classifier owns one kind of cocycle (non-twisted or twisted). It decides
membership, reduces a cocycle to its labeled canonical representative, and
decides equivalence by comparing labels, returning the witnesses Q and C of
X1 = Q X2 C when they can be built constructively.
"""

from abc import ABC, abstractmethod

from src.core.bd_triples import AdmissibleTriple
from src.core.lie_algebra import AlgebraRep
from src.core.matrices import Matrix
from src.services.business.cocycles import (
    CocycleKind,
    CohomologySet,
    EquivalenceResult,
    Reduction,
)


class ICohomologyClassifier(ABC):
    """
    An abstract base class for a service classifying cocycles of one kind.
    """

    kind: CocycleKind

    @abstractmethod
    def is_cocycle(
        self, algebra: AlgebraRep, triple: AdmissibleTriple, X: Matrix
    ) -> bool:
        """
        Checks the cocycle condition over the Galois group of X's tower.

        Args:
            algebra (AlgebraRep): The matrix realization of the algebra.
            triple (AdmissibleTriple): The triple fixing r and C(r).
            X (Matrix): A group element over a finite tower.

        Returns:
            bool: True when X is a cocycle of this classifier's kind.

        Raises:
            NotInGroup: If X is not in the group.
        """
        pass

    @abstractmethod
    def classify(self, algebra: AlgebraRep, triple: AdmissibleTriple) -> CohomologySet:
        """
        Computes the cohomology set with one verified representative per class.

        Args:
            algebra (AlgebraRep): The matrix realization of the algebra.
            triple (AdmissibleTriple): An admissible triple.

        Returns:
            CohomologySet: The classes in canonical order.
        """
        pass

    @abstractmethod
    def reduce(
        self, algebra: AlgebraRep, triple: AdmissibleTriple, X: Matrix
    ) -> Reduction:
        """
        Reduces a cocycle to its class label and canonical representative.

        Args:
            algebra (AlgebraRep): The matrix realization of the algebra.
            triple (AdmissibleTriple): The triple fixing r.
            X (Matrix): A cocycle of this kind.

        Returns:
            Reduction: The label, the representative, and Q, C with
                X = Q Rep C when constructive.

        Raises:
            NotACocycle: If X fails the cocycle condition.
        """
        pass

    @abstractmethod
    def equivalent(
        self, algebra: AlgebraRep, triple: AdmissibleTriple, X1: Matrix, X2: Matrix
    ) -> EquivalenceResult:
        """
        Decides X1 ~ X2 by comparing reductions.

        Args:
            algebra (AlgebraRep): The matrix realization of the algebra.
            triple (AdmissibleTriple): The triple fixing r.
            X1 (Matrix): A cocycle of this kind.
            X2 (Matrix): A cocycle of this kind.

        Returns:
            EquivalenceResult: The decision, with witnesses Q and C such that
                X1 = Q X2 C when equivalent and constructive.
        """
        pass
