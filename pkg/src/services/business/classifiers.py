"""Selects the classifier for a cocycle kind and decides equivalence through it."""

from typing import Optional, Union

from src.core.bd_triples import AdmissibleTriple
from src.core.lie_algebra import AlgebraRep
from src.core.matrices import Matrix
from src.interfaces.classifier_interface import ICohomologyClassifier
from src.interfaces.field_policy_interface import IFieldPolicy
from src.services.business.cocycles import CocycleKind, EquivalenceResult
from src.services.business.nontwisted import NontwistedClassifier
from src.services.business.twisted import TwistedClassifier


def classifier_for(
    kind: Union[CocycleKind, str], policy: Optional[IFieldPolicy] = None
) -> ICohomologyClassifier:
    """
    Raises:
        ValueError: for an unknown kind.
    """
    kind = CocycleKind(kind)
    if kind is CocycleKind.TWISTED:
        return TwistedClassifier()
    return NontwistedClassifier(policy)


def cocycles_equivalent(
    algebra: AlgebraRep,
    triple: AdmissibleTriple,
    X1: Matrix,
    X2: Matrix,
    kind: Union[CocycleKind, str],
    policy: Optional[IFieldPolicy] = None,
) -> EquivalenceResult:
    """
    Decides X1 ~ X2 by reducing both to labeled representatives. When they
    are equivalent and the reductions are constructive, X1 = Q X2 C.

    Raises:
        NotACocycle: if either matrix is not a cocycle of the given kind.
    """
    return classifier_for(kind, policy).equivalent(algebra, triple, X1, X2)
