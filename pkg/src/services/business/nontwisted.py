"""
Non-twisted Belavin-Drinfeld cohomology.

Every non-twisted cocycle X factors as Q t with Q in G(K) and t a torus
element, so its class is a question about t alone. Outside the D_n case
where a string joins alpha_{n-1} and alpha_n this class is trivial; in that
case it is the square class of e^{alpha_n}(t) / e^{alpha_{n-1}}(t).
"""

import logging
from typing import Dict, List, Optional, Sequence, Tuple

from src.core import matrices as mx
from src.core.bd_triples import (
    AdmissibleTriple,
    joins_last_pair,
    string_groups,
    string_of,
)
from src.core.field_tower import FieldElement, Scalar, galois_group, sqrt_witness
from src.core.lie_algebra import (
    AlgebraRep,
    TorusElement,
    character_value,
    group_membership,
)
from src.core.matrices import Matrix
from src.core.root_system import Series
from src.exceptions import (
    BlockHypothesisViolated,
    NotACocycle,
    NotConstructivelyRepresentable,
    NotInBaseField,
    NotInGroup,
    NotInTorus,
)
from src.interfaces.classifier_interface import ICohomologyClassifier
from src.interfaces.field_policy_interface import IFieldPolicy
from src.services.business.cocycles import (
    Cocycle,
    CocycleKind,
    CohomologyClass,
    CohomologySet,
    EquivalenceResult,
    Reduction,
    block_decompose,
    compare_reductions,
    galois_condition,
    in_centralizer,
    torus_from_characters,
)
from src.services.business.field_policy import LaurentSeriesPolicy

logger = logging.getLogger(__name__)

TRIVIAL = "trivial"


def is_nontwisted_cocycle(
    algebra: AlgebraRep, triple: AdmissibleTriple, X: Matrix
) -> bool:
    """
    X^{-1} sigma(X) in C(r) for every sigma in the Galois group of X's tower.

    Raises:
        NotInGroup: if X is not in the group.
    """
    if not group_membership(algebra, X):
        raise NotInGroup("Cocycle check requested for a matrix outside the group.")
    return galois_condition(algebra, triple, X, galois_group(mx.matrix_tower(X)))


def split_representative(
    algebra: AlgebraRep, triple: AdmissibleTriple, k: Scalar
) -> TorusElement:
    """
    The torus cocycle of square class k: character 1/sqrt(k) at alpha_{n-1},
    sqrt(k) at the other roots of the joining string, 1 elsewhere.
    """
    n = algebra.rank
    root = 1 if mx.normalize(k) == 1 else sqrt_witness(k)[0]
    chain = string_of(triple, n - 1) or []
    characters: Dict[int, Scalar] = {}
    for i in range(1, n + 1):
        if i == n - 1:
            characters[i] = mx.reciprocal(root)
        elif i in chain:
            characters[i] = root
        else:
            characters[i] = 1
    return torus_from_characters(algebra, characters)


def _characters(algebra: AlgebraRep, t: TorusElement) -> Dict[int, Scalar]:
    return {i: character_value(algebra, i, t) for i in range(1, algebra.rank + 1)}


def _anchor(algebra: AlgebraRep, group: Sequence[int]) -> int:
    """The root whose character is matched exactly when normalizing a group."""
    n = algebra.rank
    if algebra.series is Series.C and n in group:
        return n
    if algebra.series is Series.D:
        if n in group:
            return n
        if n - 1 in group:
            return n - 1
    return group[0]


def torus_factor(algebra: AlgebraRep, X: Matrix) -> Tuple[Matrix, TorusElement]:
    """
    Writes X = Q t with Q over K in the group and t a torus element.

    Raises:
        BlockHypothesisViolated: if X^{-1} sigma(X) is not diagonal.
        NotInBaseField: if the paired products of the diagonal leave K.
    """
    Q1, K = block_decompose(X)
    d = mx.diagonal(K)
    m, n = algebra.size, algebra.rank
    k_part: List[Scalar] = [1] * m
    for a in range(n):
        k_part[m - 1 - a] = mx.normalize(d[a] * d[m - 1 - a])
    if m % 2:
        k_part[n] = d[n]
    K_part = mx.diag(k_part)
    if not mx.is_over_base(K_part):
        raise NotInBaseField("Paired products of the diagonal factor are not in K.")
    t = TorusElement(tuple(mx.normalize(x) for x in d[:n]))
    return mx.mul(Q1, K_part), t


class NontwistedClassifier(ICohomologyClassifier):
    """Classifies non-twisted cocycles under a square-class policy."""

    kind = CocycleKind.NONTWISTED

    def __init__(self, policy: Optional[IFieldPolicy] = None):
        self.policy = policy or LaurentSeriesPolicy()

    def is_cocycle(
        self, algebra: AlgebraRep, triple: AdmissibleTriple, X: Matrix
    ) -> bool:
        return is_nontwisted_cocycle(algebra, triple, X)

    def representative(
        self, algebra: AlgebraRep, triple: AdmissibleTriple, k: Scalar = 1
    ) -> Matrix:
        if not joins_last_pair(triple) or mx.normalize(k) == 1:
            return mx.identity(algebra.size)
        return split_representative(algebra, triple, k).matrix(algebra.series)

    def classify(self, algebra: AlgebraRep, triple: AdmissibleTriple) -> CohomologySet:
        if joins_last_pair(triple):
            params = self.policy.class_representatives()
            labelled = [(self.policy.square_class(k), k) for k in params]
            finite = self.policy.is_finite()
        else:
            labelled = [(TRIVIAL, None)]
            finite = True
        classes = []
        for label, k in labelled:
            X = self.representative(algebra, triple, 1 if k is None else k)
            if not is_nontwisted_cocycle(algebra, triple, X):
                raise NotACocycle(
                    f"Representative '{label}' fails the cocycle check.",
                    kind=self.kind.value,
                )
            cocycle = Cocycle(X, self.kind, triple)
            classes.append(CohomologyClass(label, cocycle, parameter=k))
        note = (
            ""
            if finite
            else f"sample of an infinite set under the {self.policy.name} policy"
        )
        logger.info(f"{triple.describe()}: {len(classes)} non-twisted classes")
        return CohomologySet(
            triple, self.kind, tuple(classes), finite=finite, note=note
        )

    def _label(
        self, algebra: AlgebraRep, triple: AdmissibleTriple, t: TorusElement
    ) -> Tuple[str, Scalar]:
        if not joins_last_pair(triple):
            return TRIVIAL, 1
        n = algebra.rank
        chars = _characters(algebra, t)
        kappa = FieldElement.coerce(
            mx.normalize(chars[n] * mx.reciprocal(chars[n - 1]))
        )
        if not kappa.is_base():
            raise NotACocycle(
                "Character ratio at the joining string is not in K.",
                kind=self.kind.value,
            )
        return self.policy.square_class(kappa), self.policy.representative(kappa)

    def reduce(
        self, algebra: AlgebraRep, triple: AdmissibleTriple, X: Matrix
    ) -> Reduction:
        """
        X = Q * rep * C with Q over K and C in C(r).

        Raises:
            NotACocycle: if X is not a non-twisted cocycle.
            NotConstructivelyRepresentable: if Q or C cannot be built exactly.
        """
        if not is_nontwisted_cocycle(algebra, triple, X):
            raise NotACocycle("X is not a non-twisted cocycle.", kind=self.kind.value)
        try:
            Q, t = torus_factor(algebra, X)
        except (BlockHypothesisViolated, NotInBaseField) as exc:
            raise NotACocycle(
                f"Torus factorization failed: {exc}", kind=self.kind.value
            ) from exc
        label, k0 = self._label(algebra, triple, t)
        rep = self.representative(algebra, triple, k0)
        try:
            Q_final, C = self._witnesses(algebra, triple, Q, t, rep)
        except NotInTorus as exc:
            raise NotConstructivelyRepresentable(
                f"Non-twisted witnesses unavailable: {exc}"
            ) from exc
        if not mx.equal(mx.mul_chain(Q_final, rep, C), X):
            raise NotConstructivelyRepresentable(
                "Non-twisted witnesses do not rebuild X."
            )
        return Reduction(label, rep, Q_final, C)


    def _witnesses(
        self,
        algebra: AlgebraRep,
        triple: AdmissibleTriple,
        Q: Matrix,
        t: TorusElement,
        rep: Matrix,
    ) -> Tuple[Matrix, Matrix]:
        """
        Splits t = D' rep C with D' over K and C in C(r) by matching the
        characters of t and rep at one anchor root per string group.
        """
        series = algebra.series
        rep_t = TorusElement(tuple(mx.diagonal(rep)[: algebra.rank]))
        s, s_rep = _characters(algebra, t), _characters(algebra, rep_t)
        adjusted: Dict[int, Scalar] = {}
        for group in string_groups(triple):
            anchor = _anchor(algebra, group)
            c = mx.normalize(s[anchor] * mx.reciprocal(s_rep[anchor]))
            for i in group:
                adjusted[i] = mx.normalize(s[i] * mx.reciprocal(s_rep[i] * c))
        D_prime = torus_from_characters(algebra, adjusted).matrix(series)
        if not mx.is_over_base(D_prime):
            raise NotConstructivelyRepresentable("Base torus factor is not over K.")
        C = mx.mul(mx.inverse(mx.mul(D_prime, rep)), t.matrix(series))
        if not in_centralizer(algebra, triple, C):
            raise NotInTorus("Residual torus factor is not in C(r).")
        return mx.mul(Q, D_prime), C

    def equivalent(
        self, algebra: AlgebraRep, triple: AdmissibleTriple, X1: Matrix, X2: Matrix
    ) -> EquivalenceResult:
        return compare_reductions(
            self.reduce(algebra, triple, X1), self.reduce(algebra, triple, X2)
        )


def classify_nontwisted(
    algebra: AlgebraRep, triple: AdmissibleTriple, policy: Optional[IFieldPolicy] = None
) -> CohomologySet:
    return NontwistedClassifier(policy).classify(algebra, triple)
