"""
Random cocycles and diagonal data for soundness checks.

Every probe is built as X = Q * Rep * C from a random Q in G(K), a class
representative and a random C in C(r), so the class it must reduce to is
known in advance. Entries are small monomials q * h^m over short towers.
"""

import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from src.config import config
from src.core import matrices as mx
from src.core.bd_triples import AdmissibleTriple, string_groups
from src.core.field_tower import IMAG_UNIT, SQRT_HBAR, FieldElement, Scalar
from src.core.lie_algebra import AlgebraRep, TorusElement
from src.core.matrices import Matrix
from src.core.root_system import Series
from src.exceptions import NotInTorus
from src.services.business.cocycles import (
    DiagonalDatum,
    torus_from_characters,
    unipotent,
)
from src.services.business.nontwisted import NontwistedClassifier
from src.services.business.twisted import (
    TwistedClassifier,
    paired_indices,
    representative,
)

logger = logging.getLogger(__name__)

HBAR = FieldElement.hbar()

# Units of K used for coefficients and torus parameters.
BASE_UNITS: Tuple[Scalar, ...] = (1, 2, -1, 3, Fraction(1, 2), IMAG_UNIT)
# Character values for C(r); the square roots these need stay in the supported towers.
DEEP_VALUES: Tuple[Scalar, ...] = (
    1,
    2,
    -1,
    IMAG_UNIT,
    HBAR,
    SQRT_HBAR,
    3 * HBAR.inverse(),
)
SHALLOW_VALUES: Tuple[Scalar, ...] = (
    1,
    2,
    -1,
    IMAG_UNIT,
    HBAR,
    SQRT_HBAR,
    3 * SQRT_HBAR,
)
# Entries of random data in Z before the paired product is fixed.
TOWER_ENTRIES: Tuple[Scalar, ...] = (
    1,
    2,
    HBAR,
    SQRT_HBAR,
    FieldElement.hbar_power(Fraction(1, 4)),
    3 * HBAR.inverse(),
    IMAG_UNIT * SQRT_HBAR,
)


@dataclass(frozen=True)
class Probe:
    """A random cocycle with the label of the representative it was built from."""

    matrix: Matrix
    label: str
    Q: Matrix
    representative: Matrix
    C: Matrix


class ProbeGenerator:
    """Seeded source of random probe data; the seed defaults to BD_PROBE_SEED."""

    def __init__(self, seed: Optional[int] = None):
        self.seed = config.PROBE_SEED if seed is None else seed
        self.rng = random.Random(self.seed)

    # --- scalars ---

    def base_scalar(self, max_order: int = 1) -> FieldElement:
        """q h^m with q a small unit and |m| <= max_order."""
        q = FieldElement.coerce(self.rng.choice(BASE_UNITS))
        m = self.rng.randint(-max_order, max_order)
        return q * FieldElement.hbar_power(Fraction(m))

    def split_parameter(self) -> Tuple[FieldElement, int]:
        """k = q^2 h^m together with m."""
        q = FieldElement.coerce(self.rng.choice((1, 2, 3, IMAG_UNIT)))
        m = self.rng.randint(0, 3)
        return q * q * FieldElement.hbar(m), m

    # --- group elements ---

    def base_torus(self, algebra: AlgebraRep) -> Matrix:
        params = tuple(self.base_scalar() for _ in range(algebra.rank))
        return TorusElement(params).matrix(algebra.series)

    def base_group_element(self, algebra: AlgebraRep, factors: int = 3) -> Matrix:
        """A product of root-group unipotents over K times a K-torus element."""
        Q = self.base_torus(algebra)
        root_count = 2 * len(algebra.positive_roots)
        for _ in range(factors):
            index = self.rng.randrange(root_count)
            unit = FieldElement.coerce(self.rng.choice(BASE_UNITS))
            t = unit * HBAR ** self.rng.randint(0, 1)
            Q = mx.mul(Q, unipotent(algebra, index, t))
        return Q

    def centralizer_element(
        self,
        algebra: AlgebraRep,
        triple: AdmissibleTriple,
        values: Sequence[Scalar] = DEEP_VALUES,
        last: Optional[Scalar] = None,
    ) -> Matrix:
        """A torus element whose characters are constant on each string group."""
        characters: Dict[int, Scalar] = {}
        for group in string_groups(triple):
            value = self.rng.choice(values)
            characters.update((i, value) for i in group)
        t = torus_from_characters(algebra, characters, last=last)
        return t.matrix(algebra.series)

    # --- cocycles ---

    def nontwisted_cocycle(
        self,
        algebra: AlgebraRep,
        triple: AdmissibleTriple,
        classifier: NontwistedClassifier,
        k: Optional[Scalar] = None,
    ) -> Probe:
        """Q Rep C with Rep a class representative, or rep(k) when k is given."""
        if k is None:
            chosen = self.rng.choice(classifier.classify(algebra, triple).classes)
            rep, label = chosen.representative.matrix, chosen.label
        else:
            rep = classifier.representative(algebra, triple, k)
            label = classifier.policy.square_class(k)
        Q = self.base_group_element(algebra)
        C = self.centralizer_element(algebra, triple)
        return Probe(mx.mul_chain(Q, rep, C), label, Q, rep, C)

    def twisted_cocycle(
        self,
        algebra: AlgebraRep,
        triple: AdmissibleTriple,
        classifier: TwistedClassifier,
    ) -> Probe:
        """Q Rep C with C over K[sqrt_h], so the witnesses stay constructive."""
        chosen = self.rng.choice(classifier.classify(algebra, triple).classes)
        if triple.is_drinfeld_jimbo():
            params = tuple(self.rng.choice(SHALLOW_VALUES) for _ in range(algebra.rank))
            C = TorusElement(params).matrix(algebra.series)
        else:
            try:
                C = self.centralizer_element(algebra, triple, SHALLOW_VALUES, last=1)
            except NotInTorus:
                C = mx.identity(algebra.size)
        Q = self.base_group_element(algebra)
        rep = chosen.representative.matrix
        return Probe(mx.mul_chain(Q, rep, C), chosen.label, Q, rep, C)

    # --- diagonal data and block instances ---

    def datum_in_Z(self, algebra: AlgebraRep) -> DiagonalDatum:
        """
        A random diagonal datum in Z for the Drinfeld-Jimbo triple: free entries
        on one side of each pair, the partner fixed by a product in K
        (sqrt_h K for C).
        """
        series, n = algebra.series, algebra.rank
        d: List[Scalar] = [1] * algebra.size
        pairs = list(paired_indices(series, n))
        if series is Series.D and n % 2:
            pairs.append((n - 1, n))
        for k, k_bar in pairs:
            entry = FieldElement.coerce(self.rng.choice(TOWER_ENTRIES))
            product = self.base_scalar()
            if series is Series.C:
                product = product * SQRT_HBAR
            d[k] = entry
            d[k_bar] = mx.normalize(product / entry)
        if series is Series.B:
            d[n] = self.base_scalar() * SQRT_HBAR if n % 2 else 1
        return DiagonalDatum(tuple(d))

    def twisted_group_datum(self, algebra: AlgebraRep) -> Tuple[Matrix, DiagonalDatum]:
        """X = Q * complete_to_group(D) J D for a random D in Z."""
        D = self.datum_in_Z(algebra)
        Q = self.base_group_element(algebra, factors=2)
        X = mx.mul(Q, representative(algebra, D))
        return X, D

    def block_instance(self, size: int = 2) -> Tuple[Matrix, Matrix, Matrix]:
        """(X, Q0, K0): Q0 invertible over K, K0 diagonal over a tower, X = Q0 K0."""
        while True:
            rows = [
                [
                    self.base_scalar() if self.rng.random() < 0.8 else 0
                    for _ in range(size)
                ]
                for _ in range(size)
            ]
            Q0 = mx.from_rows(rows)
            if mx.normalize(mx.determinant(Q0)) != 0:
                break
        K0 = mx.diag([self.rng.choice(TOWER_ENTRIES) for _ in range(size)])
        logger.debug(f"Block instance of size {size} drawn")
        return mx.mul(Q0, K0), Q0, K0
