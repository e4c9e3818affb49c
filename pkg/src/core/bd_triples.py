"""
Belavin-Drinfeld triples for the B, C and D series.

A triple is stored as the sorted domain Gamma_1 together with tau as sorted
(source, target) pairs; Gamma_2 and the strings are derived.
"""

import json
import logging
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, permutations
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from src.core.root_system import Series, check_index, gram_matrix, validate_rank
from src.exceptions import BudgetExceeded, MalformedBijection

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AdmissibleTriple:
    """(Gamma_1, Gamma_2, tau) for a fixed series and rank."""

    series: Series
    rank: int
    pairs: Tuple[Tuple[int, int], ...]

    @property
    def gamma1(self) -> Tuple[int, ...]:
        return tuple(a for a, _ in self.pairs)

    @property
    def gamma2(self) -> Tuple[int, ...]:
        return tuple(sorted(b for _, b in self.pairs))

    @property
    def tau(self) -> Dict[int, int]:
        return dict(self.pairs)

    def is_drinfeld_jimbo(self) -> bool:
        return not self.pairs

    @cached_property
    def strings(self) -> List[List[int]]:
        return strings(self)

    def sort_key(self) -> Tuple:
        return (len(self.pairs), self.gamma1, tuple(b for _, b in self.pairs))

    def to_json_dict(self) -> Dict:
        """The CLI encoding, e.g. {"gamma1": [4], "tau": {"4": 5}}."""
        return {"gamma1": list(self.gamma1), "tau": {str(a): b for a, b in self.pairs}}

    def describe(self) -> str:
        if not self.pairs:
            return "DJ"
        return ", ".join(f"a{a}->a{b}" for a, b in self.pairs)


def make_triple(series: Series, n: int, tau: Mapping[int, int]) -> AdmissibleTriple:
    """
    Builds a triple from tau without checking admissibility.

    Raises:
        MalformedBijection: if tau is not injective or leaves 1..n.
    """
    _check_bijection(n, tau)
    pairs = tuple(sorted((int(a), int(b)) for a, b in tau.items()))
    return AdmissibleTriple(series, n, pairs)


def _check_bijection(n: int, tau: Mapping[int, int]) -> None:
    targets = list(tau.values())
    if len(set(targets)) != len(targets):
        raise MalformedBijection(f"tau is not injective: {dict(tau)}")
    for index in list(tau.keys()) + targets:
        if not isinstance(index, int) or not 1 <= index <= n:
            raise MalformedBijection(f"Root index {index!r} outside 1..{n}.")


def triple_from_json(series: Series, n: int, payload: str) -> AdmissibleTriple:
    """Parses the CLI encoding; Gamma_2 is derived from tau."""
    try:
        data = json.loads(payload) if isinstance(payload, str) else payload
        gamma1 = [int(x) for x in data.get("gamma1", [])]
        tau = {int(k): int(v) for k, v in data.get("tau", {}).items()}
    except (ValueError, TypeError, AttributeError) as exc:
        raise MalformedBijection(f"Cannot parse triple '{payload}': {exc}") from exc
    if sorted(gamma1) != sorted(tau):
        raise MalformedBijection(
            f"gamma1 {sorted(gamma1)} does not match the domain of tau {sorted(tau)}."
        )
    return make_triple(series, n, tau)


def is_isometry(series: Series, n: int, tau: Mapping[int, int]) -> bool:
    """tau preserves inner products of simple roots in its domain, norms included."""
    gram = gram_matrix(series, n)
    for a in tau:
        for b in tau:
            if gram[a - 1][b - 1] != gram[tau[a] - 1][tau[b] - 1]:
                return False
    return True


def is_nilpotent(tau: Mapping[int, int]) -> bool:
    """Every forward orbit leaves Gamma_1 within |Gamma_1| steps."""
    for start in tau:
        current = start
        for _ in range(len(tau) + 1):
            if current not in tau:
                break
            current = tau[current]
        else:
            return False
    return True


def is_admissible(
    series: Series,
    n: int,
    gamma1: Iterable[int],
    gamma2: Iterable[int],
    tau: Mapping[int, int],
) -> bool:
    gamma1_set, gamma2_set = set(gamma1), set(gamma2)
    if set(tau.keys()) != gamma1_set or set(tau.values()) != gamma2_set:
        raise MalformedBijection(
            f"tau {dict(tau)} is not a bijection "
            f"{sorted(gamma1_set)} -> {sorted(gamma2_set)}."
        )
    _check_bijection(n, tau)
    return is_isometry(series, n, tau) and is_nilpotent(tau)


def is_admissible_triple(triple: AdmissibleTriple) -> bool:
    return is_admissible(
        triple.series, triple.rank, triple.gamma1, triple.gamma2, triple.tau
    )


def drinfeld_jimbo(series: Series, n: int) -> AdmissibleTriple:
    validate_rank(series, n)
    return AdmissibleTriple(series, n, ())


def check_budget(n: int, budget: int) -> None:
    if n > budget:
        raise BudgetExceeded(
            f"Rank {n} exceeds the enumeration budget {budget}.", rank=n, budget=budget
        )


def enumerate_admissible(series: Series, n: int, budget: int) -> List[AdmissibleTriple]:
    """
    All admissible triples, canonically ordered by |Gamma_1| then
    lexicographically; the Drinfeld-Jimbo triple comes first.
    """
    validate_rank(series, n)
    check_budget(n, budget)
    roots = range(1, n + 1)
    found: List[AdmissibleTriple] = []
    for size in range(0, n):
        for gamma1 in combinations(roots, size):
            for image in permutations(roots, size):
                tau = dict(zip(gamma1, image))
                if is_isometry(series, n, tau) and is_nilpotent(tau):
                    found.append(AdmissibleTriple(series, n, tuple(zip(gamma1, image))))
    found.sort(key=AdmissibleTriple.sort_key)
    logger.debug(f"{series.value}_{n}: {len(found)} admissible triples")
    return found


def strings(triple: AdmissibleTriple) -> List[List[int]]:
    """Ordered orbits from Gamma_1 \\ Gamma_2 to Gamma_2 \\ Gamma_1, sorted by start."""
    tau = triple.tau
    targets = set(tau.values())
    result = []
    for start in sorted(a for a in tau if a not in targets):
        chain = [start]
        while chain[-1] in tau:
            chain.append(tau[chain[-1]])
        result.append(chain)
    return result


def string_of(triple: AdmissibleTriple, i: int) -> Optional[List[int]]:
    for chain in triple.strings:
        if i in chain:
            return chain
    return None


def eta(triple: AdmissibleTriple, i: int) -> int:
    """Smallest k > i in the string of alpha_i; 0 if alpha_i is not in Gamma_1."""
    check_index(triple.rank, i)
    if i not in triple.tau:
        return 0
    chain = string_of(triple, i) or []
    larger = [k for k in chain if k > i]
    return min(larger) if larger else 0


def joins_last_pair(triple: AdmissibleTriple) -> bool:
    """True for D_n triples where one string holds both alpha_{n-1} and alpha_n."""
    if triple.series is not Series.D:
        return False
    n = triple.rank
    chain = string_of(triple, n - 1)
    return chain is not None and n in chain


def row_type(triple: AdmissibleTriple) -> str:
    """Summary-table row label: DJ, split or other."""
    if triple.is_drinfeld_jimbo():
        return "DJ"
    if joins_last_pair(triple):
        return "split"
    return "other"


def string_groups(triple: AdmissibleTriple) -> List[List[int]]:
    """Partition of 1..n: each string, plus singletons outside Gamma_1 u Gamma_2."""
    covered = {i for chain in triple.strings for i in chain}
    groups = [list(chain) for chain in triple.strings]
    groups.extend([i] for i in range(1, triple.rank + 1) if i not in covered)
    groups.sort(key=lambda g: min(g))
    return groups
