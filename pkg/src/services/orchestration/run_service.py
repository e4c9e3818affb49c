# File: src/services/orchestration/run_service.py

import asyncio
import logging
from collections import defaultdict
from typing import Dict, List, Optional, Tuple

from src.config import config
from src.core import matrices as mx
from src.core.bd_triples import (
    AdmissibleTriple,
    check_budget,
    enumerate_admissible,
    eta,
    is_admissible_triple,
    row_type,
    triple_from_json,
)
from src.core.field_tower import format_element
from src.core.lie_algebra import AlgebraRep, build_algebra
from src.core.matrices import Matrix
from src.core.root_system import Series, parse_series, validate_rank
from src.exceptions import MalformedBijection
from src.interfaces.classifier_interface import ICohomologyClassifier
from src.interfaces.field_policy_interface import IFieldPolicy
from src.models.api_models import RunConfig
from src.models.data_models import (
    ClassificationRecord,
    CohomologyClassRecord,
    MatrixRecord,
    TableReport,
    TableRow,
    TripleRecord,
    TriplesListing,
    VerificationReport,
)
from src.services.business.classifiers import classifier_for
from src.services.business.cocycles import CocycleKind, CohomologySet
from src.services.business.field_policy import policy_by_name
from src.services.business.twisted import is_twistable
from src.services.orchestration.verify_service import VerifyService
from src.utils.logging_config import log_target

logger = logging.getLogger(__name__)

ROW_ORDER = ("DJ", "split", "twistable", "other")


# --- record conversion ---


def triple_record(triple: AdmissibleTriple) -> TripleRecord:
    encoded = triple.to_json_dict()
    return TripleRecord(
        gamma1=encoded["gamma1"],
        tau=encoded["tau"],
        description=triple.describe(),
        strings=[list(chain) for chain in triple.strings],
        eta={str(i): eta(triple, i) for i in triple.gamma1},
        row_type=row_type(triple),
    )


def matrix_record(X: Matrix) -> MatrixRecord:
    return MatrixRecord(size=len(X), rows=mx.to_text(X))


def classification_record(
    algebra: AlgebraRep, cohomology: CohomologySet, policy: IFieldPolicy
) -> ClassificationRecord:
    classes = [
        CohomologyClassRecord(
            label=c.label,
            parameter=None if c.parameter is None else format_element(c.parameter),
            representative=matrix_record(c.representative.matrix),
            witnesses={
                name: matrix_record(M)
                for name, M in c.representative.witnesses.items()
            },
        )
        for c in cohomology.classes
    ]
    return ClassificationRecord(
        series=algebra.series.value,
        rank=algebra.rank,
        triple=triple_record(cohomology.triple),
        kind=cohomology.kind.value,
        policy=policy.name,
        count=cohomology.count,
        finite=cohomology.finite,
        note=cohomology.note,
        representatives=classes,
    )


def table_row_type(triple: AdmissibleTriple, kind: CocycleKind) -> str:
    """The summary-table row of a triple; twisted tables split by twistability."""
    if kind is CocycleKind.TWISTED and not triple.is_drinfeld_jimbo():
        return "twistable" if is_twistable(triple) else "other"
    return row_type(triple)


def summarize(counts: List[int], finite: bool) -> str:
    """'empty', 'trivial', 'c elements', or each of several counts joined."""
    if not finite:
        return "infinite"

    def one(c: int) -> str:
        if c == 0:
            return "empty"
        if c == 1:
            return "trivial"
        return f"{c} elements"

    return " / ".join(one(c) for c in counts)


class RunService:
    """
    Runs the commands shared by the CLI and the HTTP surface.

    Per-triple work is CPU bound and executed in worker threads, bounded by
    a semaphore; results are gathered back in canonical triple order.
    """

    def __init__(
        self,
        verifier: Optional[VerifyService] = None,
        max_concurrency: int = config.MAX_CONCURRENCY,
    ):
        self.verifier = verifier or VerifyService(max_concurrency)
        self.semaphore = asyncio.Semaphore(max_concurrency)

    # --- triple selection ---

    def _targets(self, run_config: RunConfig) -> List[Tuple[Series, int]]:
        targets = []
        for name in run_config.series_list():
            series = parse_series(name)
            for n in run_config.ranks():
                validate_rank(series, n)
                check_budget(n, run_config.budget)
                targets.append((series, n))
        return targets

    def _select_triples(
        self, run_config: RunConfig, series: Series, n: int
    ) -> List[AdmissibleTriple]:
        """
        Raises:
            MalformedBijection: if the requested triple is malformed or not admissible.
            BudgetExceeded: if n exceeds the enumeration budget.
        """
        if run_config.triple is not None:
            triple = triple_from_json(series, n, run_config.triple)
            if not is_admissible_triple(triple):
                raise MalformedBijection(
                    f"Triple {triple.describe()} is not admissible "
                    f"for {series.value}_{n}."
                )
            selected = [triple]
        else:
            selected = enumerate_admissible(series, n, run_config.budget)
        if run_config.twistable_only:
            selected = [t for t in selected if is_twistable(t)]
        return selected

    # --- commands ---

    async def list_triples(self, run_config: RunConfig) -> List[TriplesListing]:
        listings = []
        for series, n in self._targets(run_config):
            selected = await asyncio.to_thread(
                self._select_triples, run_config, series, n
            )
            listings.append(
                TriplesListing(
                    series=series.value,
                    rank=n,
                    twistable_only=run_config.twistable_only,
                    count=len(selected),
                    triples=[triple_record(t) for t in selected],
                )
            )
            logger.info(f"{series.value}_{n}: {len(selected)} triples listed")
        return listings

    async def verify(self, run_config: RunConfig) -> VerificationReport:
        self._targets(run_config)
        return await self.verifier.run(run_config)

    async def classify(self, run_config: RunConfig) -> List[ClassificationRecord]:
        return [record for _, record in await self._classified(run_config)]

    async def _classified(
        self, run_config: RunConfig
    ) -> List[Tuple[AdmissibleTriple, ClassificationRecord]]:
        policy = policy_by_name(run_config.policy)
        kind = CocycleKind(run_config.kind)
        classifier = classifier_for(kind, policy)
        results: List[Tuple[AdmissibleTriple, ClassificationRecord]] = []
        for series, n in self._targets(run_config):
            algebra = await asyncio.to_thread(build_algebra, series, n)
            triples = await asyncio.to_thread(
                self._select_triples, run_config, series, n
            )
            with log_target(f"{series.value}_{n}"):
                logger.info(
                    f"Classifying {len(triples)} triple(s) "
                    f"({kind.value}, {policy.name})"
                )
                records = await asyncio.gather(
                    *(
                        self._classify_one(classifier, algebra, t, policy)
                        for t in triples
                    )
                )
            results.extend(zip(triples, records))
        return results

    async def _classify_one(
        self,
        classifier: ICohomologyClassifier,
        algebra: AlgebraRep,
        triple: AdmissibleTriple,
        policy: IFieldPolicy,
    ) -> ClassificationRecord:
        async with self.semaphore:
            cohomology = await asyncio.to_thread(classifier.classify, algebra, triple)
        return classification_record(algebra, cohomology, policy)

    async def table(self, run_config: RunConfig) -> TableReport:
        kind = CocycleKind(run_config.kind)
        grouped: Dict[Tuple[str, int, int], List[ClassificationRecord]] = defaultdict(
            list
        )
        for triple, record in await self._classified(run_config):
            row = ROW_ORDER.index(table_row_type(triple, kind))
            grouped[(record.series, record.rank, row)].append(record)

        rows = []
        for (series_name, n, row), members in sorted(grouped.items()):
            counts = sorted({m.count for m in members})
            rows.append(
                TableRow(
                    series=series_name,
                    rank=n,
                    row_type=ROW_ORDER[row],
                    triples=len(members),
                    counts=counts,
                    summary=summarize(counts, all(m.finite for m in members)),
                )
            )
        logger.info(f"Summary table ({kind.value}): {len(rows)} rows")
        return TableReport(kind=kind.value, policy=run_config.policy, rows=rows)
