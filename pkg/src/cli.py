"""
Command-line front end.

    bd-cohomology triples  --series D --rank 5 --twistable
    bd-cohomology verify   --series B --rank 2 --level full
    bd-cohomology classify --kind nontwisted --series D --rank 4 \\
        --triple '{"gamma1":[3],"tau":{"3":4}}'
    bd-cohomology table    --kind twisted --max-rank 5

Exit codes: 0 on success, 1 when a verification check fails or a
computation breaks down, 2 for usage errors (bad flags, unknown series,
malformed triples, ranks above the budget).
"""

import argparse
import asyncio
import logging
import sys
import uuid
from typing import List, Optional, Sequence

from pydantic import TypeAdapter, ValidationError

from src.config import config
from src.dependencies import get_verify_service
from src.exceptions import (
    BDCohomologyError,
    BudgetExceeded,
    FieldParseError,
    MalformedBijection,
    UnsupportedRank,
)
from src.models.api_models import RunConfig
from src.models.data_models import (
    ClassificationRecord,
    TableReport,
    TriplesListing,
    VerificationReport,
)
from src.services.orchestration.run_service import RunService
from src.utils.logging_config import command_var, run_id_var, setup_logging

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

USAGE_ERRORS = (
    BudgetExceeded,
    MalformedBijection,
    FieldParseError,
    UnsupportedRank,
    ValueError,
)


def _parse_args(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(
        prog="bd-cohomology",
        description="Belavin-Drinfeld triples, r-matrices and cohomology sets.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    def common(sub: argparse.ArgumentParser, max_rank_default: int = 2) -> None:
        sub.add_argument("--series", type=str.upper, choices=["B", "C", "D"])
        sub.add_argument("--rank", type=int, help="Single rank; overrides the range.")
        sub.add_argument("--min-rank", type=int, default=2)
        sub.add_argument("--max-rank", type=int, default=max_rank_default)
        sub.add_argument("--budget", type=int, default=config.RANK_BUDGET)
        sub.add_argument("--format", dest="output_format", choices=["table", "json"])

    triples = commands.add_parser("triples", help="List admissible triples.")
    common(triples)
    triples.add_argument("--twistable", action="store_true")
    triples.add_argument("--triple", help="One triple in the JSON encoding.")

    verify = commands.add_parser("verify", help="Run the exact identity checks.")
    common(verify)
    verify.add_argument(
        "--level", choices=["fast", "full"], default=config.VERIFY_LEVEL
    )

    classify = commands.add_parser("classify", help="Classify cohomology sets.")
    common(classify)
    classify.add_argument(
        "--kind", choices=["nontwisted", "twisted"], default="nontwisted"
    )
    classify.add_argument(
        "--policy", choices=["laurent", "rational"], default=config.FIELD_POLICY
    )
    classify.add_argument("--triple", help="One triple in the JSON encoding.")
    classify.add_argument("--twistable", action="store_true")

    table = commands.add_parser("table", help="Print a summary table of class counts.")
    common(table, max_rank_default=3)
    table.add_argument(
        "--kind", choices=["nontwisted", "twisted"], default="nontwisted"
    )
    table.add_argument(
        "--policy", choices=["laurent", "rational"], default=config.FIELD_POLICY
    )

    return parser.parse_args(argv)


def build_run_config(args: argparse.Namespace) -> RunConfig:
    """
    Raises:
        ValidationError: if the flags do not form a valid configuration.
    """
    min_rank, max_rank = args.min_rank, args.max_rank
    if args.rank is not None:
        min_rank = max_rank = args.rank
    values = {
        "series": args.series,
        "min_rank": min_rank,
        "max_rank": max_rank,
        "budget": args.budget,
        "output_format": args.output_format or "table",
        "triple": getattr(args, "triple", None),
        "twistable_only": getattr(args, "twistable", False),
    }
    for name in ("kind", "policy", "level"):
        if getattr(args, name, None) is not None:
            values[name] = getattr(args, name)
    return RunConfig(**values)


# --- plain-text rendering ---


def render_columns(headers: List[str], rows: List[List[str]]) -> str:
    """Left-aligned columns separated by two spaces."""
    widths = [len(h) for h in headers]
    for row in rows:
        widths = [max(w, len(cell)) for w, cell in zip(widths, row)]
    lines = [
        "  ".join(cell.ljust(w) for cell, w in zip(line, widths)).rstrip()
        for line in [headers, *rows]
    ]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _strings_text(strings: List[List[int]]) -> str:
    return " | ".join("-".join(str(i) for i in chain) for chain in strings) or "-"


def render_triples(listings: List[TriplesListing]) -> str:
    blocks = []
    for listing in listings:
        rows = [
            [
                str(k),
                t.description,
                _strings_text(t.strings),
                t.row_type,
            ]
            for k, t in enumerate(listing.triples, start=1)
        ]
        title = f"{listing.series}_{listing.rank}: {listing.count} triple(s)"
        columns = render_columns(["#", "tau", "strings", "row"], rows)
        blocks.append(f"{title}\n{columns}")
    return "\n\n".join(blocks)


def render_report(report: VerificationReport) -> str:
    rows = [
        [
            "PASS" if c.passed else "FAIL",
            c.name,
            c.target,
            c.detail
            if c.residual is None
            else f"{c.detail} residual: {c.residual}".strip(),
        ]
        for c in report.checks
    ]
    failed = sum(not c.passed for c in report.checks)
    summary = f"{len(report.checks)} checks, {failed} failed ({report.level})"
    columns = render_columns(["status", "check", "target", "detail"], rows)
    return f"{columns}\n\n{summary}"


def render_classification(records: List[ClassificationRecord]) -> str:
    rows = []
    for record in records:
        labels = ", ".join(
            c.label if c.parameter is None else f"{c.label} (k={c.parameter})"
            for c in record.representatives
        )
        rows.append(
            [
                f"{record.series}_{record.rank}",
                record.triple.description,
                str(record.count) + ("" if record.finite else "+"),
                labels or "empty",
                record.note,
            ]
        )
    return render_columns(["algebra", "triple", "classes", "labels", "note"], rows)


def render_table(report: TableReport) -> str:
    rows = [
        [row.series, str(row.rank), row.row_type, str(row.triples), row.summary]
        for row in report.rows
    ]
    title = f"{report.kind} cohomology ({report.policy} policy)"
    return f"{title}\n{render_columns(['series', 'n', 'row', 'triples', 'H1'], rows)}"


# --- entry points ---


async def main_async(args: argparse.Namespace, run_config: RunConfig) -> int:
    """Runs one command and prints its output; returns the exit code."""
    service = RunService(verifier=get_verify_service())
    as_json = run_config.output_format == "json"
    exit_code = EXIT_OK

    if args.command == "triples":
        listings = await service.list_triples(run_config)
        output = (
            TypeAdapter(List[TriplesListing]).dump_json(listings, indent=2).decode()
            if as_json
            else render_triples(listings)
        )
    elif args.command == "verify":
        report = await service.verify(run_config)
        output = report.model_dump_json(indent=2) if as_json else render_report(report)
        exit_code = EXIT_OK if report.passed else EXIT_FAILURE
    elif args.command == "classify":
        records = await service.classify(run_config)
        output = (
            TypeAdapter(List[ClassificationRecord])
            .dump_json(records, indent=2)
            .decode()
            if as_json
            else render_classification(records)
        )
    else:
        report_table = await service.table(run_config)
        output = (
            report_table.model_dump_json(indent=2)
            if as_json
            else render_table(report_table)
        )

    print(output)
    return exit_code


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _parse_args(argv)
    setup_logging(console_to_stdout=False)
    run_id_var.set(uuid.uuid4().hex)
    command_var.set(args.command)

    try:
        run_config = build_run_config(args)
        return asyncio.run(main_async(args, run_config))
    except ValidationError as exc:
        logger.warning(f"Invalid configuration: {exc}")
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except USAGE_ERRORS as exc:
        logger.warning(f"Usage error: {exc}")
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BDCohomologyError as exc:
        logger.error(f"Computation failed: {exc}", exc_info=True)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
