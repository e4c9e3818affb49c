# File: tests/test_cli.py

import json

import pytest
from pydantic import TypeAdapter

from src import cli
from src.models.data_models import (
    ClassificationRecord,
    TableReport,
    TriplesListing,
    VerificationReport,
)


@pytest.fixture(autouse=True)
def quiet_logging(mocker):
    """Keeps the CLI from writing log files during tests."""
    mocker.patch("src.cli.setup_logging", return_value=None)


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# --- argument handling ---


def test_rank_overrides_the_range():
    args = cli._parse_args(["classify", "--series", "d", "--rank", "4"])
    run_config = cli.build_run_config(args)
    assert run_config.series == "D"
    assert (run_config.min_rank, run_config.max_rank) == (4, 4)
    assert run_config.kind == "nontwisted"


def test_render_columns_aligns_cells():
    text = cli.render_columns(["a", "bb"], [["xyz", "1"]])
    assert text.splitlines() == ["a    bb", "---  --", "xyz  1"]


# --- commands ---


def test_triples_json_output(capsys):
    code, out, _ = run(
        capsys, "triples", "--series", "D", "--rank", "3", "--twistable", "--format", "json"
    )
    assert code == cli.EXIT_OK
    (listing,) = TypeAdapter(list[TriplesListing]).validate_json(out)
    assert listing.count == 5


def test_triples_text_output(capsys):
    code, out, _ = run(capsys, "triples", "--series", "C", "--rank", "3")
    assert code == cli.EXIT_OK
    assert out.startswith("C_3: 3 triple(s)")


def test_classify_split_triple(capsys):
    code, out, _ = run(
        capsys,
        "classify",
        "--series",
        "D",
        "--rank",
        "4",
        "--triple",
        '{"gamma1":[3],"tau":{"3":4}}',
        "--format",
        "json",
    )
    assert code == cli.EXIT_OK
    (record,) = TypeAdapter(list[ClassificationRecord]).validate_json(out)
    assert record.count == 2


def test_twisted_table_text(capsys):
    code, out, _ = run(
        capsys, "table", "--kind", "twisted", "--series", "D", "--rank", "3"
    )
    assert code == cli.EXIT_OK
    assert out.startswith("twisted cohomology")
    assert "2 elements" in out and "empty" in out


def test_table_json_schema(capsys):
    code, out, _ = run(
        capsys, "table", "--series", "C", "--rank", "2", "--format", "json"
    )
    assert code == cli.EXIT_OK
    report = TableReport.model_validate_json(out)
    assert report.rows[0].summary == "trivial"


def test_verify_passes_on_b2(capsys):
    code, out, _ = run(
        capsys, "verify", "--series", "B", "--rank", "2", "--format", "json"
    )
    report = VerificationReport.model_validate_json(out)
    assert report.passed
    assert code == cli.EXIT_OK


def test_verify_failure_sets_exit_code(capsys, mocker):
    failed = VerificationReport(level="fast", passed=False)
    mocker.patch(
        "src.cli.RunService.verify", new_callable=mocker.AsyncMock, return_value=failed
    )
    code, out, _ = run(capsys, "verify", "--series", "B", "--rank", "2")
    assert code == cli.EXIT_FAILURE
    assert "0 checks, 0 failed" in out


# --- usage errors ---


@pytest.mark.parametrize(
    "argv",
    [
        ["triples", "--series", "D", "--rank", "9"],
        ["classify", "--series", "D", "--rank", "4", "--triple", "not json"],
        ["classify", "--series", "B", "--rank", "1"],
        ["classify", "--rank", "4", "--triple", '{"gamma1":[],"tau":{}}'],
    ],
)
def test_usage_errors_exit_with_two(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == cli.EXIT_USAGE
    assert err.startswith("error:")


def test_unknown_series_is_rejected_by_argparse(capsys):
    with pytest.raises(SystemExit) as exc_info:
        cli.main(["triples", "--series", "E", "--rank", "6"])
    assert exc_info.value.code == cli.EXIT_USAGE


def test_json_output_is_plain_json(capsys):
    _, out, _ = run(capsys, "triples", "--series", "B", "--rank", "2", "--format", "json")
    assert json.loads(out)[0]["triples"][0]["description"] == "DJ"
