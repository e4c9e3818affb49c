"""
Defines the Pydantic data models for serialized results.

Every record the CLI prints with `--format json` and every HTTP response body
is one of these models, so `model_validate_json` is the schema parser for the
documented output. Field elements and matrices are carried in their canonical
text form (see SCHEMA.md).
"""

from typing import Dict, List, Optional

from pydantic import BaseModel, Field

from src.config import config

# ---Triples--- #


class TripleRecord(BaseModel):
    """
    A Belavin-Drinfeld triple in the CLI encoding, with string annotations.

    Attributes:
        gamma1 (List[int]): Simple roots of Gamma_1, 1-based.
        tau (Dict[str, int]): The bijection tau keyed by the source root.
        description (str): A short text form, "DJ" for the empty triple.
        strings (List[List[int]]): The strings of tau in canonical order.
        eta (Dict[str, int]): eta(i) for every i in Gamma_1.
        row_type (str): The summary-table row: DJ, split or other.
    """

    gamma1: List[int] = Field(..., description="Simple roots of Gamma_1, 1-based.")
    tau: Dict[str, int] = Field(..., description="tau as {source: target}.")
    description: str = Field(..., description="Short text form of the triple.")
    strings: List[List[int]] = Field(default_factory=list)
    eta: Dict[str, int] = Field(default_factory=dict)
    row_type: str = Field(..., description="DJ, split or other.")


class TriplesListing(BaseModel):
    """
    The output of the `triples` command for one series and rank.

    Attributes:
        schema_version (str): Version of the record layout.
        series (str): B, C or D.
        rank (int): The rank n.
        twistable_only (bool): True when only twistable triples are listed.
        count (int): Number of triples listed.
        triples (List[TripleRecord]): The triples in canonical order.
    """

    schema_version: str = config.SCHEMA_VERSION
    series: str
    rank: int
    twistable_only: bool = False
    count: int
    triples: List[TripleRecord] = Field(default_factory=list)


# ---Matrices and tensors--- #


class MatrixRecord(BaseModel):
    """
    A square matrix over a tower, one text entry per cell.

    Attributes:
        size (int): The number of rows and columns.
        rows (List[List[str]]): Entries in the field-element grammar.
    """

    size: int
    rows: List[List[str]] = Field(..., description="Entries as field-element text.")


class TensorEntry(BaseModel):
    """One nonzero coefficient of an element of g (x) g."""

    left: str = Field(..., description="Basis label of the left factor.")
    right: str = Field(..., description="Basis label of the right factor.")
    coefficient: str


# ---Cohomology--- #


class CohomologyClassRecord(BaseModel):
    """
    One class of a cohomology set.

    Attributes:
        label (str): The class label ("trivial", a square class, "plus"/"minus").
        parameter (Optional[str]): The square-class parameter k, if any.
        representative (MatrixRecord): The verified representative cocycle.
        witnesses (Dict[str, MatrixRecord]): Factors such as R, J, D when known.
    """

    label: str
    parameter: Optional[str] = None
    representative: MatrixRecord
    witnesses: Dict[str, MatrixRecord] = Field(default_factory=dict)


class ClassificationRecord(BaseModel):
    """
    The cohomology set of one triple.

    Attributes:
        schema_version (str): Version of the record layout.
        series (str): B, C or D.
        rank (int): The rank n.
        triple (TripleRecord): The triple fixing r.
        kind (str): nontwisted or twisted.
        policy (str): The field policy used for square classes.
        count (int): Number of classes listed.
        finite (bool): False when the classes sample an infinite set.
        note (str): Extra information, e.g. why a twisted set is empty.
        representatives (List[CohomologyClassRecord]): The classes in order.
    """

    schema_version: str = config.SCHEMA_VERSION
    series: str
    rank: int
    triple: TripleRecord
    kind: str
    policy: str
    count: int
    finite: bool = True
    note: str = ""
    representatives: List[CohomologyClassRecord] = Field(default_factory=list)


# ---Verification--- #


class CheckResult(BaseModel):
    """
    The outcome of one exact check.

    Attributes:
        name (str): The check identifier.
        target (str): What was checked, e.g. "D_3" or "D_3 a2->a3".
        passed (bool): True when the identity holds exactly.
        residual (Optional[str]): The exact residual when it failed.
        detail (str): A human-readable explanation.
    """

    name: str
    target: str
    passed: bool
    residual: Optional[str] = None
    detail: str = ""


class VerificationReport(BaseModel):
    """All checks of one `verify` run."""

    schema_version: str = config.SCHEMA_VERSION
    level: str = Field(..., description="fast or full.")
    passed: bool
    checks: List[CheckResult] = Field(default_factory=list)


# ---Summary tables--- #


class TableRow(BaseModel):
    """
    One row of a summary table: the class counts of a series, rank and row type.

    Attributes:
        series (str): B, C or D.
        rank (int): The rank n.
        row_type (str): DJ, split or other.
        triples (int): Number of triples of this row type.
        counts (List[int]): Distinct class counts seen across those triples.
        summary (str): "trivial", "2 elements", "empty" and so on.
    """

    series: str
    rank: int
    row_type: str
    triples: int
    counts: List[int] = Field(default_factory=list)
    summary: str


class TableReport(BaseModel):
    """The aggregated summary table for one cocycle kind."""

    schema_version: str = config.SCHEMA_VERSION
    kind: str
    policy: str
    rows: List[TableRow] = Field(default_factory=list)
