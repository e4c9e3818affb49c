"""
Defines the Pydantic data models used for run configuration and API requests.

`RunConfig` is shared by the CLI and the HTTP surface: the CLI builds it from
its flags, the endpoints build it from the request bodies below, and the
orchestration service only ever sees a validated `RunConfig`.
"""

from typing import List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.config import config

# ---Run configuration--- #


class RunConfig(BaseModel):
    """
    Holds everything one command needs.

    Attributes:
        series (Optional[str]): B, C or D; None means all three.
        min_rank (int): Smallest rank, inclusive.
        max_rank (int): Largest rank, inclusive.
        triple (Optional[str]): A single triple in the JSON encoding.
        twistable_only (bool): Restrict listings to twistable triples.
        kind (str): nontwisted or twisted.
        policy (str): laurent or rational.
        output_format (str): table or json.
        level (str): fast or full verification.
        budget (int): Largest rank accepted by enumeration.
    """

    model_config = ConfigDict(extra="forbid")

    series: Optional[str] = None
    min_rank: int = Field(2, ge=1)
    max_rank: int = Field(2, ge=1)
    triple: Optional[str] = Field(
        None, json_schema_extra={"example": '{"gamma1":[3],"tau":{"3":4}}'}
    )
    twistable_only: bool = False
    kind: Literal["nontwisted", "twisted"] = "nontwisted"
    policy: Literal["laurent", "rational"] = Field(
        default_factory=lambda: config.FIELD_POLICY  # type: ignore[arg-type]
    )
    output_format: Literal["table", "json"] = "table"
    level: Literal["fast", "full"] = Field(
        default_factory=lambda: config.VERIFY_LEVEL  # type: ignore[arg-type]
    )
    budget: int = Field(default_factory=lambda: config.RANK_BUDGET, ge=1)

    @field_validator("series")
    @classmethod
    def _upper_series(cls, value: Optional[str]) -> Optional[str]:
        if value is None:
            return None
        value = value.upper()
        if value not in ("B", "C", "D"):
            raise ValueError(f"Unknown series '{value}'; expected B, C or D.")
        return value

    @model_validator(mode="after")
    def _check_triple_scope(self) -> "RunConfig":
        single = self.series is not None and self.min_rank == self.max_rank
        if self.triple is not None and not single:
            raise ValueError("--triple needs a single series and a single rank.")
        return self

    def series_list(self) -> List[str]:
        return [self.series] if self.series else ["B", "C", "D"]

    def ranks(self) -> List[int]:
        return list(range(self.min_rank, self.max_rank + 1))


# ---API request models--- #


class TriplesRequest(BaseModel):
    """Request body for POST /triples."""

    series: str = Field(..., json_schema_extra={"example": "D"})
    rank: int = Field(..., ge=1, json_schema_extra={"example": 5})
    twistable_only: bool = False


class VerifyRequest(BaseModel):
    """Request body for POST /verify."""

    series: Optional[str] = Field(None, json_schema_extra={"example": "B"})
    rank: int = Field(2, ge=1)
    level: Literal["fast", "full"] = "fast"


class ClassifyRequest(BaseModel):
    """
    Request body for POST /classify.

    Attributes:
        series (str): B, C or D.
        rank (int): The rank n.
        kind (str): nontwisted or twisted.
        policy (str): laurent or rational.
        triple (Optional[str]): Restrict to one triple in the JSON encoding.
    """

    series: str = Field(..., json_schema_extra={"example": "D"})
    rank: int = Field(..., ge=1, json_schema_extra={"example": 4})
    kind: Literal["nontwisted", "twisted"] = "nontwisted"
    policy: Literal["laurent", "rational"] = "laurent"
    triple: Optional[str] = None


class TableRequest(BaseModel):
    """Request body for POST /table."""

    kind: Literal["nontwisted", "twisted"] = "nontwisted"
    min_rank: int = Field(2, ge=1)
    max_rank: int = Field(3, ge=1)
    policy: Literal["laurent", "rational"] = "laurent"
