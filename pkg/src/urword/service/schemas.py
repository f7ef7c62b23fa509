"""Request/response models for the verification service."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field, model_validator

from ..families import ParameterFamily, parse_family
from ..suite import CHECK_NAMES, SuiteParams


class FamilyModel(BaseModel):
    kind: Literal["paper", "paper_star", "custom"] = "paper_star"
    l: Optional[list[int]] = None
    m: Optional[list[int]] = None
    n: Optional[list[int]] = None

    @model_validator(mode="after")
    def _tables_for_custom(self):
        if self.kind == "custom":
            if self.l is None or self.m is None or self.n is None:
                raise ValueError("custom family needs l, m and n tables")
        return self

    def to_family(self) -> ParameterFamily:
        if self.kind in ("paper", "paper_star"):
            return parse_family({"kind": "paper_star"})
        return parse_family({"kind": "custom", "l": self.l, "m": self.m, "n": self.n})


class SuiteParamsModel(BaseModel):
    """Optional overrides; anything unset falls back to the suite defaults."""

    max_rank: Optional[int] = None
    ordering_rank: Optional[int] = None
    closed_form_rank: Optional[int] = None
    liminf_rank: Optional[int] = None
    complexity_samples: Optional[int] = None
    complexity_limit: Optional[int] = None
    prop_samples: Optional[int] = None
    prop_levels: Optional[int] = None
    sync_words: Optional[int] = None
    sync_max_level: Optional[int] = None
    recurrence_budget: Optional[int] = None
    oracle_prefix: Optional[int] = None
    oracle_max_n: Optional[int] = None
    seed: Optional[int] = None

    def to_params(self) -> SuiteParams:
        overrides = {k: v for k, v in self.model_dump().items() if v is not None}
        return SuiteParams(**overrides)


class VerifyRequest(BaseModel):
    family: FamilyModel = Field(default_factory=FamilyModel)
    checks: Optional[list[str]] = None
    params: SuiteParamsModel = Field(default_factory=SuiteParamsModel)

    @model_validator(mode="after")
    def _known_checks(self):
        if self.checks is not None:
            unknown = set(self.checks) - set(CHECK_NAMES)
            if unknown:
                raise ValueError(f"unknown checks: {sorted(unknown)}")
        return self


class HypothesisRequest(BaseModel):
    family: FamilyModel = Field(default_factory=FamilyModel)
    max_level: int = 8


class GenerateRequest(BaseModel):
    family: FamilyModel = Field(default_factory=FamilyModel)
    which: Literal["u", "v", "prefix"]
    level: int = 0
    rank: Optional[int] = None
    length: Optional[int] = None

    @model_validator(mode="after")
    def _rank_or_length(self):
        if self.which == "prefix":
            if self.length is None:
                raise ValueError("prefix generation needs a length")
        elif self.rank is None:
            raise ValueError("u/v generation needs a rank")
        return self


class ParikhModel(BaseModel):
    zeros: str
    ones: str


class GenerateResponse(BaseModel):
    which: str
    level: int
    rank: Optional[int]
    length: int
    parikh: ParikhModel
    word01: str


class ReportRequest(BaseModel):
    family: FamilyModel = Field(default_factory=FamilyModel)
    kind: Literal["complexity", "bispecial", "frequency", "recurrence"]
    n_max: int = 200
    rank_max: int = 8
    oracle_prefix: Optional[int] = None
    check_budget: int = 1 << 22


class HealthResponse(BaseModel):
    status: str
    version: str
