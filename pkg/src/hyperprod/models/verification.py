"""Data models for verification runs and their reports."""

from datetime import datetime
from enum import Enum
from typing import Dict, List, Optional

from pydantic import BaseModel, Field, computed_field, field_validator

from hyperprod.core.exceptions import EXIT_REFUTED, EXIT_UNKNOWN, EXIT_USAGE, EXIT_VERIFIED

REPORT_SCHEMA_VERSION = "1"
PRODUCT_MODES = ("aut", "vpg", "direct")
BASELINE_PREFIX = "baseline:"


class SolverStatus(str, Enum):
    SAT = "sat"
    UNSAT = "unsat"
    UNKNOWN = "unknown"
    TIMEOUT = "timeout"
    ERROR = "error"

    @property
    def definitive(self) -> bool:
        return self in (SolverStatus.SAT, SolverStatus.UNSAT)


class Verdict(str, Enum):
    VERIFIED = "verified"
    REFUTED = "refuted"
    UNKNOWN = "unknown"

    @classmethod
    def from_status(cls, status: SolverStatus) -> "Verdict":
        """A satisfiable system has a model, i.e. inductive invariants proving the property."""
        if status is SolverStatus.SAT:
            return cls.VERIFIED
        if status is SolverStatus.UNSAT:
            return cls.REFUTED
        return cls.UNKNOWN


class SolverOutcome(BaseModel):
    solver: str
    command: str
    status: SolverStatus
    elapsed_ms: int = 0
    output: Optional[str] = Field(None, description="Solver output when the status could not be parsed")


class RunConfig(BaseModel):
    """One verification run, as given on the command line."""

    source: str
    hyperproperty: str = Field(description="Property file path or inline text")
    reduction: Optional[str] = None
    mode: str = "direct"
    entries: Dict[int, str] = Field(default_factory=dict)
    solvers: Dict[str, str] = Field(default_factory=dict)
    timeout: int = Field(600, ge=1)
    emit_dir: str = "out"
    solve: bool = True

    @field_validator("mode")
    @classmethod
    def check_mode(cls, value: str) -> str:
        value = value.strip().lower()
        if value in PRODUCT_MODES:
            return value
        if value.startswith(BASELINE_PREFIX) and value[len(BASELINE_PREFIX):] in ("seq", "nocopies", "copies"):
            return value
        raise ValueError(f"mode must be aut, vpg, direct or baseline:seq|nocopies|copies, got {value!r}")

    @property
    def baseline(self) -> Optional[str]:
        return self.mode[len(BASELINE_PREFIX):] if self.mode.startswith(BASELINE_PREFIX) else None


class ProductBoundRecord(BaseModel):
    node: str
    states: int
    bound: int

    @computed_field
    @property
    def within_bound(self) -> bool:
        return self.states <= self.bound


class ProductSizes(BaseModel):
    states: Optional[int] = None
    transitions: Optional[int] = None
    nonterminals: Optional[int] = None
    productions: Optional[int] = None
    predicates: int = 0
    clauses: int = 0
    split_states: int = 0


class VerificationReport(BaseModel):
    schema_version: str = REPORT_SCHEMA_VERSION
    verdict: Verdict = Verdict.UNKNOWN
    mode: str
    reduction: Optional[str] = None
    sizes: ProductSizes = Field(default_factory=ProductSizes)
    bounds: List[ProductBoundRecord] = Field(default_factory=list)
    fallbacks: List[str] = Field(default_factory=list)
    solver_outcomes: List[SolverOutcome] = Field(default_factory=list)
    artifacts: Dict[str, str] = Field(default_factory=dict)
    started_at: datetime = Field(default_factory=datetime.now)
    wall_ms: int = 0
    error: Optional[str] = None
    stage: Optional[str] = None
    error_exit_code: Optional[int] = Field(None, exclude=True)

    @computed_field
    @property
    def exit_code(self) -> int:
        if self.error is not None:
            return self.error_exit_code if self.error_exit_code is not None else EXIT_USAGE
        if self.verdict is Verdict.VERIFIED:
            return EXIT_VERIFIED
        if self.verdict is Verdict.REFUTED:
            return EXIT_REFUTED
        return EXIT_UNKNOWN


class ComponentIndependence(BaseModel):
    component: int
    tail: bool
    head: bool
    tail_witness: Optional[List[str]] = None
    head_witness: Optional[List[str]] = None


class IndependenceReport(BaseModel):
    sound: bool
    direction: str = Field(description="tail, head or none")
    components: List[ComponentIndependence] = Field(default_factory=list)
