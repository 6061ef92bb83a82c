"""Exception hierarchy. Every error carries the pipeline stage that raised it."""

from typing import Optional

EXIT_VERIFIED = 0
EXIT_REFUTED = 1
EXIT_UNKNOWN = 2
EXIT_USAGE = 3


class HyperprodError(Exception):
    """Base class for all library errors."""

    stage = "core"
    exit_code = EXIT_USAGE

    def __init__(self, message: str, *, stage: Optional[str] = None):
        super().__init__(message)
        self.message = message
        if stage is not None:
            self.stage = stage

    def __str__(self) -> str:
        return f"[{self.stage}] {self.message}"


class AlphabetError(HyperprodError):
    stage = "vpl"


class AutomatonError(HyperprodError):
    stage = "vpl"


class GrammarError(HyperprodError):
    stage = "vpl"


class OrderError(HyperprodError):
    stage = "orders"


class ReductionError(HyperprodError):
    stage = "reductions"


class ParseError(HyperprodError):
    """Syntax error in a program, property or reduction expression, with a 1-based position."""

    stage = "frontend"

    def __init__(
        self,
        message: str,
        line: int = 0,
        column: int = 0,
        *,
        stage: Optional[str] = None,
    ):
        self.line = line
        self.column = column
        where = f" at line {line}, column {column}" if line else ""
        super().__init__(f"{message}{where}", stage=stage)


class UndeclaredIdentifierError(ParseError):
    pass


class ProgramError(HyperprodError):
    """Well-formedness error of a parsed program (unknown callee, type clash, ...)."""

    stage = "frontend"


class PropertyError(HyperprodError):
    stage = "property"


class EncodingError(HyperprodError):
    stage = "chc"


class SolverError(HyperprodError):
    stage = "solver"
    exit_code = EXIT_UNKNOWN


class SolverNotFoundError(SolverError):
    exit_code = EXIT_USAGE


class ConfigError(HyperprodError):
    stage = "config"


class OracleCapExceeded(HyperprodError):
    stage = "oracle"


class IndependenceError(HyperprodError):
    stage = "concurrency"
