"""Application settings and configuration."""

from functools import lru_cache
from typing import Dict, Optional

from pydantic import Field, computed_field
from pydantic_settings import BaseSettings, SettingsConfigDict

DEFAULT_SOLVER_COMMANDS: Dict[str, str] = {
    "z3": "z3 -smt2 {file}",
    "eldarica": "eld {file}",
    "golem": "golem {file}",
}


class Settings(BaseSettings):
    """Settings loaded from environment variables and an optional .env file."""

    # Logging
    log_level: str = Field(default="INFO", alias="LOG_LEVEL")
    log_file: Optional[str] = Field(
        default=None,
        alias="HYPERPROD_LOG_FILE",
        description="Path of a rotating log file; console only when unset",
    )

    # Solvers
    # Store as string to avoid pydantic-settings JSON parsing issues
    solvers_raw: Optional[str] = Field(
        default=None,
        alias="HYPERPROD_SOLVERS",
        description="Semicolon-separated name=cmdline entries, e.g. 'z3=z3 -smt2 {file}'",
        exclude=True,
    )
    solver_timeout: int = Field(
        default=600,
        ge=1,
        le=86400,
        alias="HYPERPROD_TIMEOUT",
        description="Per-solver wall clock budget in seconds",
    )

    # Pipeline
    default_mode: str = Field(default="direct", alias="HYPERPROD_MODE")
    emit_dir: str = Field(default="out", alias="HYPERPROD_EMIT_DIR")

    # Bounded oracles
    oracle_max_len: int = Field(
        default=12,
        ge=0,
        le=24,
        alias="HYPERPROD_ORACLE_MAX_LEN",
        description="Default word length bound for enumeration (0-24)",
    )
    oracle_max_interleavings: int = Field(
        default=2_000_000,
        ge=1,
        alias="HYPERPROD_ORACLE_MAX_INTERLEAVINGS",
    )

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        populate_by_name=True,
        case_sensitive=False,
        env_ignore_empty=True,
        extra="ignore",
    )

    @computed_field
    @property
    def solver_commands(self) -> Dict[str, str]:
        """Known solver command lines, overridden by HYPERPROD_SOLVERS."""
        commands = dict(DEFAULT_SOLVER_COMMANDS)
        commands.update(self.parse_solver_commands(self.solvers_raw))
        return commands

    @staticmethod
    def parse_solver_commands(value) -> Dict[str, str]:
        """Parse 'name=cmdline' entries separated by semicolons."""
        if value is None or value == "":
            return {}
        if isinstance(value, dict):
            return dict(value)
        commands: Dict[str, str] = {}
        for entry in str(value).split(";"):
            entry = entry.strip()
            if not entry:
                continue
            name, sep, cmdline = entry.partition("=")
            if not sep or not name.strip() or not cmdline.strip():
                raise ValueError(f"Malformed solver entry: {entry!r} (expected name=cmdline)")
            commands[name.strip()] = cmdline.strip()
        return commands


@lru_cache()
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()
