"""Unit tests for run configurations and reports."""

import json

import pytest
from pydantic import ValidationError

from hyperprod.core.exceptions import EXIT_REFUTED, EXIT_UNKNOWN, EXIT_USAGE, EXIT_VERIFIED
from hyperprod.models.verification import (
    ProductBoundRecord,
    RunConfig,
    SolverStatus,
    Verdict,
    VerificationReport,
)


class TestRunConfig:
    """Unit tests for RunConfig."""

    def test_modes(self):
        """Product modes and baselines are accepted, case-insensitively."""
        assert RunConfig(source="p.rp", hyperproperty="post: true", mode="AUT").mode == "aut"
        config = RunConfig(source="p.rp", hyperproperty="post: true", mode="baseline:seq")
        assert config.baseline == "seq"
        assert RunConfig(source="p.rp", hyperproperty="post: true").baseline is None

    def test_invalid_mode(self):
        with pytest.raises(ValidationError):
            RunConfig(source="p.rp", hyperproperty="post: true", mode="baseline:parallel")
        with pytest.raises(ValidationError):
            RunConfig(source="p.rp", hyperproperty="post: true", mode="fast")

    def test_timeout(self):
        """Timeouts are positive."""
        with pytest.raises(ValidationError):
            RunConfig(source="p.rp", hyperproperty="post: true", timeout=0)


class TestVerificationReport:
    """Unit tests for VerificationReport."""

    def test_exit_codes(self):
        """The verdict decides the exit code unless an error occurred."""
        assert VerificationReport(mode="direct", verdict=Verdict.VERIFIED).exit_code == EXIT_VERIFIED
        assert VerificationReport(mode="direct", verdict=Verdict.REFUTED).exit_code == EXIT_REFUTED
        assert VerificationReport(mode="direct").exit_code == EXIT_UNKNOWN
        assert VerificationReport(mode="direct", error="boom").exit_code == EXIT_USAGE
        assert VerificationReport(mode="direct", error="boom", error_exit_code=2).exit_code == 2

    def test_json(self):
        """The JSON report carries computed fields and leaves out internals."""
        report = VerificationReport(
            mode="aut",
            verdict=Verdict.VERIFIED,
            bounds=[ProductBoundRecord(node="(1,1)-lockstep(P1, P2)", states=12, bound=16)],
            error_exit_code=0,
        )
        data = json.loads(report.model_dump_json())
        assert data["exit_code"] == 0
        assert data["verdict"] == "verified"
        assert data["schema_version"] == "1"
        assert data["bounds"][0]["within_bound"] is True
        assert "error_exit_code" not in data

    def test_bound_exceeded(self):
        assert not ProductBoundRecord(node="P1", states=5, bound=4).within_bound


class TestSolverStatus:
    """Unit tests for SolverStatus."""

    def test_definitive(self):
        assert SolverStatus.SAT.definitive
        assert SolverStatus.UNSAT.definitive
        assert not SolverStatus.TIMEOUT.definitive
        assert not SolverStatus.ERROR.definitive
