"""Unit tests for the command line interface."""

import json
import os
from unittest.mock import patch

import pytest
from click.testing import CliRunner

from hyperprod.cli.main import cli, parse_entries, parse_solvers
from hyperprod.config.settings import Settings
from hyperprod.core.exceptions import ConfigError
from hyperprod.core.logging import setup_logging
from hyperprod.models.verification import SolverOutcome, SolverStatus
from tests.fixtures.programs import COUNTDOWN_DEPENDENT_DECREMENT, COUNTDOWN_SOURCE, DIV_MONOTONE_INLINE, DIV_SOURCE


@pytest.fixture
def runner():
    with patch.dict(os.environ, {}, clear=True):
        yield CliRunner()
    # the command rebinds the console sink to the runner's stream
    setup_logging("WARNING")


def invoke(runner, *args):
    return runner.invoke(cli, ["--log-level", "ERROR", *args])


class TestOptionParsing:
    """Unit tests for option helpers."""

    def test_parse_entries(self):
        assert parse_entries(["1=div", "2=h"]) == {1: "div", 2: "h"}
        for bad in (["div"], ["x=div"], ["1="], ["1=f", "1=g"]):
            with pytest.raises(ConfigError):
                parse_entries(bad)

    def test_parse_solvers(self):
        """Bare names refer to configured solvers."""
        settings = Settings.model_construct(solvers_raw=None)
        assert parse_solvers(["z3"], settings) == {"z3": "z3 -smt2 {file}"}
        assert parse_solvers(["mine=z3 {file}"], settings) == {"mine": "z3 {file}"}
        with pytest.raises(ConfigError):
            parse_solvers(["cvc5"], settings)


class TestVerifyCommand:
    """Unit tests for `hyperprod verify`."""

    def test_no_solve(self, runner, write_source, tmp_path):
        """Without solving, the product, the Horn clauses and the report are written."""
        out = tmp_path / "out"
        result = invoke(
            runner, "verify", str(write_source(DIV_SOURCE)), "--property", DIV_MONOTONE_INLINE,
            "--emit-dir", str(out), "--no-solve",
        )
        assert result.exit_code == 0
        assert f"wrote {out / 'product.smt2'}" in result.output
        assert (out / "product.txt").exists()
        assert "(set-logic HORN)" in (out / "product.smt2").read_text(encoding="utf-8")
        report = json.loads((out / "report.json").read_text(encoding="utf-8"))
        assert report["reduction"] == "(1,1)-lockstep(P1, P2)"
        assert report["mode"] == "direct"
        assert report["sizes"]["clauses"] > 0

    def test_malformed_reduction(self, runner, write_source, tmp_path):
        """A reduction that does not parse is a usage error with its position."""
        result = invoke(
            runner, "verify", str(write_source(DIV_SOURCE)), "--property", DIV_MONOTONE_INLINE,
            "--reduction", "lockstep(P1,", "--emit-dir", str(tmp_path), "--no-solve",
        )
        assert result.exit_code == 3
        assert "column" in result.output

    def test_property_mismatch(self, runner, write_source, tmp_path):
        """Property variables must exist in the copies."""
        result = invoke(
            runner, "verify", str(write_source(DIV_SOURCE)), "--property", "post: (= r_1 r_2)",
            "--emit-dir", str(tmp_path), "--no-solve",
        )
        assert result.exit_code == 3
        assert "error [property]" in result.output

    def test_invalid_mode(self, runner, write_source, tmp_path):
        result = invoke(
            runner, "verify", str(write_source(DIV_SOURCE)), "--property", DIV_MONOTONE_INLINE,
            "--mode", "sideways", "--emit-dir", str(tmp_path),
        )
        assert result.exit_code == 3

    def test_missing_source(self, runner, tmp_path):
        """Click usage errors also exit with 3."""
        result = invoke(runner, "verify", str(tmp_path / "nope.rp"), "--property", DIV_MONOTONE_INLINE)
        assert result.exit_code == 3

    @patch("hyperprod.services.verification.solve_portfolio")
    def test_verdict(self, mock_solve, runner, write_source, tmp_path):
        """The first definitive solver answer decides the verdict and the exit code."""
        mock_solve.return_value = [
            SolverOutcome(solver="z3", command="z3 -smt2 {file}", status=SolverStatus.SAT, elapsed_ms=5)
        ]
        result = invoke(
            runner, "verify", str(write_source(DIV_SOURCE)), "--property", DIV_MONOTONE_INLINE,
            "--solver", "z3", "--emit-dir", str(tmp_path),
        )
        assert result.exit_code == 0
        assert "verified" in result.output
        assert mock_solve.call_args[0][1] == {"z3": "z3 -smt2 {file}"}

    @patch("hyperprod.services.verification.solve_portfolio")
    def test_refuted(self, mock_solve, runner, write_source, tmp_path):
        mock_solve.return_value = [SolverOutcome(solver="z3", command="z3", status=SolverStatus.UNSAT)]
        result = invoke(
            runner, "verify", str(write_source(DIV_SOURCE)), "--property", DIV_MONOTONE_INLINE,
            "--mode", "aut", "--emit-dir", str(tmp_path),
        )
        assert result.exit_code == 1
        assert "refuted" in result.output


class TestCheckIndependenceCommand:
    """Unit tests for `hyperprod check-independence`."""

    def test_sound(self, runner, write_source, tmp_path):
        """Exit 0 and a JSON report when the shuffle is sound."""
        annotation = tmp_path / "dep.json"
        annotation.write_text(json.dumps(COUNTDOWN_DEPENDENT_DECREMENT), encoding="utf-8")
        result = invoke(
            runner, "check-independence", str(write_source(COUNTDOWN_SOURCE)), "--annotation", str(annotation),
            "--entry", "1=count", "--entry", "2=count",
        )
        assert result.exit_code == 0
        assert '"direction": "tail"' in result.output

    def test_bad_entry(self, runner, write_source):
        result = invoke(runner, "check-independence", str(write_source(DIV_SOURCE)), "--entry", "one=div")
        assert result.exit_code == 3


class TestDebugCommands:
    """Unit tests for `hyperprod debug`."""

    def test_enumerate(self, runner, write_source):
        """The shortest run of the wrapped entry procedure."""
        result = invoke(runner, "debug", "enumerate", str(write_source(DIV_SOURCE)), "--max-len", "4")
        assert result.exit_code == 0
        assert "call div_1(n_1, d_1) · assume n_1 < d_1 · q_1 := 0 · ret q_1 := div_1" in result.output

    def test_enumerate_product(self, runner, write_source):
        """Products of copies are enumerated through a reduction."""
        result = invoke(
            runner, "debug", "enumerate", str(write_source(DIV_SOURCE)), "--copies", "2",
            "--reduction", "concat(P1, P2)", "--max-len", "8",
        )
        assert result.exit_code == 0
        assert "call div_1(n_1, d_1) · assume n_1 < d_1 · q_1 := 0 · ret q_1 := div_1 · call div_2(n_2, d_2)" in result.output

    def test_dump(self, runner, write_source):
        result = invoke(runner, "debug", "dump", str(write_source(DIV_SOURCE)), "--mode", "aut")
        assert result.exit_code == 0
        assert result.output.startswith("# vpg")

    def test_unknown_entry(self, runner, write_source):
        result = invoke(runner, "debug", "dump", str(write_source(DIV_SOURCE)), "--entry", "1=mult")
        assert result.exit_code == 3
