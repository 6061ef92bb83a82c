"""Integration tests running real CHC solvers on the generated Horn clauses."""

import shutil

import pytest
from dotenv import load_dotenv

from hyperprod.chc.nwa import encode_nwa
from hyperprod.chc.smtlib import emit_smtlib
from hyperprod.chc.solver import best_outcome, solve_portfolio
from hyperprod.config.settings import get_settings
from hyperprod.core.logging import logger
from hyperprod.models.verification import RunConfig, SolverStatus, Verdict
from hyperprod.services.verification import VerificationPipeline
from tests.fixtures.encodings import two_branches_automaton
from tests.fixtures.programs import (
    DIV_DISTRIBUTIVE,
    DIV_DISTRIBUTIVE_REDUCTION,
    DIV_MONOTONE,
    DIV_SCALING,
    DIV_SCALING_REDUCTION,
    DIV_SOURCE,
    FIB_DETERMINISTIC,
    FIB_SOURCE,
)

load_dotenv()

# Mark all tests in this module as integration tests
pytestmark = pytest.mark.integration

TIMEOUT = 120


@pytest.fixture(scope="module")
def solvers():
    """Configured solvers whose binaries are on PATH."""
    available = {
        name: cmdline
        for name, cmdline in get_settings().solver_commands.items()
        if shutil.which(cmdline.split()[0])
    }
    if not available:
        pytest.skip("No CHC solver (z3, eld, golem) on PATH")
    logger.info(f"Integration solvers: {', '.join(sorted(available))}")
    return available


def verify(tmp_path, source: str, prop: str, solvers, mode: str = "direct", reduction=None):
    program = tmp_path / "program.rp"
    program.write_text(source, encoding="utf-8")
    config = RunConfig(
        source=str(program),
        hyperproperty=prop,
        mode=mode,
        reduction=reduction,
        solvers=solvers,
        timeout=TIMEOUT,
        emit_dir=str(tmp_path / "out"),
    )
    report = VerificationPipeline(config).run()
    assert report.error is None, report.error
    return report


class TestSoundAnswers:
    """A solver may give up, but it never contradicts the ground truth."""

    def test_div_strict_is_refuted(self, tmp_path, solvers):
        """Equal inputs cannot give strictly ordered quotients."""
        prop = "copies: 2\npre: (and (= n_1 n_2) (= d_1 d_2) (> d_1 0))\npost: (< q_1 q_2)"
        report = verify(tmp_path, DIV_SOURCE, prop, solvers)
        assert report.verdict is not Verdict.VERIFIED

    def test_fib_deterministic_baseline(self, tmp_path, solvers):
        """Baselines answer the same question without a product."""
        report = verify(tmp_path, FIB_SOURCE, FIB_DETERMINISTIC, solvers, mode="baseline:copies")
        assert report.verdict is not Verdict.REFUTED

    def test_div_with_explicit_reduction(self, tmp_path, solvers):
        report = verify(tmp_path, DIV_SOURCE, DIV_MONOTONE, solvers, reduction="(2,1)-lockstep(P1, P2)")
        assert report.verdict is not Verdict.REFUTED
        assert report.reduction == "(2,1)-lockstep(P1, P2)"


class TestVerifiedDiv:
    """The div properties are proved with their reductions."""

    @pytest.mark.parametrize("mode", ["direct", "vpg", "aut"])
    def test_monotone(self, tmp_path, solvers, mode):
        """Integer division is monotone in the dividend under the default lockstep."""
        report = verify(tmp_path, DIV_SOURCE, DIV_MONOTONE, solvers, mode)
        assert report.verdict is Verdict.VERIFIED

    @pytest.mark.parametrize("mode", ["direct", "aut"])
    def test_scaling(self, tmp_path, solvers, mode):
        """Doubling the dividend at least doubles the quotient; the first copy runs twice as fast."""
        report = verify(tmp_path, DIV_SOURCE, DIV_SCALING, solvers, mode, reduction=DIV_SCALING_REDUCTION)
        assert report.verdict is Verdict.VERIFIED
        assert report.reduction == DIV_SCALING_REDUCTION

    @pytest.mark.parametrize("mode", ["direct", "vpg", "aut"])
    def test_distributivity(self, tmp_path, solvers, mode):
        """The third copy runs in lockstep with the first two nested one inside the other."""
        report = verify(tmp_path, DIV_SOURCE, DIV_DISTRIBUTIVE, solvers, mode, reduction=DIV_DISTRIBUTIVE_REDUCTION)
        assert report.verdict is Verdict.VERIFIED


class TestReturnAddress:
    """Without the return address a return may pick up the callee facts of another call state."""

    def solve(self, tmp_path, solvers, ghost: bool) -> SolverStatus:
        automaton, prop, semantics = two_branches_automaton()
        path = tmp_path / f"ghost_{ghost}.smt2"
        emit_smtlib(encode_nwa(automaton, prop, semantics, ghost=ghost), path)
        outcome = best_outcome(solve_portfolio(path, solvers, TIMEOUT))
        return outcome.status

    def test_with_address_verified(self, tmp_path, solvers):
        assert self.solve(tmp_path, solvers, ghost=True) is SolverStatus.SAT

    def test_without_address_refuted(self, tmp_path, solvers):
        assert self.solve(tmp_path, solvers, ghost=False) is SolverStatus.UNSAT
