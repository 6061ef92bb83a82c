"""Running external CHC solvers on SMT-LIB files."""

import shlex
import shutil
import subprocess
import threading
import time
from concurrent.futures import FIRST_COMPLETED, ThreadPoolExecutor, wait
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Union

from hyperprod.core.exceptions import SolverError, SolverNotFoundError
from hyperprod.core.logging import logger
from hyperprod.models.verification import SolverOutcome, SolverStatus

STATUS_TOKENS = {"sat": SolverStatus.SAT, "unsat": SolverStatus.UNSAT, "unknown": SolverStatus.UNKNOWN}


def command_line(template: str, path: Union[str, Path]) -> List[str]:
    """Split a solver command template, substituting ``{file}`` (appended when absent)."""
    parts = shlex.split(template)
    if not parts:
        raise SolverError(f"Empty solver command {template!r}")
    if not any("{file}" in part for part in parts):
        parts.append("{file}")
    return [part.replace("{file}", str(path)) for part in parts]


def parse_status(output: str) -> Optional[SolverStatus]:
    """The first status token of the solver's output, if any."""
    for line in output.splitlines():
        token = line.strip()
        if token in STATUS_TOKENS:
            return STATUS_TOKENS[token]
    return None


class SolverRun:
    """One solver process, which another thread may cancel."""

    def __init__(self, name: str, template: str, path: Union[str, Path], timeout: float):
        self.name = name
        self.template = template
        self.argv = command_line(template, path)
        self.timeout = timeout
        self.process: Optional[subprocess.Popen] = None
        self.cancelled = threading.Event()
        self._lock = threading.Lock()

    def cancel(self) -> None:
        self.cancelled.set()
        with self._lock:
            if self.process is not None and self.process.poll() is None:
                self.process.kill()

    def run(self) -> SolverOutcome:
        if shutil.which(self.argv[0]) is None:
            raise SolverNotFoundError(f"Solver binary {self.argv[0]!r} for {self.name} is not on PATH")
        started = time.monotonic()
        logger.debug(f"Running {self.name}: {' '.join(self.argv)}")
        with self._lock:
            if self.cancelled.is_set():
                return self._outcome(SolverStatus.UNKNOWN, started, "cancelled")
            self.process = subprocess.Popen(
                self.argv, stdout=subprocess.PIPE, stderr=subprocess.STDOUT, text=True
            )
        try:
            output, _ = self.process.communicate(timeout=self.timeout)
        except subprocess.TimeoutExpired:
            self.process.kill()
            self.process.communicate()
            logger.warning(f"{self.name} timed out after {self.timeout}s")
            return self._outcome(SolverStatus.TIMEOUT, started)
        if self.cancelled.is_set():
            return self._outcome(SolverStatus.UNKNOWN, started, "cancelled")
        status = parse_status(output)
        if status is None:
            logger.error(f"{self.name} gave no status (exit code {self.process.returncode})")
            return self._outcome(SolverStatus.ERROR, started, output.strip())
        return self._outcome(status, started)

    def _outcome(self, status: SolverStatus, started: float, output: Optional[str] = None) -> SolverOutcome:
        elapsed = int((time.monotonic() - started) * 1000)
        return SolverOutcome(solver=self.name, command=self.template, status=status, elapsed_ms=elapsed, output=output)


def solve(path: Union[str, Path], name: str, template: str, timeout: float) -> SolverOutcome:
    outcome = SolverRun(name, template, path, timeout).run()
    logger.info(f"{name}: {outcome.status.value} in {outcome.elapsed_ms} ms")
    return outcome


def solve_portfolio(path: Union[str, Path], solvers: Mapping[str, str], timeout: float) -> List[SolverOutcome]:
    """Run all ``solvers`` in parallel; the first sat/unsat answer cancels the others.

    Solvers whose binary is missing are skipped with a warning. If none of them can be started,
    SolverNotFoundError is raised.
    """
    runs: Dict[str, SolverRun] = {}
    for name, template in solvers.items():
        run = SolverRun(name, template, path, timeout)
        if shutil.which(run.argv[0]) is None:
            logger.warning(f"Skipping {name}: {run.argv[0]!r} is not on PATH")
            continue
        runs[name] = run
    if not runs:
        raise SolverNotFoundError(f"None of the solvers {', '.join(solvers) or '(none)'} is available")

    outcomes: List[SolverOutcome] = []
    with ThreadPoolExecutor(max_workers=len(runs), thread_name_prefix="solver") as pool:
        pending = {pool.submit(run.run): name for name, run in runs.items()}
        while pending:
            done, _ = wait(pending, return_when=FIRST_COMPLETED)
            for future in done:
                name = pending.pop(future)
                outcome = future.result()
                outcomes.append(outcome)
                logger.info(f"{name}: {outcome.status.value} in {outcome.elapsed_ms} ms")
                if outcome.status.definitive:
                    for other in pending.values():
                        runs[other].cancel()
    return outcomes


def best_outcome(outcomes: List[SolverOutcome]) -> Optional[SolverOutcome]:
    """The first definitive outcome, else the first one."""
    for outcome in outcomes:
        if outcome.status.definitive:
            return outcome
    return outcomes[0] if outcomes else None
