"""Verification service: program and hyperproperty in, verdict and artifacts out."""

import time
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Tuple, Union

from hyperprod.chc.baseline import Baseline, encode_baseline
from hyperprod.chc.nwa import encode_nwa
from hyperprod.chc.semantics import ProductSemantics
from hyperprod.chc.smtlib import emit_smtlib
from hyperprod.chc.solver import best_outcome, solve_portfolio
from hyperprod.chc.system import ChcSystem
from hyperprod.chc.vpg import encode_vpg
from hyperprod.cli.reduction_parser import lockstep_default, parse_reduction_expr
from hyperprod.config.settings import Settings, get_settings
from hyperprod.core.exceptions import ConfigError, HyperprodError
from hyperprod.core.logging import logger
from hyperprod.frontend.ast import Program
from hyperprod.frontend.compile import entry_of, to_vpg
from hyperprod.frontend.copies import copy_suffix, make_copies
from hyperprod.frontend.parser import parse_file
from hyperprod.frontend.property import HyperProperty, load_property
from hyperprod.models.verification import (
    ProductBoundRecord,
    ProductSizes,
    RunConfig,
    Verdict,
    VerificationReport,
)
from hyperprod.reductions.evaluate import Evaluation, Mode, ReductionEvaluator
from hyperprod.reductions.expr import ReductionExpr
from hyperprod.vpl.dump import dump_vpa, dump_vpg
from hyperprod.vpl.vpa import Vpa
from hyperprod.vpl.vpg import Vpg

PRODUCT_FILE = "product.txt"
SMTLIB_FILE = "product.smt2"
REPORT_FILE = "report.json"


def resolve_entry(program: Program, copy: Program, component: int, requested: Optional[str]) -> str:
    """Entry procedure of copy ``component``: the requested name (with or without the copy suffix),
    else the first procedure."""
    suffix = copy_suffix(component)
    if requested is not None and requested.endswith(suffix) and requested in copy:
        return requested
    return entry_of(copy, None if requested is None else entry_of(program, requested) + suffix)


def compile_grammars(program: Program, k: int, entries: Mapping[int, str]) -> Tuple[List[Program], List[Vpg]]:
    """Copies 1..k of ``program`` and the grammar of each copy's entry procedure, wrapped in its call."""
    unknown = sorted(i for i in entries if not 1 <= i <= k)
    if unknown:
        raise ConfigError(f"Entries given for component(s) {unknown}, but there are {k} copies")
    copies = make_copies(program, k)
    grammars = [
        to_vpg(copy, resolve_entry(program, copy, i, entries.get(i)), component=i, wrap_entry=True)
        for i, copy in enumerate(copies, start=1)
    ]
    return copies, grammars


def parse_reduction(text: Optional[str], k: int) -> ReductionExpr:
    """The given reduction expression, or the (1,...,1)-lockstep of the k copies."""
    return parse_reduction_expr(text) if text else lockstep_default(k)


def product_sizes(product: Union[Vpa, Vpg], system: ChcSystem) -> ProductSizes:
    sizes = ProductSizes(
        predicates=len(system.predicates),
        clauses=len(system.clauses),
        split_states=system.stats.get("split_states", 0),
    )
    if isinstance(product, Vpa):
        sizes.states = product.size
        sizes.transitions = product.transition_count
    else:
        sizes.nonterminals = len(product.nonterminals)
        sizes.productions = len(product.productions)
    return sizes


class VerificationPipeline:
    """Runs one verification: compile the copies, build the product, encode, emit and solve."""

    def __init__(self, config: RunConfig, settings: Optional[Settings] = None):
        self.config = config
        self.settings = settings or get_settings()
        self.emit_dir = Path(config.emit_dir)
        self.semantics: Optional[ProductSemantics] = None

    # -- stages ----------------------------------------------------------------------
    def compile_copies(self, prop: HyperProperty) -> List[Vpg]:
        program = parse_file(self.config.source)
        copies, grammars = compile_grammars(program, prop.k, self.config.entries)
        self.semantics = ProductSemantics.for_programs(copies)
        prop.validate(self.semantics.names)
        logger.info(f"Compiled {prop.k} cop{'y' if prop.k == 1 else 'ies'} of {Path(self.config.source).name}")
        return grammars

    def encode(self, grammars: List[Vpg], prop: HyperProperty, report: VerificationReport) -> ChcSystem:
        if self.config.baseline is not None:
            if self.config.reduction:
                logger.warning(f"Baseline {self.config.baseline} ignores the reduction {self.config.reduction!r}")
            system = encode_baseline(Baseline(self.config.baseline), grammars, prop, self.semantics)
            report.sizes = ProductSizes(
                nonterminals=sum(len(g.nonterminals) for g in grammars),
                productions=sum(len(g.productions) for g in grammars),
                predicates=len(system.predicates),
                clauses=len(system.clauses),
            )
            self.write("product", PRODUCT_FILE, "".join(dump_vpg(g) for g in grammars), report)
            return system

        expr = parse_reduction(self.config.reduction, prop.k)
        report.reduction = str(expr)
        evaluation: Evaluation = ReductionEvaluator(dict(enumerate(grammars, start=1)), Mode(self.config.mode)).evaluate(expr)
        product = evaluation.product
        if isinstance(product, Vpa):
            system = encode_nwa(product, prop, self.semantics)
            self.write("product", PRODUCT_FILE, dump_vpa(product), report)
        else:
            system = encode_vpg(product, prop, self.semantics)
            self.write("product", PRODUCT_FILE, dump_vpg(product), report)
        report.sizes = product_sizes(product, system)
        report.bounds = [ProductBoundRecord(node=b.node, states=b.states, bound=b.bound) for b in evaluation.bounds]
        report.fallbacks = list(evaluation.fallbacks)
        return system

    def solve(self, path: Path, report: VerificationReport) -> None:
        solvers: Dict[str, str] = self.config.solvers or self.settings.solver_commands
        outcomes = solve_portfolio(path, solvers, self.config.timeout)
        report.solver_outcomes = outcomes
        best = best_outcome(outcomes)
        report.verdict = Verdict.from_status(best.status) if best else Verdict.UNKNOWN
        logger.info(f"Verdict: {report.verdict.value}")

    def write(self, key: str, name: str, text: str, report: VerificationReport) -> Path:
        path = self.emit_dir / name
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
        report.artifacts[key] = str(path)
        return path

    # -- entry -----------------------------------------------------------------------
    def run(self) -> VerificationReport:
        report = VerificationReport(mode=self.config.mode, reduction=self.config.reduction)
        started = time.monotonic()
        try:
            prop = load_property(self.config.hyperproperty)
            grammars = self.compile_copies(prop)
            system = self.encode(grammars, prop, report)
            smt_path = self.emit_dir / SMTLIB_FILE
            emit_smtlib(system, smt_path)
            report.artifacts["smtlib"] = str(smt_path)
            if self.config.solve:
                self.solve(smt_path, report)
        except HyperprodError as e:
            logger.error(f"Verification failed in the {e.stage} stage: {e.message}")
            report.error = e.message
            report.stage = e.stage
            report.error_exit_code = e.exit_code
        except OSError as e:
            logger.error(f"Could not write artifacts: {e}")
            report.error = str(e)
            report.stage = "io"
        report.wall_ms = int((time.monotonic() - started) * 1000)
        self.write_report(report)
        return report

    def write_report(self, report: VerificationReport) -> None:
        path = self.emit_dir / REPORT_FILE
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            report.artifacts["report"] = str(path)
            path.write_text(report.model_dump_json(indent=2), encoding="utf-8")
            logger.debug(f"Wrote report to {path}")
        except OSError as e:
            logger.error(f"Could not write the report to {path}: {e}")


def run(config: RunConfig, settings: Optional[Settings] = None) -> VerificationReport:
    return VerificationPipeline(config, settings).run()
