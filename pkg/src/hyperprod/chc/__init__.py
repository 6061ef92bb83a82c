"""Constrained Horn clause encodings of product programs and the solver driver."""

from hyperprod.chc.baseline import Baseline, encode_baseline
from hyperprod.chc.nwa import encode_nwa, split_call_states
from hyperprod.chc.semantics import ComponentSignature, ProductSemantics
from hyperprod.chc.smtlib import emit_smtlib, to_smtlib
from hyperprod.chc.solver import best_outcome, solve, solve_portfolio
from hyperprod.chc.system import Application, ChcSystem, Clause
from hyperprod.chc.vpg import encode_vpg

__all__ = [
    "Application",
    "Baseline",
    "ChcSystem",
    "Clause",
    "ComponentSignature",
    "ProductSemantics",
    "best_outcome",
    "emit_smtlib",
    "encode_baseline",
    "encode_nwa",
    "encode_vpg",
    "solve",
    "solve_portfolio",
    "split_call_states",
    "to_smtlib",
]
