"""Mini recursive language: parsing, compilation to grammars, copies and hyperproperties."""

from hyperprod.frontend.ast import Procedure, Program, Type
from hyperprod.frontend.compile import LetterFactory, entry_of, to_vpa, to_vpg
from hyperprod.frontend.copies import make_copies, rename_program
from hyperprod.frontend.parser import parse, parse_file
from hyperprod.frontend.printer import expr_str, pretty_print
from hyperprod.frontend.property import HyperProperty, evaluate_smt, load_property, parse_property
from hyperprod.frontend.semantics import (
    AssignStmt,
    AssumeStmt,
    CallLetter,
    ReturnLetter,
    StatementSemantics,
    StoreStmt,
)

__all__ = [
    "AssignStmt",
    "AssumeStmt",
    "CallLetter",
    "HyperProperty",
    "LetterFactory",
    "Procedure",
    "Program",
    "ReturnLetter",
    "StatementSemantics",
    "StoreStmt",
    "Type",
    "entry_of",
    "evaluate_smt",
    "expr_str",
    "load_property",
    "make_copies",
    "parse",
    "parse_file",
    "parse_property",
    "pretty_print",
    "rename_program",
    "to_vpa",
    "to_vpg",
]
