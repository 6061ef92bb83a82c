from hyperprod.reductions.direct import lockstep_vpg, nested_concat_vpg
from hyperprod.reductions.evaluate import Evaluation, Mode, ReductionEvaluator, evaluate, resolve_excluded
from hyperprod.reductions.expr import NodeKind, ReductionExpr, right_align
from hyperprod.reductions.optimized import build_optimized_product, normalize_component, optimized_product
from hyperprod.reductions.sleepset import generic_lex_reduction, sleepset_vpa
from hyperprod.reductions.words import (
    concat_words,
    lockstep_words,
    nested_concat_words,
    right_aligned,
    split_block,
)

__all__ = [
    "Evaluation",
    "Mode",
    "NodeKind",
    "ReductionEvaluator",
    "ReductionExpr",
    "build_optimized_product",
    "concat_words",
    "evaluate",
    "generic_lex_reduction",
    "lockstep_vpg",
    "lockstep_words",
    "nested_concat_vpg",
    "nested_concat_words",
    "normalize_component",
    "optimized_product",
    "resolve_excluded",
    "right_align",
    "right_aligned",
    "sleepset_vpa",
    "split_block",
]
