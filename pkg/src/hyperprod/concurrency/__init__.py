"""Independence checks deciding when the well-nested shuffle is a sound sequentialization."""

from hyperprod.concurrency.annotations import load_annotation, parse_annotation
from hyperprod.concurrency.independence import (
    HEAD,
    NONE,
    TAIL,
    IndependenceSpec,
    head_violation,
    independence_split,
    is_head_independent,
    is_tail_independent,
    max_head_independent_vpa,
    max_tail_independent_vpa,
    tail_violation,
    wn_shuffle_soundness_report,
)

__all__ = [
    "HEAD",
    "NONE",
    "TAIL",
    "IndependenceSpec",
    "head_violation",
    "independence_split",
    "is_head_independent",
    "is_tail_independent",
    "load_annotation",
    "max_head_independent_vpa",
    "max_tail_independent_vpa",
    "parse_annotation",
    "tail_violation",
    "wn_shuffle_soundness_report",
]
