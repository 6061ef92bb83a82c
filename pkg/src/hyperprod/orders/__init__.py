from hyperprod.orders.automaton import OrderAutomaton, clo_compare, constant_order
from hyperprod.orders.canonical import (
    STAR,
    check_speeds,
    concat_order,
    dec,
    lockstep_order,
    make_roundrobin_order,
    nested_concat_order,
    resolve_groups,
)
from hyperprod.orders.exclude import EXCLUDED_MARK, check_excluded, exclude_letters, image_alphabet
from hyperprod.orders.linear import Comparison, LinearOrder, PartialOrder, letter_key
from hyperprod.orders.repair import coherence_repair, last_pending_component
from hyperprod.orders.uniform import is_uniform

__all__ = [
    "Comparison",
    "EXCLUDED_MARK",
    "LinearOrder",
    "OrderAutomaton",
    "PartialOrder",
    "STAR",
    "check_excluded",
    "check_speeds",
    "clo_compare",
    "coherence_repair",
    "concat_order",
    "constant_order",
    "dec",
    "exclude_letters",
    "image_alphabet",
    "is_uniform",
    "last_pending_component",
    "letter_key",
    "lockstep_order",
    "make_roundrobin_order",
    "nested_concat_order",
    "resolve_groups",
]
