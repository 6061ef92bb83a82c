"""Brute-force reference implementations on bounded inputs."""

from hyperprod.oracle.interpreter import ProductInterpreter, StackMode, Valuation, interpret, valuation
from hyperprod.oracle.reference import is_reduction_of, minimal_members, ref_reduction
from hyperprod.oracle.shuffle import (
    EquivClass,
    classes,
    enumerate_shuffle,
    interleaving_count,
    projection_key,
    shuffle_languages,
    swap_closure,
)

__all__ = [
    "EquivClass",
    "ProductInterpreter",
    "StackMode",
    "Valuation",
    "classes",
    "enumerate_shuffle",
    "interleaving_count",
    "interpret",
    "is_reduction_of",
    "minimal_members",
    "projection_key",
    "ref_reduction",
    "shuffle_languages",
    "swap_closure",
    "valuation",
]
