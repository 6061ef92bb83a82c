"""Evaluating a reduction expression over per-component inputs."""

from dataclasses import dataclass, field
from enum import Enum
from typing import FrozenSet, List, Mapping, Sequence, Union

from hyperprod.core.exceptions import ReductionError
from hyperprod.core.logging import logger
from hyperprod.orders.automaton import OrderAutomaton
from hyperprod.orders.canonical import concat_order, lockstep_order, nested_concat_order
from hyperprod.orders.exclude import exclude_letters, image_alphabet
from hyperprod.reductions.direct import lockstep_vpg, nested_concat_vpg
from hyperprod.reductions.expr import NodeKind, ReductionExpr
from hyperprod.reductions.optimized import build_optimized_product
from hyperprod.vpl.alphabet import Letter, VPAlphabet
from hyperprod.vpl.vpa import Vpa, restrict_well_matched, reverse_vpa
from hyperprod.vpl.vpg import Vpg, concat_vpg, reverse_vpg, vpa_to_vpg, vpg_to_vpa, vpg_trim, vpg_uniformize

Component = Union[Vpa, Vpg]


class Mode(str, Enum):
    """Aut: optimized automaton product. Vpg: the same, converted to a grammar. Direct: grammar rules."""

    AUT = "aut"
    VPG = "vpg"
    DIRECT = "direct"


@dataclass
class ProductBound:
    node: str
    states: int
    bound: int


@dataclass
class Evaluation:
    product: Component
    mode: Mode
    bounds: List[ProductBound] = field(default_factory=list)
    fallbacks: List[str] = field(default_factory=list)


def resolve_excluded(names: FrozenSet[str], alphabet: VPAlphabet) -> FrozenSet[Letter]:
    """Excluded names match letter ids, or the procedure of call and return letters (with or without
    the copy suffix)."""
    letters = set()
    for name in sorted(names):
        matched = [
            a
            for a in alphabet
            if a.id == name
            or (not a.is_internal and getattr(a.payload, "procedure", None) in (name, f"{name}_{a.component}"))
        ]
        if not matched:
            raise ReductionError(f"Excluded name {name!r} matches no call or return")
        letters.update(matched)
    return frozenset(letters)


def node_order(node: ReductionExpr, alphabet: VPAlphabet, groups: Sequence[FrozenSet[int]]) -> OrderAutomaton:
    """The order automaton of one canonical node, over the union of its children's alphabets."""
    if node.kind is NodeKind.CONCAT:
        return concat_order(alphabet, groups)
    if node.kind is NodeKind.NESTED_CONCAT:
        return nested_concat_order(alphabet, groups)
    if node.kind is NodeKind.LOCKSTEP:
        return lockstep_order(node.speeds, alphabet, groups)
    raise ReductionError(f"No order for a {node.kind.value} node")


class ReductionEvaluator:
    """Folds a reduction expression bottom-up into one product."""

    def __init__(self, inputs: Mapping[int, Component], mode: Mode = Mode.DIRECT):
        self.inputs = dict(inputs)
        self.mode = Mode(mode)
        self.bounds: List[ProductBound] = []
        self.fallbacks: List[str] = []
        for component, value in self.inputs.items():
            if any(a.component != component for a in value.alphabet):
                raise ReductionError(f"Input for component {component} uses letters of other components")

    # -- entry -----------------------------------------------------------------
    def evaluate(self, expr: ReductionExpr) -> Evaluation:
        expr.validate()
        expr.check_covers(self.inputs)
        logger.info(f"Evaluating {expr} in {self.mode.value} mode")
        if self.mode is Mode.DIRECT:
            product: Component = self._grammar(expr)
        else:
            product = self._automaton(expr)
            if self.mode is Mode.VPG:
                product = vpa_to_vpg(product)
        return Evaluation(product, self.mode, list(self.bounds), list(self.fallbacks))

    # -- automaton route ---------------------------------------------------------
    def _leaf_automaton(self, component: int) -> Vpa:
        value = self.inputs[component]
        return vpg_to_vpa(value) if isinstance(value, Vpg) else value

    def _automaton(self, node: ReductionExpr) -> Vpa:
        if node.is_leaf:
            return self._leaf_automaton(node.component)
        children = [self._automaton(child) for child in node.children]
        if node.right_aligned:
            mirrored = [reverse_vpa(child) for child in children]
            return restrict_well_matched(reverse_vpa(self._combine(node, mirrored), well_matched=False))
        return self._combine(node, children)

    def _combine(self, node: ReductionExpr, children: List[Vpa]) -> Vpa:
        alphabet = children[0].alphabet.disjoint_union(*(c.alphabet for c in children[1:]))
        groups = [frozenset(child.components()) for child in node.children]
        excluded = resolve_excluded(node.excluded, alphabet) if node.excluded else frozenset()
        if excluded:
            base = node_order(node, image_alphabet(alphabet, excluded), groups)
            order = exclude_letters(base, excluded, alphabet, children)
        else:
            order = node_order(node, alphabet, groups)
        build = build_optimized_product(order, *children, excluded=excluded)
        self.bounds.append(ProductBound(str(node), build.automaton.size, build.state_bound))
        return build.automaton

    # -- grammar route -----------------------------------------------------------
    def _grammar(self, node: ReductionExpr) -> Vpg:
        if node.is_leaf:
            value = self.inputs[node.component]
            return vpg_uniformize(vpg_trim(value if isinstance(value, Vpg) else vpa_to_vpg(value)))
        if node.excluded:
            logger.warning(f"{node} excludes letters; building it through the automaton route")
            self.fallbacks.append(str(node))
            return vpg_uniformize(vpa_to_vpg(self._automaton(node)))
        children = [self._grammar(child) for child in node.children]
        if node.right_aligned:
            mirrored = [vpg_uniformize(reverse_vpg(child)) for child in children]
            return vpg_uniformize(reverse_vpg(self._combine_grammars(node, mirrored)))
        return self._combine_grammars(node, children)

    @staticmethod
    def _combine_grammars(node: ReductionExpr, children: List[Vpg]) -> Vpg:
        if node.kind is NodeKind.CONCAT:
            result = children[0]
            for child in children[1:]:
                result = concat_vpg(result, child)
            return result
        if node.kind is NodeKind.NESTED_CONCAT:
            result = children[-1]
            for child in reversed(children[:-1]):
                result = vpg_uniformize(nested_concat_vpg(child, result))
            return result
        return vpg_uniformize(lockstep_vpg(node.speeds, *children))


def evaluate(expr: ReductionExpr, inputs: Mapping[int, Component], mode: Mode = Mode.DIRECT) -> Component:
    """Product of the inputs under ``expr``: a Vpa in Aut mode, a Vpg otherwise."""
    return ReductionEvaluator(inputs, mode).evaluate(expr).product
