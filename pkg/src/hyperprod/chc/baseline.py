"""Encodings without a product reduction, for comparison.

``seq`` runs the copies one after the other (self-composition). ``nocopies`` summarizes the
program once and states the property over k applications of the same summary. ``copies`` gives
every copy its own summary predicates and states the property over all of them.
"""

from enum import Enum
from itertools import product as cartesian
from typing import Dict, Hashable, List, Sequence

from hyperprod.chc.semantics import Frame, ProductSemantics
from hyperprod.chc.system import Application, ChcSystem
from hyperprod.chc.vpg import add_grammar_clauses, encode_vpg, predicate_names, query_clause
from hyperprod.core.exceptions import EncodingError
from hyperprod.core.logging import logger
from hyperprod.frontend.copies import copy_suffix
from hyperprod.frontend.property import HyperProperty
from hyperprod.vpl.dump import label
from hyperprod.vpl.vpg import Vpg, concat_vpg


class Baseline(str, Enum):
    SEQ = "seq"
    NO_COPIES = "nocopies"
    COPIES = "copies"


def _start_choices(grammars: Sequence[Vpg]) -> List[tuple]:
    return list(cartesian(*(sorted(g.starts, key=label) for g in grammars)))


def _query(system: ChcSystem, apps: List[Application], prop: HyperProperty, semantics: ProductSemantics) -> None:
    before, after = semantics.frame(0), semantics.frame(1)
    variables = semantics.declare(before) + semantics.declare(after)
    system.add(query_clause(apps, variables, prop, before, after))


def _sequential(grammars: Sequence[Vpg], prop: HyperProperty, semantics: ProductSemantics) -> ChcSystem:
    grammar = grammars[0]
    for following in grammars[1:]:
        grammar = concat_vpg(grammar, following)
    return encode_vpg(grammar, prop, semantics)


def _with_copies(grammars: Sequence[Vpg], prop: HyperProperty, semantics: ProductSemantics) -> ChcSystem:
    system = ChcSystem()
    names = predicate_names(
        [(i, symbol) for i, g in enumerate(grammars, start=1) for symbol in g.nonterminals], "sum"
    )
    local = []
    for i, grammar in enumerate(grammars, start=1):
        copy_semantics = ProductSemantics([semantics.signatures[i - 1]])
        copy_names = {symbol: names[(i, symbol)] for symbol in grammar.nonterminals}
        add_grammar_clauses(system, grammar, copy_semantics, copy_names)
        local.append((copy_semantics, copy_names))
    before, after = semantics.frame(0), semantics.frame(1)
    for starts in _start_choices(grammars):
        apps = [
            Application(copy_names[s], copy_semantics.args(before) + copy_semantics.args(after))
            for s, (copy_semantics, copy_names) in zip(starts, local)
        ]
        _query(system, apps, prop, semantics)
    return system


def _renamed(frame: Frame, names: Sequence[str], copy: int) -> tuple:
    """Symbols of copy ``copy`` for the copy-1 variable ``names``."""
    first = copy_suffix(1)
    symbols = []
    for name in names:
        if not name.endswith(first):
            raise EncodingError(f"Variable {name!r} does not belong to the first copy")
        other = name[: -len(first)] + copy_suffix(copy)
        if other not in frame:
            raise EncodingError(f"Copy {copy} has no variable {other!r}")
        symbols.append(frame[other])
    return tuple(symbols)


def _without_copies(grammars: Sequence[Vpg], prop: HyperProperty, semantics: ProductSemantics) -> ChcSystem:
    system = ChcSystem()
    grammar = grammars[0]
    single = ProductSemantics([semantics.signatures[0]])
    names: Dict[Hashable, str] = predicate_names(grammar.nonterminals, "sum")
    add_grammar_clauses(system, grammar, single, names)
    before, after = semantics.frame(0), semantics.frame(1)
    for starts in cartesian(*([sorted(grammar.starts, key=label)] * prop.k)):
        apps = [
            Application(names[s], _renamed(before, single.names, i) + _renamed(after, single.names, i))
            for i, s in enumerate(starts, start=1)
        ]
        _query(system, apps, prop, semantics)
    return system


def encode_baseline(
    variant: Baseline, grammars: Sequence[Vpg], prop: HyperProperty, semantics: ProductSemantics
) -> ChcSystem:
    """Encode the copies' grammars (component i at index i-1) without building a product."""
    variant = Baseline(variant)
    if len(grammars) != prop.k:
        raise EncodingError(f"{variant.value} needs one grammar per copy: {len(grammars)} given, k = {prop.k}")
    if variant is Baseline.SEQ:
        system = _sequential(grammars, prop, semantics)
    elif variant is Baseline.COPIES:
        system = _with_copies(grammars, prop, semantics)
    else:
        system = _without_copies(grammars, prop, semantics)
    system.validate()
    system.stats["baseline_copies"] = prop.k
    logger.debug(f"Baseline {variant.value}: {len(system.predicates)} predicates, {len(system.clauses)} clauses")
    return system
