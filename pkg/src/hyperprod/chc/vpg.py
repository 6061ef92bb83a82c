"""Stack-free Horn encoding of a product grammar.

Each nonterminal L gets a summary predicate P_L(X, X') relating the frame before a word of L to
the frame after it. Calls are summarized by the callee's predicate, so the encoding needs no
stack; it over-approximates the runs, which keeps a sat answer sound.
"""

from typing import Dict, Hashable, Iterable

from hyperprod.chc.semantics import ProductSemantics
from hyperprod.chc.system import Application, ChcSystem, Clause
from hyperprod.chc.terms import bind, negate
from hyperprod.core.exceptions import EncodingError
from hyperprod.core.logging import logger
from hyperprod.frontend.property import HyperProperty
from hyperprod.vpl.dump import label
from hyperprod.vpl.vpg import Production, Vpg


def predicate_names(symbols: Iterable[Hashable], prefix: str) -> Dict[Hashable, str]:
    """Dense names ``prefix_0``, ``prefix_1``, ... in a run-independent order."""
    ordered = sorted(set(symbols), key=label)
    return {symbol: f"{prefix}_{i}" for i, symbol in enumerate(ordered)}


def add_grammar_clauses(
    system: ChcSystem, grammar: Vpg, semantics: ProductSemantics, names: Dict[Hashable, str]
) -> None:
    """Declare one predicate per nonterminal and add one clause per production."""
    sorts = semantics.sorts + semantics.sorts
    for symbol in grammar.sorted_nonterminals():
        system.declare(names[symbol], sorts, label(symbol))
    for production in sorted(grammar.productions, key=lambda p: (names[p.lhs], repr(p))):
        system.add(_production_clause(production, semantics, names))


def _summary(names: Dict[Hashable, str], symbol: Hashable, semantics: ProductSemantics, before, after) -> Application:
    return Application(names[symbol], semantics.args(before) + semantics.args(after))


def _production_clause(p: Production, semantics: ProductSemantics, names: Dict[Hashable, str]) -> Clause:
    frames = [semantics.frame(v) for v in range(5)]
    if p.is_epsilon:
        x = frames[0]
        return Clause(tuple(semantics.declare(x)), (), (), _summary(names, p.lhs, semantics, x, x), repr(p))
    if p.is_internal:
        x, y, out = frames[:3]
        constraints = semantics.internal(p.first, x, y)
        body = (_summary(names, p.tail, semantics, y, out),)
        variables = semantics.declare(x) + semantics.declare(y) + semantics.declare(out)
        return Clause(tuple(variables), body, tuple(constraints), _summary(names, p.lhs, semantics, x, out), repr(p))
    if p.first.component != p.ret.component:
        raise EncodingError(f"Call {p.first.id!r} is matched by return {p.ret.id!r} of another component")
    x, entry, exit_, back, out = frames
    constraints = semantics.call(p.first, x, entry) + semantics.ret(p.ret, x, exit_, back)
    body = (
        _summary(names, p.inner, semantics, entry, exit_),
        _summary(names, p.tail, semantics, back, out),
    )
    variables = [v for frame in frames for v in semantics.declare(frame)]
    return Clause(tuple(variables), body, tuple(constraints), _summary(names, p.lhs, semantics, x, out), repr(p))


def query_clause(apps, variables, prop: HyperProperty, before: Dict[str, str], after: Dict[str, str]) -> Clause:
    """body apps and pre(before) and not post(after) => false."""
    constraints = (bind(prop.pre, before), negate(bind(prop.post, after)))
    return Clause(tuple(variables), tuple(apps), constraints, None, "property")


def encode_vpg(grammar: Vpg, prop: HyperProperty, semantics: ProductSemantics) -> ChcSystem:
    system = ChcSystem()
    names = predicate_names(grammar.nonterminals, "inv")
    add_grammar_clauses(system, grammar, semantics, names)
    before, after = semantics.frame(0), semantics.frame(1)
    for start in sorted(grammar.starts, key=label):
        app = _summary(names, start, semantics, before, after)
        variables = semantics.declare(before) + semantics.declare(after)
        system.add(query_clause([app], variables, prop, before, after))
    system.validate()
    system.stats.update(productions=len(grammar.productions), nonterminals=len(grammar.nonterminals))
    logger.debug(f"VPG encoding: {len(system.predicates)} predicates, {len(system.clauses)} clauses")
    return system
