"""Emptiness and witness search for VPAs.

Well-matched summaries are saturated first; accepted words are then paths in a two-phase graph
whose edges are summaries, ⊥-returns (before the first pending call) and pending calls.
"""

import heapq
from itertools import count
from typing import Dict, List, Optional, Tuple

import networkx as nx

from hyperprod.core.logging import logger
from hyperprod.vpl.alphabet import BOTTOM, Word, stable_key
from hyperprod.vpl.vpa import State, Vpa

Summary = Tuple[State, State]


def summaries(automaton: Vpa) -> Dict[Summary, Word]:
    """Shortest well-matched word leading from p to q, for every connected pair (p, q)."""
    best: Dict[Summary, Word] = {}
    order = count()
    heap: List[Tuple[int, int, Summary, Word]] = []

    def offer(pair: Summary, word: Word) -> None:
        known = best.get(pair)
        if known is None or len(word) < len(known):
            best[pair] = word
            heapq.heappush(heap, (len(word), next(order), pair, word))

    for q in automaton.sorted_states():
        offer((q, q), ())

    returns_by_pop: Dict[object, List] = {}
    for t in automaton.returns:
        if t.pop is not BOTTOM:
            returns_by_pop.setdefault(t.pop, []).append(t)
    calls_by_target: Dict[State, List] = {}
    for t in automaton.calls:
        calls_by_target.setdefault(t.target, []).append(t)
    internals_by_source: Dict[State, List] = {}
    for t in automaton.internals:
        internals_by_source.setdefault(t.source, []).append(t)
    by_source: Dict[State, List[State]] = {}
    by_target: Dict[State, List[State]] = {}

    while heap:
        _, _, pair, word = heapq.heappop(heap)
        if best.get(pair) != word:
            continue
        p, q = pair
        by_source.setdefault(p, []).append(q)
        by_target.setdefault(q, []).append(p)
        # extend to the right with an internal
        for t in internals_by_source.get(q, ()):
            offer((p, t.target), word + (t.letter,))
        # (p, q) as the inside of a call block
        for call in calls_by_target.get(p, ()):
            for ret in returns_by_pop.get(call.push, ()):
                if ret.source == q:
                    offer((call.source, ret.target), (call.letter,) + word + (ret.letter,))
        # (p, q) followed by a known summary, or preceded by one
        for after in list(by_source.get(q, ())):
            offer((p, after), word + best[(q, after)])
        for before in list(by_target.get(p, ())):
            offer((before, q), best[(before, p)] + word)
    return best


def _acceptance_graph(automaton: Vpa, well_matched: bool) -> nx.DiGraph:
    graph = nx.DiGraph()

    def edge(u, v, word: Word) -> None:
        if graph.has_edge(u, v) and len(graph.edges[u, v]["word"]) <= len(word):
            return
        graph.add_edge(u, v, word=word, weight=len(word))

    for (p, q), word in summaries(automaton).items():
        edge((1, p), (1, q), word)
        if not well_matched:
            edge((2, p), (2, q), word)
    if not well_matched:
        for q in automaton.states:
            edge((1, q), (2, q), ())
        for t in automaton.returns:
            if t.pop is BOTTOM:
                edge((1, t.source), (1, t.target), (t.letter,))
        for t in automaton.calls:
            edge((2, t.source), (2, t.target), (t.letter,))
    for q in sorted(automaton.initial, key=stable_key):
        edge("source", (1, q), ())
    for q in sorted(automaton.finals, key=stable_key):
        edge((1, q), "sink", ())
        if not well_matched:
            edge((2, q), "sink", ())
    return graph


def vpa_witness(automaton: Vpa, well_matched: bool = False) -> Optional[Word]:
    """A shortest accepted word, or None when the language is empty."""
    graph = _acceptance_graph(automaton, well_matched)
    if "source" not in graph or "sink" not in graph or not nx.has_path(graph, "source", "sink"):
        return None
    path = nx.shortest_path(graph, "source", "sink", weight="weight")
    word: Word = ()
    for u, v in zip(path, path[1:]):
        word += graph.edges[u, v]["word"]
    logger.debug(f"Witness of length {len(word)} found")
    return word


def vpa_is_empty(automaton: Vpa, well_matched: bool = False) -> bool:
    return vpa_witness(automaton, well_matched) is None
