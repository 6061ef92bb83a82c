"""Order automata whose lex reductions are the canonical products.

Positions in a speed vector refer to groups of components. A group is the set of components that
one argument of a reduction expression covers; by default every component is its own group.
"""

from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from hyperprod.core.exceptions import OrderError
from hyperprod.orders.automaton import OrderAutomaton, constant_order
from hyperprod.orders.linear import LinearOrder
from hyperprod.vpl.alphabet import BOTTOM, Letter, VPAlphabet

Speeds = Tuple[int, ...]
Groups = Tuple[FrozenSet[int], ...]

STAR = "⋆"


def dec(speeds: Sequence[int], helper: Sequence[int]) -> Speeds:
    """Modulo decrement of the helper vector.

    >>> dec((2, 1), (0, 0)), dec((2, 1), (1, 1)), dec((2, 1), (0, 1))
    ((1, 1), (0, 1), (0, 0))
    """
    speeds, helper = tuple(speeds), tuple(helper)
    if len(speeds) != len(helper) or not speeds:
        raise OrderError(f"Speed vector {speeds} and helper {helper} differ in length")
    if any(t < 0 or t > s for s, t in zip(speeds, helper)):
        raise OrderError(f"Helper {helper} is out of range for speeds {speeds}")
    if not any(helper):
        return (speeds[0] - 1,) + speeds[1:]
    i = next(index for index, t in enumerate(helper) if t > 0)
    return (0,) * i + (helper[i] - 1,) + helper[i + 1 :]


def check_speeds(speeds: Sequence[int]) -> Speeds:
    speeds = tuple(speeds)
    if not speeds:
        raise OrderError("Empty speed vector")
    for s in speeds:
        if not isinstance(s, int) or s < 1:
            raise OrderError(f"Speeds must be positive integers, got {speeds}")
    return speeds


def resolve_groups(alphabet: VPAlphabet, groups: Optional[Iterable[Iterable[int]]]) -> Groups:
    """Default to one group per component; otherwise check the groups partition the components."""
    if groups is None:
        return tuple(frozenset((c,)) for c in alphabet.components)
    resolved = tuple(frozenset(g) for g in groups)
    seen: List[int] = [c for g in resolved for c in g]
    if any(not g for g in resolved) or len(seen) != len(set(seen)):
        raise OrderError(f"Groups {resolved} overlap or are empty")
    if set(seen) != set(alphabet.components):
        raise OrderError(
            f"Groups cover components {sorted(seen)} but the alphabet has {list(alphabet.components)}"
        )
    return resolved


def _group_index(groups: Groups) -> Dict[int, int]:
    return {component: index for index, group in enumerate(groups) for component in group}


def _blocks(alphabet: VPAlphabet, groups: Groups) -> Tuple[List[List[Letter]], List[List[Letter]], List[List[Letter]]]:
    """Internals, calls and returns of every group, indexed by group position."""
    index = _group_index(groups)
    internals: List[List[Letter]] = [[] for _ in groups]
    calls: List[List[Letter]] = [[] for _ in groups]
    returns: List[List[Letter]] = [[] for _ in groups]
    for letter in alphabet:
        target = internals if letter.is_internal else calls if letter.is_call else returns
        target[index[letter.component]].append(letter)
    return internals, calls, returns


def _by_group(alphabet: VPAlphabet, groups: Groups) -> List[List[Letter]]:
    index = _group_index(groups)
    blocks: List[List[Letter]] = [[] for _ in groups]
    for letter in alphabet:
        blocks[index[letter.component]].append(letter)
    return blocks


def concat_order(alphabet: VPAlphabet, groups: Optional[Iterable[Iterable[int]]] = None) -> OrderAutomaton:
    """Single state; every letter of an earlier group is smaller."""
    resolved = resolve_groups(alphabet, groups)
    return constant_order(alphabet, LinearOrder.from_blocks(_by_group(alphabet, resolved)), name="concat")


def nested_concat_order(
    alphabet: VPAlphabet, groups: Optional[Iterable[Iterable[int]]] = None
) -> OrderAutomaton:
    """Single state; internals and calls group by group, then all returns."""
    resolved = resolve_groups(alphabet, groups)
    internals, calls, returns = _blocks(alphabet, resolved)
    blocks = [a + c for a, c in zip(internals, calls)]
    blocks.extend(returns)
    return constant_order(alphabet, LinearOrder.from_blocks(blocks), name="nested_concat")


def lockstep_order(
    speeds: Sequence[int],
    alphabet: VPAlphabet,
    groups: Optional[Iterable[Iterable[int]]] = None,
) -> OrderAutomaton:
    """The s-lockstep order.

    States are helper vectors t with 0 <= t_i <= s_i plus a star state reached when a return pops a
    state that does not belong to the current round. Calls push the current state.
    """
    speeds = check_speeds(speeds)
    resolved = resolve_groups(alphabet, groups)
    if len(resolved) != len(speeds):
        raise OrderError(f"Speed vector {speeds} has {len(speeds)} entries for {len(resolved)} groups")
    index = _group_index(resolved)
    internals, calls, returns = _blocks(alphabet, resolved)
    n = len(speeds)
    star_order = LinearOrder.from_blocks(_by_group(alphabet, resolved))

    def call(q, c: Letter):
        if q == STAR:
            return STAR, STAR
        i = index[c.component]
        head = speeds[i] - 1 if q[i] == 0 else q[i] - 1
        return (0,) * i + (head,) + (speeds[i + 1 :] if q[i] == 0 else q[i + 1 :]), q

    def ret(q, r: Letter, popped):
        i = index[r.component]
        if popped not in (BOTTOM, STAR) and popped[i] == 0:
            return popped
        return STAR

    def order(q) -> LinearOrder:
        if q == STAR:
            return star_order
        j = next((index_ for index_, t in enumerate(q) if t > 0), 0)
        rotated = [calls[(j + k) % n] for k in range(n)]
        return LinearOrder.from_blocks([*internals, *rotated, *returns])

    return OrderAutomaton.explore(
        alphabet,
        (0,) * n,
        lambda q, a: q,
        call,
        ret,
        order,
        name=f"{speeds}-lockstep",
    )


def make_roundrobin_order(
    n_components: int, alphabet: VPAlphabet, groups: Optional[Iterable[Iterable[int]]] = None
) -> OrderAutomaton:
    """Round-robin scheduling of two components, tracking the last pending call and whether it
    was the latest letter. Other arities fall back to the (1, ..., 1)-lockstep order."""
    resolved = resolve_groups(alphabet, groups)
    if len(resolved) != n_components:
        raise OrderError(f"Round-robin over {n_components} groups, but {len(resolved)} were given")
    if n_components != 2:
        return lockstep_order((1,) * n_components, alphabet, resolved)
    index = _group_index(resolved)
    internals, calls, returns = _blocks(alphabet, resolved)
    ints = internals[0] + internals[1]
    c1, c2 = calls
    r1, r2 = returns
    tables = {
        (0, True): [ints, c2, c1, r1, r2],
        (0, False): [ints, r1, c1, c2, r2],
        (1, False): [ints, r2, c2, c1, r1],
    }
    fallback = [ints, c1, c2, r2, r1]

    def ret(q, r: Letter, popped):
        if popped is BOTTOM:
            return (None, False)
        return (popped[0], False)

    return OrderAutomaton.explore(
        alphabet,
        (None, False),
        lambda q, a: (q[0], False),
        lambda q, c: ((index[c.component], True), q),
        ret,
        lambda q: LinearOrder.from_blocks(tables.get(q, fallback)),
        name="round-robin",
    )
