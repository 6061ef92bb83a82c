"""Frame relations of product letters, as SMT-LIB constraints.

A product frame holds the variables of every component. A letter of component k acts on the
variables of k and copies every other variable through: internals keep them, calls copy them into
the callee frame and returns take them back from it. Shared globals, when present, travel the
same way for every component.
"""

from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from hyperprod.chc.terms import eq, smt_expr, sort_of, versioned
from hyperprod.core.exceptions import EncodingError
from hyperprod.frontend.ast import Program, Type
from hyperprod.frontend.semantics import AssignStmt, AssumeStmt, CallLetter, ReturnLetter, StoreStmt
from hyperprod.vpl.alphabet import Letter

SHARED = 0
Frame = Dict[str, str]


@dataclass(frozen=True)
class ComponentSignature:
    component: int
    variables: Tuple[Tuple[str, Type], ...]

    @classmethod
    def from_program(cls, program: Program, component: int) -> "ComponentSignature":
        return cls(component, tuple(program.variables().items()))

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(name for name, _ in self.variables)


class ProductSemantics:
    def __init__(self, signatures: Iterable[ComponentSignature], shared: Optional[Mapping[str, Type]] = None):
        self.signatures = sorted(signatures, key=lambda s: s.component)
        self.shared = dict(sorted((shared or {}).items()))
        self.owner: Dict[str, int] = {}
        self.variables: List[Tuple[str, Type]] = []
        for signature in self.signatures:
            for name, type_ in signature.variables:
                self._add(name, type_, signature.component)
        for name, type_ in self.shared.items():
            self._add(name, type_, SHARED)

    def _add(self, name: str, type_: Type, owner: int) -> None:
        if name in self.owner:
            raise EncodingError(f"Variable {name!r} belongs to more than one component")
        self.owner[name] = owner
        self.variables.append((name, type_))

    @classmethod
    def for_programs(cls, programs: Sequence[Program], shared: Optional[Mapping[str, Type]] = None):
        """Semantics of copies 1..k, copy i being component i."""
        return cls([ComponentSignature.from_program(p, i) for i, p in enumerate(programs, start=1)], shared)

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(name for name, _ in self.variables)

    @property
    def sorts(self) -> Tuple[str, ...]:
        return tuple(sort_of(t) for _, t in self.variables)

    def frame(self, version: int) -> Frame:
        return {name: versioned(name, version) for name in self.names}

    def declare(self, frame: Frame) -> List[Tuple[str, str]]:
        return [(frame[name], sort_of(t)) for name, t in self.variables]

    def args(self, frame: Frame) -> Tuple[str, ...]:
        return tuple(frame[name] for name in self.names)

    def _own(self, letter: Letter) -> List[str]:
        if not any(s.component == letter.component for s in self.signatures):
            raise EncodingError(f"Letter {letter.id!r} belongs to component {letter.component}, not in the product")
        return [name for name in self.names if self.owner[name] == letter.component]

    # -- relations -----------------------------------------------------------------
    def internal(self, letter: Letter, pre: Frame, post: Frame) -> List[str]:
        self._own(letter)
        payload = letter.payload
        if isinstance(payload, AssumeStmt):
            constraints = [smt_expr(payload.cond, pre)]
            updates: Dict[str, str] = {}
        elif isinstance(payload, (AssignStmt, StoreStmt)):
            constraints = []
            updates = {target: smt_expr(value, pre) for target, value in payload.updates()}
        else:
            raise EncodingError(f"Internal letter {letter.id!r} carries no statement")
        for name in self.names:
            constraints.append(eq(post[name], updates.get(name, pre[name])))
        return constraints

    def call(self, letter: Letter, caller: Frame, callee: Frame) -> List[str]:
        """Callee entry frame: parameters get the arguments, other own variables are unconstrained."""
        own = set(self._own(letter))
        payload = letter.payload
        if not isinstance(payload, CallLetter):
            raise EncodingError(f"Call letter {letter.id!r} carries no call")
        constraints = [eq(callee[p], smt_expr(a, caller)) for p, a in zip(payload.params, payload.args)]
        constraints.extend(eq(callee[name], caller[name]) for name in self.names if name not in own)
        return constraints

    def ret(self, letter: Letter, caller: Frame, exit_: Frame, result: Frame) -> List[str]:
        """Frame after the return: the caller's own variables with the targets overwritten."""
        own = set(self._own(letter))
        payload = letter.payload
        if not isinstance(payload, ReturnLetter):
            raise EncodingError(f"Return letter {letter.id!r} carries no return")
        assigned = dict(zip(payload.targets, payload.outputs))
        constraints = []
        for name in self.names:
            if name in assigned:
                constraints.append(eq(result[name], exit_[assigned[name]]))
            elif name in own:
                constraints.append(eq(result[name], caller[name]))
            else:
                constraints.append(eq(result[name], exit_[name]))
        return constraints
