"""Systems of constrained Horn clauses."""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from hyperprod.core.exceptions import EncodingError

LOGIC = "HORN"


@dataclass(frozen=True)
class Application:
    predicate: str
    args: Tuple[str, ...] = ()

    def __str__(self) -> str:
        if not self.args:
            return self.predicate
        return f"({self.predicate} {' '.join(self.args)})"


@dataclass(frozen=True)
class Clause:
    """forall variables. (body applications and constraints) => head; a None head is false."""

    variables: Tuple[Tuple[str, str], ...]
    body: Tuple[Application, ...]
    constraints: Tuple[str, ...]
    head: Optional[Application]
    comment: str = ""

    @property
    def is_query(self) -> bool:
        return self.head is None


@dataclass
class ChcSystem:
    predicates: Dict[str, Tuple[str, ...]] = field(default_factory=dict)
    clauses: List[Clause] = field(default_factory=list)
    descriptions: Dict[str, str] = field(default_factory=dict)
    stats: Dict[str, int] = field(default_factory=dict)
    logic: str = LOGIC

    def declare(self, name: str, sorts: Tuple[str, ...], description: str = "") -> str:
        known = self.predicates.get(name)
        if known is not None and known != sorts:
            raise EncodingError(f"Predicate {name} declared twice with different sorts")
        self.predicates[name] = tuple(sorts)
        if description:
            self.descriptions[name] = description
        return name

    def add(self, clause: Clause) -> None:
        self.clauses.append(clause)

    @property
    def queries(self) -> List[Clause]:
        return [c for c in self.clauses if c.is_query]

    def validate(self) -> None:
        """Every application names a declared predicate with the right arity and bound arguments."""
        for clause in self.clauses:
            bound = {name for name, _ in clause.variables}
            apps = list(clause.body) + ([clause.head] if clause.head is not None else [])
            for app in apps:
                sorts = self.predicates.get(app.predicate)
                if sorts is None:
                    raise EncodingError(f"Undeclared predicate {app.predicate}")
                if len(sorts) != len(app.args):
                    raise EncodingError(
                        f"{app.predicate} takes {len(sorts)} argument(s), applied to {len(app.args)}"
                    )
                for arg in app.args:
                    if not _is_constant(arg) and arg not in bound:
                        raise EncodingError(f"Unbound argument {arg} of {app.predicate}")

    def summary(self) -> Dict[str, int]:
        return {"predicates": len(self.predicates), "clauses": len(self.clauses), **self.stats}


def _is_constant(arg: str) -> bool:
    return arg in ("true", "false") or arg.lstrip("-").isdigit() or arg.startswith("(- ")
