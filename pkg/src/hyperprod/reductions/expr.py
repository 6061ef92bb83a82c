"""Reduction expressions: trees of concatenation, nested concatenation and lockstep over components."""

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import FrozenSet, Iterable, Optional, Tuple

from hyperprod.core.exceptions import ReductionError


class NodeKind(str, Enum):
    LEAF = "leaf"
    CONCAT = "concat"
    NESTED_CONCAT = "nested_concatenation"
    LOCKSTEP = "lockstep"


@dataclass(frozen=True)
class ReductionExpr:
    kind: NodeKind
    children: Tuple["ReductionExpr", ...] = ()
    component: Optional[int] = None
    speeds: Tuple[int, ...] = ()
    right_aligned: bool = False
    excluded: FrozenSet[str] = field(default_factory=frozenset)

    # -- constructors ----------------------------------------------------------
    @classmethod
    def leaf(cls, component: int) -> "ReductionExpr":
        if component < 1:
            raise ReductionError(f"Component index must be >= 1, got {component}")
        return cls(NodeKind.LEAF, component=component)

    @classmethod
    def concat(cls, *children: "ReductionExpr", excluded: Iterable[str] = ()) -> "ReductionExpr":
        return cls(NodeKind.CONCAT, tuple(children), excluded=frozenset(excluded)).validate()

    @classmethod
    def nested_concat(cls, *children: "ReductionExpr", excluded: Iterable[str] = ()) -> "ReductionExpr":
        return cls(NodeKind.NESTED_CONCAT, tuple(children), excluded=frozenset(excluded)).validate()

    @classmethod
    def lockstep(
        cls, speeds: Iterable[int], *children: "ReductionExpr", excluded: Iterable[str] = ()
    ) -> "ReductionExpr":
        return cls(
            NodeKind.LOCKSTEP, tuple(children), speeds=tuple(speeds), excluded=frozenset(excluded)
        ).validate()

    # -- structure -------------------------------------------------------------
    @property
    def is_leaf(self) -> bool:
        return self.kind is NodeKind.LEAF

    def components(self) -> Tuple[int, ...]:
        """Leaf components from left to right."""
        if self.is_leaf:
            return (self.component,)
        return tuple(c for child in self.children for c in child.components())

    def validate(self) -> "ReductionExpr":
        if self.is_leaf:
            return self
        if len(self.children) < 2:
            raise ReductionError(f"{self.kind.value} needs at least two arguments")
        if self.kind is NodeKind.LOCKSTEP:
            if len(self.speeds) != len(self.children):
                raise ReductionError(
                    f"Speed vector {self.speeds} does not match the {len(self.children)} arguments"
                )
            if any(not isinstance(s, int) or s < 1 for s in self.speeds):
                raise ReductionError(f"Speeds must be positive integers, got {self.speeds}")
        elif self.speeds:
            raise ReductionError(f"Only lockstep takes speeds, not {self.kind.value}")
        components = self.components()
        if len(set(components)) != len(components):
            raise ReductionError(f"A component occurs more than once in {self}")
        return self

    def check_covers(self, components: Iterable[int]) -> None:
        """Leaves must be exactly the given components."""
        expected = sorted(set(components))
        if sorted(self.components()) != expected:
            raise ReductionError(f"Expression {self} covers {sorted(self.components())}, inputs are {expected}")

    def __str__(self) -> str:
        if self.is_leaf:
            return f"P{self.component}"
        arguments = [str(child) for child in self.children]
        if self.excluded:
            arguments.append(f"exclude=[{','.join(sorted(self.excluded))}]")
        if self.kind is NodeKind.LOCKSTEP:
            head = f"({','.join(str(s) for s in self.speeds)})-lockstep"
        else:
            head = self.kind.value
        text = f"{head}({', '.join(arguments)})"
        return f"right_aligned:{text}" if self.right_aligned else text


def right_align(expr: ReductionExpr) -> ReductionExpr:
    """Mark a canonical node as aligned on the right end of the words it combines."""
    if expr.is_leaf:
        raise ReductionError("Only reduction nodes can be right-aligned, not a single component")
    return replace(expr, right_aligned=True)
