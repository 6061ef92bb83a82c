"""SMT-LIB 2 serialization of Horn systems."""

import re
from pathlib import Path
from typing import List, Optional, Union

from hyperprod.chc.system import ChcSystem, Clause
from hyperprod.chc.terms import conj
from hyperprod.core.logging import logger


def _natural(name: str):
    return [int(part) if part.isdigit() else part for part in re.split(r"(\d+)", name)]


def _clause(clause: Clause) -> str:
    body = conj([str(app) for app in clause.body] + list(clause.constraints))
    head = str(clause.head) if clause.head is not None else "false"
    implication = head if body == "true" else f"(=> {body} {head})"
    if clause.variables:
        bound = " ".join(f"({name} {sort})" for name, sort in clause.variables)
        implication = f"(forall ({bound}) {implication})"
    return f"(assert {implication})"


def to_smtlib(system: ChcSystem) -> str:
    lines: List[str] = []
    predicates = sorted(system.predicates, key=_natural)
    for name in predicates:
        if name in system.descriptions:
            lines.append(f"; {name} = {system.descriptions[name]}")
    lines.append(f"(set-logic {system.logic})")
    for name in predicates:
        lines.append(f"(declare-fun {name} ({' '.join(system.predicates[name])}) Bool)")
    for clause in system.clauses:
        if clause.comment:
            lines.append(f"; {clause.comment}")
        lines.append(_clause(clause))
    lines.append("(check-sat)")
    lines.append("(exit)")
    return "\n".join(lines) + "\n"


def emit_smtlib(system: ChcSystem, path: Optional[Union[str, Path]] = None) -> str:
    """Serialize ``system``; when ``path`` is given, also write it there."""
    text = to_smtlib(system)
    if path is not None:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
        logger.info(f"Wrote {len(system.clauses)} clauses to {path}")
    return text
