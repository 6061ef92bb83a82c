"""Dependence annotations: JSON files naming the letters that do not commute across components.

Two layouts are accepted::

    {"q := (q + 1)": "dep", "x := 0": "indep"}
    {"1": {"q := (q + 1)": "dep"}, "2": {"g := 0": "dep"}}

The flat layout applies to every component. Letters that are not mentioned are independent.
"""

import json
from pathlib import Path
from typing import Dict, Iterable, Literal, Union

from pydantic import TypeAdapter, ValidationError

from hyperprod.concurrency.independence import IndependenceSpec
from hyperprod.core.exceptions import IndependenceError
from hyperprod.core.logging import logger

Marking = Literal["dep", "indep"]

_FLAT = TypeAdapter(Dict[str, Marking])
_PER_COMPONENT = TypeAdapter(Dict[int, Dict[str, Marking]])


def _dependent(markings: Dict[str, str]) -> frozenset:
    return frozenset(letter for letter, mark in markings.items() if mark == "dep")


def parse_annotation(data: object, components: Iterable[int]) -> IndependenceSpec:
    """Turn decoded JSON into an IndependenceSpec over ``components``."""
    components = tuple(components)
    if isinstance(data, dict) and data and all(isinstance(v, dict) for v in data.values()):
        try:
            per_component = _PER_COMPONENT.validate_python(data)
        except ValidationError as e:
            raise IndependenceError(f"Invalid per-component annotation: {e.errors()[0]['msg']}") from e
        unknown = sorted(set(per_component) - set(components))
        if unknown:
            raise IndependenceError(f"Annotation names unknown component(s) {unknown}")
        return IndependenceSpec({i: _dependent(per_component.get(i, {})) for i in components})
    try:
        flat = _FLAT.validate_python(data)
    except ValidationError as e:
        raise IndependenceError(f"Invalid annotation: {e.errors()[0]['msg']}") from e
    dependent = _dependent(flat)
    return IndependenceSpec({i: dependent for i in components})


def load_annotation(path: Union[str, Path], components: Iterable[int]) -> IndependenceSpec:
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError as e:
        raise IndependenceError(f"Annotation file {path} not found") from e
    except json.JSONDecodeError as e:
        raise IndependenceError(f"Annotation file {path} is not valid JSON: {e.msg} (line {e.lineno})") from e
    spec = parse_annotation(data, components)
    total = sum(len(ids) for ids in spec.dependent.values())
    logger.info(f"Loaded dependence annotation {path.name}: {total} dependent letter(s)")
    return spec
