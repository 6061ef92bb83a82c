"""Hyperproperties: a precondition and a postcondition over k renamed program copies.

Both assertions are SMT-LIB terms written over the copy variables (``n_1``, ``q_2``, ...), so the
CHC layer splices them in unchanged. The text format is one entry per line::

    copies: 2
    pre: (and (<= n_1 n_2) (= d_1 d_2) (> d_1 0))
    post: (<= q_1 q_2)

Inline properties given on the command line separate entries with ``|``.
"""

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Iterable, List, Mapping, Optional, Tuple, Union

from hyperprod.core.exceptions import PropertyError
from hyperprod.core.logging import logger

SMT_OPERATORS = frozenset(
    "and or not => = distinct ite < <= > >= + - * div mod abs select store true false".split()
)

_TOKEN = re.compile(r"\(|\)|[^\s()]+")
_INTEGER = re.compile(r"-?\d+")
_SUFFIX = re.compile(r"_(\d+)$")

SExpr = Union[str, Tuple["SExpr", ...]]


def tokenize_smt(text: str) -> List[str]:
    return _TOKEN.findall(text)


def parse_sexpr(text: str) -> SExpr:
    """Nested tuples of atoms; raises PropertyError on unbalanced input."""
    tokens = tokenize_smt(text)
    if not tokens:
        raise PropertyError("Empty assertion")
    stack: List[List[SExpr]] = [[]]
    for token in tokens:
        if token == "(":
            stack.append([])
        elif token == ")":
            if len(stack) == 1:
                raise PropertyError(f"Unbalanced ')' in {text!r}")
            closed = tuple(stack.pop())
            stack[-1].append(closed)
        else:
            stack[-1].append(token)
    if len(stack) != 1:
        raise PropertyError(f"Unbalanced '(' in {text!r}")
    if len(stack[0]) != 1:
        raise PropertyError(f"Expected a single term in {text!r}")
    return stack[0][0]


def symbols_of(text: str) -> List[str]:
    """Atoms of an assertion that are neither operators nor integer literals."""
    return [t for t in tokenize_smt(text) if t not in "()" and t not in SMT_OPERATORS and not _INTEGER.fullmatch(t)]


@dataclass(frozen=True)
class HyperProperty:
    k: int
    pre: str
    post: str

    def __post_init__(self):
        if self.k < 1:
            raise PropertyError(f"A hyperproperty needs at least one copy, got {self.k}")
        parse_sexpr(self.pre)
        parse_sexpr(self.post)

    def validate(self, variables: Iterable[str]) -> None:
        """Raise PropertyError if an assertion mentions a name outside ``variables``."""
        known = set(variables)
        for label, text in (("pre", self.pre), ("post", self.post)):
            unknown = sorted({s for s in symbols_of(text) if s not in known})
            if unknown:
                raise PropertyError(f"{label} refers to undeclared variable(s): {', '.join(unknown)}")

    def variables(self) -> List[str]:
        return sorted(set(symbols_of(self.pre)) | set(symbols_of(self.post)))


def parse_property(text: str) -> HyperProperty:
    entries = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition(":")
        key = key.strip().lower()
        if not sep or key not in ("copies", "pre", "post"):
            raise PropertyError(f"Line {number}: expected 'copies:', 'pre:' or 'post:' but found {line!r}")
        if key in entries:
            raise PropertyError(f"Line {number}: {key} given twice")
        entries[key] = value.strip()
    pre = entries.get("pre", "true")
    if "post" not in entries:
        raise PropertyError("A property needs a post line")
    post = entries["post"]
    if "copies" in entries:
        try:
            k = int(entries["copies"])
        except ValueError:
            raise PropertyError(f"copies must be an integer, got {entries['copies']!r}") from None
    else:
        k = _infer_copies(pre, post)
    return HyperProperty(k, pre, post)


def _infer_copies(pre: str, post: str) -> int:
    indices = [int(m.group(1)) for s in symbols_of(pre) + symbols_of(post) if (m := _SUFFIX.search(s))]
    if not indices:
        raise PropertyError("Cannot infer the number of copies; add a 'copies:' line")
    return max(indices)


def load_property(source: Union[str, Path]) -> HyperProperty:
    """Read a property file, or parse ``source`` itself when no such file exists."""
    path = Path(source)
    try:
        is_file = path.is_file()
    except OSError:
        is_file = False
    if is_file:
        logger.debug(f"Reading property from {path}")
        return parse_property(path.read_text(encoding="utf-8"))
    return parse_property(str(source).replace("|", "\n"))


# -- evaluation on concrete valuations --------------------------------------------------

_ARITH = {
    "<": lambda a, b: a < b,
    "<=": lambda a, b: a <= b,
    ">": lambda a, b: a > b,
    ">=": lambda a, b: a >= b,
}


def _euclid_div(a: int, b: int) -> int:
    q = a // b
    return q + 1 if b < 0 and a - q * b != 0 else q


def evaluate_smt(term: Union[str, SExpr], valuation: Mapping[str, Any]) -> Any:
    """Value of an integer/boolean SMT-LIB term under ``valuation``."""
    if isinstance(term, str) and (term.startswith("(") or " " in term.strip()):
        term = parse_sexpr(term)
    if isinstance(term, str):
        if term == "true":
            return True
        if term == "false":
            return False
        if _INTEGER.fullmatch(term):
            return int(term)
        if term not in valuation:
            raise PropertyError(f"No value for {term!r}")
        return valuation[term]
    op, *args = term
    values = [evaluate_smt(a, valuation) for a in args]
    if op == "and":
        return all(values)
    if op == "or":
        return any(values)
    if op == "not":
        return not values[0]
    if op == "=>":
        return (not values[0]) or values[1]
    if op == "=":
        return all(v == values[0] for v in values[1:])
    if op == "distinct":
        return len(set(values)) == len(values)
    if op == "ite":
        return values[1] if values[0] else values[2]
    if op in _ARITH:
        return all(_ARITH[op](a, b) for a, b in zip(values, values[1:]))
    if op == "+":
        return sum(values)
    if op == "-":
        return -values[0] if len(values) == 1 else values[0] - sum(values[1:])
    if op == "*":
        result = 1
        for v in values:
            result *= v
        return result
    if op == "div":
        return _euclid_div(values[0], values[1])
    if op == "mod":
        return values[0] - values[1] * _euclid_div(values[0], values[1])
    if op == "abs":
        return abs(values[0])
    if op == "select":
        return values[0].select(values[1])
    if op == "store":
        return values[0].store(values[1], values[2])
    raise PropertyError(f"Cannot evaluate operator {op!r}")


def holds(prop: HyperProperty, initial: Mapping[str, Any], final: Optional[Mapping[str, Any]] = None) -> bool:
    """Whether the run from ``initial`` to ``final`` satisfies the property (vacuous if pre fails)."""
    if not evaluate_smt(prop.pre, initial):
        return True
    return final is None or bool(evaluate_smt(prop.post, final))
