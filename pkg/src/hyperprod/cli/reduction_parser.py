"""Parser for reduction expressions given on the command line.

Grammar::

    expr     ::= "right_aligned" ":" expr
               | primary [ "with" "exclude" "=" names ]
    primary  ::= ID                                   (P1, P2, ...)
               | "concat" "(" args ")"
               | ("nested_concatenation" | "nested_concat") "(" args ")"
               | [ "(" INT { "," INT } ")" "-" ] "lockstep" "(" args ")"
    args     ::= expr { "," expr } [ "," "exclude" "=" names ]
    names    ::= "[" ID { "," ID } "]"

A lockstep without speeds runs every argument at speed 1.
"""

import re
from dataclasses import dataclass
from typing import List, Optional, Tuple

from hyperprod.core.exceptions import ParseError, ReductionError
from hyperprod.reductions.expr import ReductionExpr, right_align

STAGE = "reductions"

_TOKEN = re.compile(r"(?P<space>\s+)|(?P<number>[0-9]+)|(?P<ident>[A-Za-z_][A-Za-z0-9_.]*)|(?P<symbol>[()\[\],:=-])")
_LEAF = re.compile(r"[Pp]([0-9]+)")
NESTED_NAMES = ("nested_concatenation", "nested_concat")


@dataclass(frozen=True)
class _Token:
    kind: str
    value: str
    column: int

    def __str__(self) -> str:
        return "end of input" if self.kind == "eof" else repr(self.value)


def _tokenize(text: str) -> List[_Token]:
    tokens: List[_Token] = []
    position = 0
    while position < len(text):
        match = _TOKEN.match(text, position)
        if match is None:
            raise ParseError(f"Unexpected character {text[position]!r}", 1, position + 1, stage=STAGE)
        if match.lastgroup != "space":
            tokens.append(_Token(match.lastgroup, match.group(), position + 1))
        position = match.end()
    tokens.append(_Token("eof", "", len(text) + 1))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.position = 0

    @property
    def current(self) -> _Token:
        return self.tokens[self.position]

    def peek(self, offset: int = 1) -> _Token:
        return self.tokens[min(self.position + offset, len(self.tokens) - 1)]

    def error(self, message: str, token: Optional[_Token] = None) -> ParseError:
        token = token or self.current
        return ParseError(message, 1, token.column, stage=STAGE)

    def advance(self) -> _Token:
        token = self.current
        self.position += 1
        return token

    def at(self, value: str) -> bool:
        return self.current.kind in ("symbol", "ident") and self.current.value == value

    def expect(self, value: str) -> _Token:
        if not self.at(value):
            raise self.error(f"Expected {value!r}, found {self.current}")
        return self.advance()

    def number(self) -> int:
        if self.current.kind != "number":
            raise self.error(f"Expected a number, found {self.current}")
        return int(self.advance().value)

    # -- grammar -------------------------------------------------------------------
    def parse(self) -> ReductionExpr:
        expr = self.expr()
        if self.current.kind != "eof":
            raise self.error(f"Unexpected {self.current} after the expression")
        return expr

    def expr(self) -> ReductionExpr:
        start = self.current
        if self.at("right_aligned"):
            self.advance()
            self.expect(":")
            inner = self.expr()
            try:
                return right_align(inner)
            except ReductionError as e:
                raise self.error(e.message, start) from e
        expr = self.primary()
        if self.at("with"):
            self.advance()
            self.expect("exclude")
            self.expect("=")
            excluded = self.names()
            if expr.is_leaf:
                raise self.error("A single component has nothing to exclude", start)
            expr = self.build(start, expr.kind.value, list(expr.children), expr.speeds, expr.excluded | excluded)
        return expr

    def primary(self) -> ReductionExpr:
        start = self.current
        if start.kind == "ident":
            if start.value == "concat":
                self.advance()
                children, excluded = self.arguments()
                return self.build(start, "concat", children, (), excluded)
            if start.value in NESTED_NAMES:
                self.advance()
                children, excluded = self.arguments()
                return self.build(start, "nested_concatenation", children, (), excluded)
            if start.value == "lockstep":
                self.advance()
                children, excluded = self.arguments()
                return self.build(start, "lockstep", children, (1,) * len(children), excluded)
            match = _LEAF.fullmatch(start.value)
            if match is None:
                raise self.error(f"Unknown component or operator {start.value!r}")
            self.advance()
            try:
                return ReductionExpr.leaf(int(match.group(1)))
            except ReductionError as e:
                raise self.error(e.message, start) from e
        if self.at("("):
            speeds = self.speeds()
            self.expect("-")
            self.expect("lockstep")
            children, excluded = self.arguments()
            return self.build(start, "lockstep", children, speeds, excluded)
        raise self.error(f"Expected a reduction expression, found {self.current}")

    def speeds(self) -> Tuple[int, ...]:
        self.expect("(")
        speeds = [self.number()]
        while self.at(","):
            self.advance()
            speeds.append(self.number())
        self.expect(")")
        return tuple(speeds)

    def arguments(self) -> Tuple[List[ReductionExpr], frozenset]:
        self.expect("(")
        children = [self.expr()]
        excluded: frozenset = frozenset()
        while self.at(","):
            self.advance()
            if self.at("exclude") and self.peek().value == "=":
                self.advance()
                self.advance()
                excluded = self.names()
                break
            children.append(self.expr())
        self.expect(")")
        return children, excluded

    def names(self) -> frozenset:
        self.expect("[")
        names = []
        while True:
            if self.current.kind != "ident":
                raise self.error(f"Expected a procedure name, found {self.current}")
            names.append(self.advance().value)
            if not self.at(","):
                break
            self.advance()
        self.expect("]")
        return frozenset(names)

    def build(self, start: _Token, kind: str, children, speeds, excluded) -> ReductionExpr:
        try:
            if kind == "concat":
                return ReductionExpr.concat(*children, excluded=excluded)
            if kind == "nested_concatenation":
                return ReductionExpr.nested_concat(*children, excluded=excluded)
            return ReductionExpr.lockstep(speeds, *children, excluded=excluded)
        except ReductionError as e:
            raise self.error(e.message, start) from e


def parse_reduction_expr(text: str) -> ReductionExpr:
    """Parse ``text``; errors are ParseErrors pointing at the offending column."""
    return _Parser(text).parse()


def lockstep_default(components: int) -> ReductionExpr:
    """The (1,...,1)-lockstep of components 1..n, or the single leaf when n is 1."""
    leaves = [ReductionExpr.leaf(i) for i in range(1, components + 1)]
    if len(leaves) == 1:
        return leaves[0]
    return ReductionExpr.lockstep((1,) * len(leaves), *leaves)
