"""Tokenizer for the mini recursive language."""

import re
from dataclasses import dataclass
from enum import Enum
from typing import List

from hyperprod.core.exceptions import ParseError


class TokenType(str, Enum):
    IDENT = "identifier"
    NUMBER = "number"
    KEYWORD = "keyword"
    SYMBOL = "symbol"
    EOF = "end of input"


KEYWORDS = frozenset(
    {"proc", "returns", "var", "int", "bool", "if", "else", "assume", "call", "return", "true", "false"}
)

# Longest symbols first so that ":=" wins over ":".
SYMBOLS = (":=", "<=", ">=", "==", "!=", "&&", "||", "(", ")", "{", "}", "[", "]", ",", ";", ":", "<", ">", "+", "-", "*", "!")

_TOKEN = re.compile(
    r"(?P<space>[ \t\r]+)"
    r"|(?P<newline>\n)"
    r"|(?P<comment>//[^\n]*)"
    r"|(?P<number>[0-9]+)"
    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<symbol>" + "|".join(re.escape(s) for s in SYMBOLS) + ")"
)


@dataclass(frozen=True)
class Token:
    type: TokenType
    value: str
    line: int
    column: int

    def is_(self, value: str) -> bool:
        return self.type in (TokenType.KEYWORD, TokenType.SYMBOL) and self.value == value

    def __str__(self) -> str:
        return self.type.value if self.type is TokenType.EOF else repr(self.value)


def tokenize(source: str) -> List[Token]:
    """Split source text into tokens, ending with an EOF token. Comments run from // to end of line."""
    tokens: List[Token] = []
    line, line_start, position = 1, 0, 0
    while position < len(source):
        match = _TOKEN.match(source, position)
        column = position - line_start + 1
        if match is None:
            raise ParseError(f"Unexpected character {source[position]!r}", line, column)
        kind = match.lastgroup
        text = match.group()
        if kind == "newline":
            line += 1
            line_start = match.end()
        elif kind == "number":
            tokens.append(Token(TokenType.NUMBER, text, line, column))
        elif kind == "ident":
            token_type = TokenType.KEYWORD if text in KEYWORDS else TokenType.IDENT
            tokens.append(Token(token_type, text, line, column))
        elif kind == "symbol":
            tokens.append(Token(TokenType.SYMBOL, text, line, column))
        position = match.end()
    tokens.append(Token(TokenType.EOF, "", line, position - line_start + 1))
    return tokens
