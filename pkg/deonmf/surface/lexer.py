"""
Tokenizer for ``.dl`` theory files.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, List

from ..errors import Location, ParseError


class TokenKind(str, Enum):
    NAME = "name"
    KEYWORD = "keyword"
    SYMBOL = "symbol"
    LITERAL = "literal"
    STRING = "string"
    NUMBER = "number"
    EOF = "end of input"


KEYWORDS = frozenset(
    {
        # declarations
        "sorts", "consts", "def", "axiom", "goal",
        # character level
        "forall", "exists", "true", "false",
        "boxA", "diaA", "boxP", "diaP", "boxD", "Oa", "Oi",
        # S-expression heads
        "not", "and", "or", "imp", "iff", "ob",
        # meta level
        "valid", "validD", "validAt", "validCtx",
    }
)

DECLARATION_KEYWORDS = frozenset({"sorts", "consts", "def", "axiom", "goal"})

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<literal>@[a-z]+:(?:\d+|\[\s*\d+(?:\s*,\s*\d+)*\s*\]))
  | (?P<string>"[^"\n]*")
  | (?P<number>\d+)
  | (?P<symbol>O<|<->|:=|=>|->|&&|[()\[\]<>,.:=&|~!])
  | (?P<name>[A-Za-z_][A-Za-z0-9_']*(?:-[A-Za-z0-9_']+)*)
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    text: str
    location: Location

    def is_symbol(self, text: str) -> bool:
        return self.kind == TokenKind.SYMBOL and self.text == text

    def is_keyword(self, text: str) -> bool:
        return self.kind == TokenKind.KEYWORD and self.text == text

    def describe(self) -> str:
        return self.kind.value if self.kind == TokenKind.EOF else f"'{self.text}'"


def tokenize(text: str) -> List[Token]:
    return list(_iter_tokens(text))


def _iter_tokens(text: str) -> Iterator[Token]:
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        location = Location(line, pos - line_start + 1)
        if match is None:
            raise ParseError(f"unexpected character {text[pos]!r}", location)
        group = match.lastgroup
        value = match.group()
        pos = match.end()
        if group == "nl":
            line += 1
            line_start = pos
            continue
        if group in ("ws", "comment"):
            continue
        if group == "name":
            kind = TokenKind.KEYWORD if value in KEYWORDS else TokenKind.NAME
            yield Token(kind, value, location)
        elif group == "literal":
            yield Token(TokenKind.LITERAL, value, location)
        elif group == "string":
            yield Token(TokenKind.STRING, value[1:-1], location)
        elif group == "number":
            yield Token(TokenKind.NUMBER, value, location)
        else:
            yield Token(TokenKind.SYMBOL, value, location)
    yield Token(TokenKind.EOF, "", Location(line, pos - line_start + 1))
