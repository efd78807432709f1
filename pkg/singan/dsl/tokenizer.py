from dataclasses import dataclass
from typing import List

from ..errors import ParseError

KEYWORDS = frozenset(
    {"map", "kind", "forward", "backward", "param", "scalar", "pair", "const", "linrec", "mulrec", "list"}
)
SYMBOLS = frozenset("+-*/^()=,[]{}:;")


@dataclass(frozen=True)
class Token:
    kind: str  # ident | integer | string | symbol | keyword | eof
    lexeme: str
    line: int
    column: int
    offset: int = 0

    @property
    def position(self) -> str:
        return f"{self.line}:{self.column}"


def line_of(text: str, line: int) -> str:
    lines = text.splitlines()
    if 1 <= line <= len(lines):
        return lines[line - 1]
    return ""


def tokenize(text: str) -> List[Token]:
    """
    Split mapfile or expression text into tokens.

    Whitespace and ``#`` comments are skipped. The returned list always ends
    with an ``eof`` token positioned just past the input.
    """
    tokens: List[Token] = []
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i, line, col = i + 1, line + 1, 1
            continue
        if ch in " \t\r\f\v":
            i, col = i + 1, col + 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i, col = i + 1, col + 1
            continue
        start, start_col = i, col
        if ch.isascii() and (ch.isalpha() or ch == "_"):
            while i < n and text[i].isascii() and (text[i].isalnum() or text[i] == "_"):
                i += 1
            lexeme = text[start:i]
            kind = "keyword" if lexeme in KEYWORDS else "ident"
        elif ch.isascii() and ch.isdigit():
            while i < n and text[i].isascii() and text[i].isdigit():
                i += 1
            lexeme, kind = text[start:i], "integer"
        elif ch == '"':
            i += 1
            while i < n and text[i] not in '"\n':
                i += 1
            if i >= n or text[i] != '"':
                raise ParseError("unterminated string", line, start_col, line_of(text, line))
            i += 1
            lexeme, kind = text[start + 1 : i - 1], "string"
        elif ch in SYMBOLS:
            i += 1
            lexeme, kind = ch, "symbol"
        else:
            raise ParseError(f"illegal character {ch!r}", line, col, line_of(text, line))
        col += i - start
        tokens.append(Token(kind, lexeme, line, start_col, start))
    tokens.append(Token("eof", "", line, col, n))
    return tokens
