"""Lexer for the Pascal-like surface language.

Comments are ``{ ... }`` and do not nest. The typographic minus sign
(U+2212) is accepted and normalized to ASCII ``-``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import LexError

KEYWORDS = frozenset({
    "Object", "function", "infix", "prefix", "var", "par",
    "begin", "end", "if", "then", "else", "Return", "fail", "EVAL",
})

# kinds
KEYWORD = "keyword"
IDENT = "identifier"
INT = "integer-literal"
OP = "operator-symbol"
PUNCT = "punctuation"

_OPERATOR_CHARS = {"+", "-", "*", "="}
_PUNCT_CHARS = {";", ",", "(", ")", ".", ":"}


@dataclass(frozen=True)
class Token:
    kind: str
    lexeme: str
    span: tuple[int, int, int]  # (line, column, length)

    def __repr__(self):
        return f"Token({self.kind}, {self.lexeme!r})"


def tokenize(source: str) -> list[Token]:
    """Split source text into tokens, skipping whitespace and comments."""
    tokens: list[Token] = []
    line, col = 1, 1
    i = 0
    n = len(source)

    def advance(text: str):
        nonlocal line, col
        for ch in text:
            if ch == "\n":
                line += 1
                col = 1
            else:
                col += 1

    while i < n:
        ch = source[i]
        if ch in " \t\r\n":
            advance(ch)
            i += 1
            continue
        if ch == "{":
            end = source.find("}", i + 1)
            if end < 0:
                raise LexError("unterminated comment", (line, col, 1))
            advance(source[i:end + 1])
            i = end + 1
            continue
        start = (line, col)
        if ch == "−":  # typographic minus; parser treats it as "-"
            tokens.append(Token(OP, ch, (line, col, 1)))
            advance(ch)
            i += 1
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (source[j].isalnum() or source[j] == "_"):
                j += 1
            lexeme = source[i:j]
            kind = KEYWORD if lexeme in KEYWORDS else IDENT
            tokens.append(Token(kind, lexeme, (*start, j - i)))
            advance(lexeme)
            i = j
            continue
        if ch.isdigit():
            j = i
            while j < n and source[j].isdigit():
                j += 1
            tokens.append(Token(INT, source[i:j], (*start, j - i)))
            advance(source[i:j])
            i = j
            continue
        if ch == ":" and i + 1 < n and source[i + 1] == "=":
            tokens.append(Token(OP, ":=", (*start, 2)))
            advance(":=")
            i += 2
            continue
        if ch in _OPERATOR_CHARS:
            tokens.append(Token(OP, ch, (*start, 1)))
            advance(ch)
            i += 1
            continue
        if ch in _PUNCT_CHARS:
            tokens.append(Token(PUNCT, ch, (*start, 1)))
            advance(ch)
            i += 1
            continue
        raise LexError(f"unexpected character {ch!r}", (line, col, 1))
    return tokens
