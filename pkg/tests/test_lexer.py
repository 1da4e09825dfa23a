import pytest

from psipp.errors import LexError
from psipp.lexer import IDENT, INT, KEYWORD, OP, PUNCT, tokenize


def kinds_and_lexemes(tokens):
    return [(t.kind, t.lexeme) for t in tokens]


def test_simple_assignment():
    assert kinds_and_lexemes(tokenize("a := 1;")) == [
        (IDENT, "a"), (OP, ":="), (INT, "1"), (PUNCT, ";")]


def test_comment_skipped():
    assert tokenize("{ Group }") == []


def test_sum_statement():
    assert kinds_and_lexemes(tokenize("b := c + d;")) == [
        (IDENT, "b"), (OP, ":="), (IDENT, "c"), (OP, "+"),
        (IDENT, "d"), (PUNCT, ";")]


def test_keywords_recognized():
    for kw in ("Object", "function", "infix", "prefix", "var", "par",
               "begin", "end", "if", "then", "else", "Return", "fail",
               "EVAL"):
        (tok,) = tokenize(kw)
        assert tok.kind == KEYWORD


def test_typographic_minus():
    toks = tokenize("−A")
    assert toks[0].kind == OP


def test_lex_error_has_span():
    with pytest.raises(LexError) as err:
        tokenize("a := 1;\nb ? 2;")
    assert err.value.span == (2, 3, 1)


def test_unterminated_comment():
    with pytest.raises(LexError):
        tokenize("a := { oops")


def test_spans_reconstruct_source():
    source = ("Group = Object;\n"
              "  function infix +(A, B : Group) : Group; { C++ version }\n"
              "end; { Group }\n"
              "x := 2*(1+2*i);\n")
    lines = source.splitlines()
    for tok in tokenize(source):
        line, col, length = tok.span
        assert lines[line - 1][col - 1:col - 1 + length] == tok.lexeme
