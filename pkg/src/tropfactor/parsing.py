"""Recursive-descent parser for max-plus expressions.

Grammar (whitespace insignificant, "2x" sugar for "2*x"):

    expr    := term { ("+" | "-") term }
    term    := [ posint "*" ] atom | "-" term
    atom    := "max" "(" expr { "," expr } ")" | linear | "(" expr ")"
    linear  := "0" | [int "*"?] ("x" | "y")

Bare integer constants other than 0 are rejected: tropical coefficients are
fixed at zero.
"""

from __future__ import annotations

from dataclasses import dataclass

from .maxplus import Linear, Max, MaxPlusExpr, Negate, Scale, Sum


class ExpressionSyntaxError(ValueError):
    """Parse failure with a 1-based source column."""

    def __init__(self, message: str, column: int):
        super().__init__(f"{message} (column {column})")
        self.column = column


@dataclass(frozen=True)
class _Token:
    kind: str
    value: object
    col: int


_SYMBOLS = {"(": "LP", ")": "RP", ",": "COMMA", "+": "PLUS", "-": "MINUS", "*": "STAR"}


def _tokenize(src: str) -> list[_Token]:
    tokens: list[_Token] = []
    i = 0
    while i < len(src):
        c = src[i]
        col = i + 1
        if c.isspace():
            i += 1
            continue
        if c in _SYMBOLS:
            tokens.append(_Token(_SYMBOLS[c], c, col))
            i += 1
            continue
        if c.isdigit():
            j = i
            while j < len(src) and src[j].isdigit():
                j += 1
            tokens.append(_Token("INT", int(src[i:j]), col))
            i = j
            continue
        if c.isalpha():
            j = i
            while j < len(src) and src[j].isalpha():
                j += 1
            word = src[i:j]
            if word == "max":
                tokens.append(_Token("MAX", word, col))
            elif word in ("x", "y"):
                tokens.append(_Token("VAR", word, col))
            else:
                raise ExpressionSyntaxError(f"unknown name '{word}'", col)
            i = j
            continue
        raise ExpressionSyntaxError(f"unexpected character '{c}'", col)
    tokens.append(_Token("END", None, len(src) + 1))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def take(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str, what: str) -> _Token:
        tok = self.take()
        if tok.kind != kind:
            raise ExpressionSyntaxError(f"expected {what}", tok.col)
        return tok

    def expr(self) -> MaxPlusExpr:
        node = self.term()
        while self.peek().kind in ("PLUS", "MINUS"):
            op = self.take()
            rhs = self.term()
            node = Sum((node, rhs if op.kind == "PLUS" else Negate(rhs)))
        return node

    def term(self) -> MaxPlusExpr:
        tok = self.peek()
        if tok.kind == "MINUS":
            self.take()
            return Negate(self.term())
        if tok.kind == "INT":
            self.take()
            k = tok.value
            nxt = self.peek()
            if nxt.kind == "STAR":
                self.take()
                if k <= 0:
                    raise ExpressionSyntaxError("positive scaling only", tok.col)
                return Scale(k, self.term())
            if nxt.kind == "VAR":
                self.take()
                return Linear(k, 0) if nxt.value == "x" else Linear(0, k)
            if k != 0:
                raise ExpressionSyntaxError("nonzero tropical coefficient unsupported", tok.col)
            return Linear(0, 0)
        return self.atom()

    def atom(self) -> MaxPlusExpr:
        tok = self.take()
        if tok.kind == "MAX":
            self.expect("LP", "'(' after max")
            args = [self.expr()]
            while self.peek().kind == "COMMA":
                self.take()
                args.append(self.expr())
            self.expect("RP", "')'")
            return Max(tuple(args))
        if tok.kind == "LP":
            node = self.expr()
            self.expect("RP", "')'")
            return node
        if tok.kind == "VAR":
            return Linear(1, 0) if tok.value == "x" else Linear(0, 1)
        raise ExpressionSyntaxError(f"unexpected token '{tok.value}'", tok.col)


def parse_expression(src: str) -> MaxPlusExpr:
    """Parse a max-plus expression source string into an expression tree."""
    parser = _Parser(_tokenize(src))
    node = parser.expr()
    end = parser.peek()
    if end.kind != "END":
        raise ExpressionSyntaxError(f"unexpected trailing input '{end.value}'", end.col)
    return node
