"""A deliberately small expression language for simulation inputs.

Grammar (recursive descent)::

    expr  := term (('+' | '-') term)*
    term  := unary (('*' | '/') unary)*
    unary := '-' unary | atom
    atom  := NUMBER | 't' | FUNC '(' expr ')' | '(' expr ')'

with FUNC one of sin, cos, exp, abs.  ``parse_expr`` compiles the text to a
plain float -> float function.
"""

from __future__ import annotations

import math
import re
from typing import Callable

from .errors import ConfigError

_TOKEN = re.compile(r"\s*(\d+\.\d*(?:[eE][-+]?\d+)?|\.\d+(?:[eE][-+]?\d+)?|\d+(?:[eE][-+]?\d+)?|[A-Za-z_]\w*|[()+\-*/]|\S)")

_FUNCS: dict[str, Callable[[float], float]] = {
    "sin": math.sin,
    "cos": math.cos,
    "exp": math.exp,
    "abs": abs,
}


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens: list[tuple[str, int]] = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None:
                break
            if m.group(1).strip():
                self.tokens.append((m.group(1), m.start(1) + 1))
            pos = m.end()
        self.pos = 0

    def error(self, message: str) -> ConfigError:
        col = self.tokens[self.pos][1] if self.pos < len(self.tokens) else len(self.text) + 1
        return ConfigError(f"{message} in expression {self.text!r}", col=col)

    def peek(self) -> str | None:
        return self.tokens[self.pos][0] if self.pos < len(self.tokens) else None

    def take(self) -> str:
        tok = self.peek()
        if tok is None:
            raise self.error("unexpected end")
        self.pos += 1
        return tok

    def expr(self) -> Callable[[float], float]:
        left = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            right = self.term()
            left = (lambda l, r: lambda t: l(t) + r(t))(left, right) if op == "+" \
                else (lambda l, r: lambda t: l(t) - r(t))(left, right)
        return left

    def term(self) -> Callable[[float], float]:
        left = self.unary()
        while self.peek() in ("*", "/"):
            op = self.take()
            right = self.unary()
            left = (lambda l, r: lambda t: l(t) * r(t))(left, right) if op == "*" \
                else (lambda l, r: lambda t: l(t) / r(t))(left, right)
        return left

    def unary(self) -> Callable[[float], float]:
        if self.peek() == "-":
            self.take()
            inner = self.unary()
            return lambda t: -inner(t)
        return self.atom()

    def atom(self) -> Callable[[float], float]:
        tok = self.peek()
        if tok is None:
            raise self.error("unexpected end")
        if tok == "(":
            self.take()
            inner = self.expr()
            if self.peek() != ")":
                raise self.error("expected ')'")
            self.take()
            return inner
        if re.fullmatch(r"(\d+\.\d*|\.\d+|\d+)([eE][-+]?\d+)?", tok):
            self.take()
            value = float(tok)
            return lambda t: value
        if tok == "t":
            self.take()
            return lambda t: t
        if tok in _FUNCS:
            self.take()
            if self.peek() != "(":
                raise self.error(f"expected '(' after {tok}")
            self.take()
            inner = self.expr()
            if self.peek() != ")":
                raise self.error("expected ')'")
            self.take()
            fn = _FUNCS[tok]
            return lambda t: fn(inner(t))
        raise self.error(f"unexpected token {tok!r}")


def parse_expr(text: str) -> Callable[[float], float]:
    parser = _Parser(text)
    if not parser.tokens:
        raise ConfigError(f"empty expression {text!r}")
    fn = parser.expr()
    if parser.peek() is not None:
        raise parser.error(f"unexpected trailing {parser.peek()!r}")
    return fn
