"""Tiny arithmetic grammar for budget and K rules over the dimension n.

Accepted: integer literals, the variable ``n``, binary ``+`` and ``*``,
right-associative ``^``, parentheses, and the functions ``sqrt``, ``ln``
and ``log2``.  Examples: ``n^2``, ``sqrt(n)*ln(n)``, ``10^6``.
"""

from __future__ import annotations

import math
import re

from .landscape import ConfigurationError

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\^)|(\*)|(\+)|(\()|(\)))")
_FUNCS = {"sqrt": math.sqrt, "ln": math.log, "log2": math.log2}


def _tokenize(src: str) -> list:
    out = []
    pos = 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if not m or m.end() == pos:
            rest = src[pos:].strip()
            if not rest:
                break
            raise ConfigurationError(f"invalid expression {src!r}: unexpected {rest[:10]!r}")
        if m.group(1):
            out.append(("num", int(m.group(1))))
        elif m.group(2):
            out.append(("name", m.group(2)))
        else:
            out.append(("op", m.group(0).strip()))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.tokens = _tokenize(src)
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        if tok is None:
            raise ConfigurationError(f"invalid expression {self.src!r}: unexpected end")
        self.i += 1
        return tok

    def expect(self, op: str):
        tok = self.take()
        if tok != ("op", op):
            raise ConfigurationError(f"invalid expression {self.src!r}: expected {op!r}")

    def parse(self):
        node = self.sum()
        if self.peek() is not None:
            raise ConfigurationError(f"invalid expression {self.src!r}: trailing tokens")
        return node

    def sum(self):
        node = self.product()
        while self.peek() == ("op", "+"):
            self.take()
            rhs = self.product()
            node = ("+", node, rhs)
        return node

    def product(self):
        node = self.power()
        while self.peek() == ("op", "*"):
            self.take()
            rhs = self.power()
            node = ("*", node, rhs)
        return node

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            return ("^", base, self.power())
        return base

    def atom(self):
        tok = self.take()
        if tok[0] == "num":
            return ("num", tok[1])
        if tok[0] == "name":
            if tok[1] == "n":
                return ("n",)
            if tok[1] in _FUNCS:
                self.expect("(")
                arg = self.sum()
                self.expect(")")
                return ("call", tok[1], arg)
            raise ConfigurationError(f"invalid expression {self.src!r}: unknown name {tok[1]!r}")
        if tok == ("op", "("):
            node = self.sum()
            self.expect(")")
            return node
        raise ConfigurationError(f"invalid expression {self.src!r}: unexpected {tok[1]!r}")


def parse_expression(src: str):
    """Parse and return an evaluator ``f(n) -> float``; raises on bad syntax."""
    tree = _Parser(src).parse()

    def ev(node, n):
        kind = node[0]
        if kind == "num":
            return float(node[1])
        if kind == "n":
            return float(n)
        if kind == "+":
            return ev(node[1], n) + ev(node[2], n)
        if kind == "*":
            return ev(node[1], n) * ev(node[2], n)
        if kind == "^":
            return ev(node[1], n) ** ev(node[2], n)
        return _FUNCS[node[1]](ev(node[2], n))

    return lambda n: ev(tree, n)


def evaluate_expression(src: str, n: int) -> float:
    return parse_expression(src)(n)


def budget_for(src: str, n: int) -> int:
    """Evaluate a budget rule and round to a whole iteration count >= 1."""
    v = evaluate_expression(src, n)
    b = int(round(v))
    if b < 1:
        raise ConfigurationError(f"budget rule {src!r} gives {v} at n={n}; must be >= 1")
    return b
