"""Text syntax for polynomials.

Output: ``coef * gen^e * gen^e`` terms in descending monomial order, with
coefficients written ``num/den``.  Input accepts the same syntax plus
parentheses, so ``(p4 - chi)^2`` or ``7/45*p8 - 1/45*p4^2`` both parse.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Mapping

from .poly import GeneratorTable, GradedPolynomial

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")


class ParseError(ValueError):
    pass


def format_rational(c: Fraction) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_monomial(mono, table: GeneratorTable) -> str:
    parts = []
    for e, g in zip(mono, table.gens):
        if e == 1:
            parts.append(g.name)
        elif e > 1:
            parts.append(f"{g.name}^{e}")
    return " * ".join(parts)


def format_poly(p: GradedPolynomial) -> str:
    if p.is_zero():
        return "0"
    out = []
    for i, (mono, c) in enumerate(p.sorted_terms()):
        body = format_monomial(mono, p.table)
        neg = c < 0
        a = -c if neg else c
        if not body:
            term = format_rational(a)
        elif a == 1:
            term = body
        else:
            term = f"{format_rational(a)} * {body}"
        if i == 0:
            out.append(("-" if neg else "") + term)
        else:
            out.append((" - " if neg else " + ") + term)
    return "".join(out)


def _tokenize(text: str) -> list[tuple[str, str]]:
    pos, toks = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        num, ident, op = m.groups()
        if num is not None:
            toks.append(("num", num))
        elif ident is not None:
            toks.append(("id", ident))
        else:
            toks.append(("op", "^" if op == "**" else op))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return toks


class _Parser:
    def __init__(self, text, table, names):
        self.toks = _tokenize(text)
        self.i = 0
        self.table = table
        self.names = names or {}

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, kind=None, val=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (val and tok[1] != val):
            raise ParseError(f"expected {val or kind}, got {tok[1]!r}")
        self.i += 1
        return tok

    def parse(self) -> GradedPolynomial:
        if not self.toks:
            raise ParseError("empty expression")
        out = self.expr()
        if self.i != len(self.toks):
            raise ParseError(f"trailing input at token {self.peek()[1]!r}")
        return out

    def expr(self):
        acc = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self):
        acc = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            rhs = self.unary()
            if op == "*":
                acc = acc * rhs
            else:
                if not (rhs.is_zero() or set(rhs.terms) == {self.table.unit()}):
                    raise ParseError("division only by rational constants")
                c = rhs.constant_term()
                if c == 0:
                    raise ParseError("division by zero")
                acc = acc / c
        return acc

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            e = int(self.take("num")[1])
            base = base ** e
        return base

    def atom(self):
        kind, val = self.peek()
        if kind == "num":
            self.take()
            return GradedPolynomial.const(self.table, int(val))
        if kind == "id":
            self.take()
            if val in self.names:
                v = self.names[val]
                if v.table != self.table:
                    raise ParseError(f"name {val!r} is bound over a different ring")
                return v
            if val in self.table:
                return GradedPolynomial.gen(self.table, val)
            raise ParseError(f"unknown symbol {val!r}")
        if (kind, val) == ("op", "("):
            self.take()
            inner = self.expr()
            self.take("op", ")")
            return inner
        raise ParseError(f"unexpected token {val!r}")


def parse_poly(text: str, table: GeneratorTable, names: Mapping[str, GradedPolynomial] | None = None) -> GradedPolynomial:
    """Parse ``text`` into a polynomial over ``table`` (no reduction)."""
    return _Parser(text, table, names).parse()
