"""Text grammar for polynomials and maps, plus the canonical formatter.

Grammar: variables ``x1..xN`` (aliases ``x, y, z, w`` for N <= 4), integer or
``a/b`` rational literals, operators ``+ - * ^``, parentheses.  ``^`` binds
tighter than ``*``, which binds tighter than ``+``/``-``; there is no
implicit multiplication.  Whitespace is insignificant.

The formatter emits graded-lexicographically sorted terms, so equal
polynomials always format identically and ``format(parse(t))`` is a fixpoint
of ``parse``/``format``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Sequence

from .errors import DimensionMismatch, ParseError, ShapeError
from .poly import Polynomial, PolyMap, _grlex_key

DEFAULT_ALIASES = "xyzw"


class _Token:
    __slots__ = ("kind", "value", "line", "column")

    def __init__(self, kind, value, line, column):
        self.kind = kind
        self.value = value
        self.line = line
        self.column = column


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    line, col = 1, 1
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            i += 1
            col += 1
            continue
        if ch in "+-*^()/":
            tokens.append(_Token(ch, ch, line, col))
            i += 1
            col += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(_Token("int", int(text[i:j]), line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha():
            j = i + 1
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(_Token("name", text[i:j], line, col))
            col += j - i
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(_Token("end", None, line, col))
    return tokens


class _Parser:
    def __init__(self, text: str, n: int, aliases: str | None):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.n = n
        self.aliases = aliases

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(
                f"expected {kind!r}, found {tok.value!r}", tok.line, tok.column
            )
        return self.advance()

    def fail(self, message: str):
        tok = self.peek()
        raise ParseError(message, tok.line, tok.column)

    def parse(self) -> Polynomial:
        p = self.expression()
        if self.peek().kind != "end":
            self.fail(f"trailing input starting at {self.peek().value!r}")
        return p

    def expression(self) -> Polynomial:
        sign = 1
        while self.peek().kind in "+-":
            if self.advance().kind == "-":
                sign = -sign
        p = self.term().scale(sign)
        while self.peek().kind in "+-":
            op = self.advance().kind
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Polynomial:
        p = self.factor()
        while self.peek().kind == "*":
            self.advance()
            p = p * self.factor()
        return p

    def factor(self) -> Polynomial:
        sign = 1
        while self.peek().kind in "+-":
            if self.advance().kind == "-":
                sign = -sign
        p = self.atom()
        if self.peek().kind == "^":
            self.advance()
            e = self.expect("int").value
            p = p ** e
        return p.scale(sign)

    def atom(self) -> Polynomial:
        tok = self.peek()
        if tok.kind == "(":
            self.advance()
            p = self.expression()
            self.expect(")")
            return p
        if tok.kind == "int":
            self.advance()
            num = tok.value
            if self.peek().kind == "/":
                self.advance()
                den = self.expect("int").value
                if den == 0:
                    raise ParseError("zero denominator", tok.line, tok.column)
                return Polynomial.const(self.n, Fraction(num, den))
            return Polynomial.const(self.n, num)
        if tok.kind == "name":
            self.advance()
            return Polynomial.variable(self.n, self.variable_index(tok))
        self.fail(f"expected a number, variable or '(', found {tok.value!r}")

    def variable_index(self, tok: _Token) -> int:
        name = tok.value
        if name[0] == "x" and len(name) > 1 and name[1:].isdigit():
            i = int(name[1:])
            if not 1 <= i <= self.n:
                raise ParseError(
                    f"variable {name} out of range for dimension {self.n}",
                    tok.line,
                    tok.column,
                )
            return i
        if self.aliases and len(name) == 1 and name in self.aliases:
            i = self.aliases.index(name) + 1
            if i <= self.n:
                return i
        raise ParseError(f"unknown variable {name!r}", tok.line, tok.column)


def parse_polynomial(
    text: str, n: int, aliases: str | None = DEFAULT_ALIASES
) -> Polynomial:
    """Parse a single polynomial in an n-variable ring."""
    if aliases is not None and n > len(aliases):
        aliases = None
    return _Parser(text, n, aliases).parse()


def parse_map(text: str, aliases: str | None = DEFAULT_ALIASES) -> PolyMap:
    """Parse ';'-separated components; the component count fixes the dimension."""
    parts = [part for part in text.split(";") if part.strip()]
    if not parts:
        raise ParseError("empty map text")
    n = len(parts)
    return PolyMap([parse_polynomial(part, n, aliases) for part in parts])


def _format_monomial(exps, var_names: Sequence[str]) -> str:
    parts = []
    for name, e in zip(var_names, exps):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_polynomial(
    p: Polynomial, aliases: str | None = DEFAULT_ALIASES
) -> str:
    """Canonical text form: graded-lex descending terms."""
    if p.is_zero():
        return "0"
    if aliases is not None and p.n <= len(aliases):
        var_names = list(aliases[: p.n])
    else:
        var_names = [f"x{i}" for i in range(1, p.n + 1)]
    pieces = []
    for exps in sorted(p.terms, key=_grlex_key, reverse=True):
        coeff = p.coefficient(exps)
        mono = _format_monomial(exps, var_names)
        mag = abs(coeff)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not pieces:
            pieces.append(body if coeff > 0 else f"-{body}")
        else:
            pieces.append(f"+ {body}" if coeff > 0 else f"- {body}")
    return " ".join(pieces)


def format_map(f: PolyMap, aliases: str | None = DEFAULT_ALIASES) -> str:
    return "; ".join(format_polynomial(p, aliases) for p in f.components)


def map_to_document(f: PolyMap, aliases: str | None = DEFAULT_ALIASES) -> dict:
    """JSON-ready document {"n": ..., "components": [...]}."""
    return {
        "n": f.dimension,
        "components": [format_polynomial(p, aliases) for p in f.components],
    }


def map_from_document(doc: dict, aliases: str | None = DEFAULT_ALIASES) -> PolyMap:
    try:
        n = int(doc["n"])
        components = list(doc["components"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed map document: {exc}")
    if len(components) != n:
        raise DimensionMismatch(
            f"document declares n={n} but has {len(components)} components"
        )
    return PolyMap([parse_polynomial(c, n, aliases) for c in components])


def load_map_text(text: str, aliases: str | None = DEFAULT_ALIASES) -> PolyMap:
    """Load a map from raw file content: JSON document or ';'-separated text."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON map document: {exc}")
        return map_from_document(doc, aliases)
    return parse_map(text, aliases)
