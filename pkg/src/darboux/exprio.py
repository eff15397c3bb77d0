"""Text format for polynomials.

Grammar (multiplication is always explicit)::

    expr     := term (('+' | '-') term)*
    term     := factor ('*' factor)*
    factor   := rational | variable ('^' uint)? | '(' expr ')' | '-' factor
    rational := int ('/' uint)?

Printing is canonical: terms in descending graded-lex order, coefficients
as reduced ``a/b``, and inside a monomial the variables appear in reverse
context order (parameters before state variables, ``q^2*z`` style).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .poly import DEFAULT_CONTEXT, Polynomial, VariableContext

__all__ = ["SourceSpan", "ParseError", "parse_polynomial", "print_polynomial", "format_rational"]


@dataclass(frozen=True)
class SourceSpan:
    start: int
    end: int

    def __post_init__(self) -> None:
        if self.start > self.end:
            raise ValueError("span start after end")


class ParseError(ValueError):
    def __init__(self, message: str, span: SourceSpan, expected: frozenset[str] = frozenset()):
        self.message = message
        self.span = span
        self.expected = expected
        detail = f" (expected one of: {', '.join(sorted(expected))})" if expected else ""
        super().__init__(f"{message} at {span.start}..{span.end}{detail}")


_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()]))")


@dataclass
class _Tok:
    kind: str  # 'int' | 'name' | 'op' | 'eof'
    text: str
    span: SourceSpan


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", SourceSpan(pos, pos + 1))
        kind = m.lastgroup
        start = m.start(kind)
        toks.append(_Tok(kind, m.group(kind), SourceSpan(start, m.end())))
        pos = m.end()
    toks.append(_Tok("eof", "", SourceSpan(n, n)))
    return toks


class _Parser:
    def __init__(self, text: str, ctx: VariableContext):
        self.toks = _tokenize(text)
        self.i = 0
        self.ctx = ctx

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, text: str) -> _Tok:
        t = self.tok
        if t.kind == "op" and t.text == text:
            return self.take()
        raise ParseError(f"unexpected {_describe(t)}", t.span, frozenset({repr(text)}))

    def uint(self) -> int:
        t = self.tok
        if t.kind != "int":
            raise ParseError(f"unexpected {_describe(t)}", t.span, frozenset({"unsigned integer"}))
        self.take()
        return int(t.text)

    def parse(self) -> Polynomial:
        if self.tok.kind == "eof":
            raise ParseError("empty expression", self.tok.span, _FACTOR_START)
        e = self.expr()
        if self.tok.kind != "eof":
            raise ParseError(f"unexpected {_describe(self.tok)}", self.tok.span,
                             frozenset({"'+'", "'-'", "'*'", "end of input"}))
        return e

    def expr(self) -> Polynomial:
        acc = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self.take().text
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> Polynomial:
        acc = self.factor()
        while self.tok.kind == "op" and self.tok.text == "*":
            self.take()
            acc = acc * self.factor()
        return acc

    def factor(self) -> Polynomial:
        t = self.tok
        if t.kind == "int":
            self.take()
            num = int(t.text)
            if self.tok.kind == "op" and self.tok.text == "/":
                slash = self.take()
                den_tok = self.tok
                den = self.uint()
                if den == 0:
                    raise ParseError("zero denominator", SourceSpan(slash.span.start, den_tok.span.end))
                return self.ctx.const(Fraction(num, den))
            return self.ctx.const(num)
        if t.kind == "name":
            self.take()
            if t.text not in self.ctx:
                raise ParseError(f"unknown variable {t.text!r}", t.span,
                                 frozenset(repr(n) for n in self.ctx.names))
            v = self.ctx.var(t.text)
            if self.tok.kind == "op" and self.tok.text == "^":
                self.take()
                return v ** self.uint()
            return v
        if t.kind == "op" and t.text == "(":
            self.take()
            inner = self.expr()
            self.expect(")")
            return inner
        if t.kind == "op" and t.text == "-":
            self.take()
            return -self.factor()
        raise ParseError(f"unexpected {_describe(t)}", t.span, _FACTOR_START)


_FACTOR_START = frozenset({"integer", "variable", "'('", "'-'"})


def _describe(t: _Tok) -> str:
    return "end of input" if t.kind == "eof" else repr(t.text)


def parse_polynomial(text: str, ctx: VariableContext = DEFAULT_CONTEXT) -> Polynomial:
    """Parse ``text``; raises :class:`ParseError` carrying a source span."""
    return _Parser(text, ctx).parse()


def format_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _monomial_text(ctx: VariableContext, e: tuple[int, ...]) -> str:
    parts = []
    for name, k in reversed(list(zip(ctx.names, e))):
        if k == 1:
            parts.append(name)
        elif k:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def print_polynomial(f: Polynomial) -> str:
    if f.is_zero():
        return "0"
    out = []
    for i, (e, c) in enumerate(f.items()):
        mono = _monomial_text(f.context, e)
        neg = c < 0
        a = -c if neg else c
        if not mono:
            body = format_rational(a)
        elif a == 1:
            body = mono
        else:
            body = f"{format_rational(a)}*{mono}"
        if i == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)
