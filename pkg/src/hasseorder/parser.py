"""Recursive-descent parser for the element grammar used by the CLI.

Grammar (whitespace insensitive):

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := ('-')* atom ('^' INT)?
    atom   := INT | 'th' | 't' | 'x' | 'pK' | '(' expr ')'

`th` is the generator of T over the prime ring, `t` the equal-mode
uniformizer, `x` the element pi_D, and `pK` the uniformizer of K.
Expressions evaluate to elements of the order A (DElem).
"""

from __future__ import annotations

from .algebra import AlgebraCtx
from .errors import ParseError
from .localring import EQUAL


class _Lexer:
    def __init__(self, text):
        self.text = text
        self.pos = 0
        self.tokens = []
        self._scan()
        self.idx = 0

    def _scan(self):
        text = self.text
        i = 0
        while i < len(text):
            c = text[i]
            if c.isspace():
                i += 1
                continue
            if c.isdigit():
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                self.tokens.append(("int", int(text[i:j]), i))
                i = j
            elif text.startswith("th", i):
                self.tokens.append(("th", None, i))
                i += 2
            elif text.startswith("pK", i):
                self.tokens.append(("pK", None, i))
                i += 2
            elif c in "tx":
                self.tokens.append((c, None, i))
                i += 1
            elif c in "+-*^()":
                self.tokens.append((c, None, i))
                i += 1
            else:
                raise ParseError(f"unexpected character {c!r}", i)

    def peek(self):
        if self.idx < len(self.tokens):
            return self.tokens[self.idx]
        return ("eof", None, len(self.text))

    def next(self):
        tok = self.peek()
        self.idx += 1
        return tok


class Parser:
    def __init__(self, ctx: AlgebraCtx):
        self.ctx = ctx

    def parse(self, text):
        lex = _Lexer(text)
        value = self._expr(lex)
        tok = lex.peek()
        if tok[0] != "eof":
            raise ParseError(f"unexpected token {tok[0]!r}", tok[2])
        return value

    def _expr(self, lex):
        value = self._term(lex)
        while lex.peek()[0] in ("+", "-"):
            op = lex.next()[0]
            rhs = self._term(lex)
            value = value + rhs if op == "+" else value - rhs
        return value

    def _term(self, lex):
        value = self._factor(lex)
        while lex.peek()[0] == "*":
            lex.next()
            value = value * self._factor(lex)
        return value

    def _factor(self, lex):
        neg = False
        while lex.peek()[0] == "-":
            lex.next()
            neg = not neg
        value = self._atom(lex)
        if lex.peek()[0] == "^":
            pos = lex.next()[2]
            tok = lex.next()
            if tok[0] != "int":
                raise ParseError("exponent must be a non-negative integer",
                                 tok[2] if tok[0] != "eof" else pos + 1)
            value = value ** tok[1]
        return -value if neg else value

    def _atom(self, lex):
        ctx = self.ctx
        tok = lex.next()
        kind, val, pos = tok
        if kind == "int":
            return ctx.from_int(val)
        if kind == "th":
            return ctx.from_T(ctx.T.gen)
        if kind == "t":
            if ctx.T.mode != EQUAL:
                raise ParseError("symbol 't' is only defined in equal "
                                 "characteristic", pos)
            return ctx.from_T(ctx.T.uniformizer)
        if kind == "x":
            return ctx.pi_D
        if kind == "pK":
            return ctx.from_T(ctx.T.uniformizer)
        if kind == "(":
            value = self._expr(lex)
            closing = lex.next()
            if closing[0] != ")":
                raise ParseError("expected ')'", closing[2])
            return value
        raise ParseError(f"unexpected token {kind!r}", pos)


def evaluate(ctx: AlgebraCtx, text: str):
    return Parser(ctx).parse(text)
