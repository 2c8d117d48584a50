"""Text notation for sets, polynomials and piecewise functions.

Sets:       ``[0,1) U (2,3] U {5}``, ``(-inf,0]``, ``R``, ``empty``
Polynomials: ``3/2*x^2 - x + 1/3`` (rationals, ``*``, ``/`` by constants,
             ``^`` with integer exponents, parentheses)
Piecewise:  ``[0,1): x^2; [1,2]: 2*x - 1``

Printing (``str`` on the objects) produces text these parsers read back.
"""

from __future__ import annotations

import re

from .pwfunc import PiecewiseFunc
from .realset import Q, NEG_INF, POS_INF, Interval, RealSet, SetError
from .roots import Poly, PolyError

_NUMBER = re.compile(r"\d+(\.\d*)?(/\d+)?|\.\d+")


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(message)
        self.message = message
        self.text = text
        self.pos = pos

    def diagnostic(self) -> str:
        return f"{self.message} at column {self.pos + 1}\n  {self.text}\n  {' ' * self.pos}^"

    def __str__(self):
        return self.diagnostic()


class _Reader:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message, pos=None):
        return ParseError(message, self.text, self.pos if pos is None else pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def accept(self, token: str) -> bool:
        self.skip()
        if self.text.startswith(token, self.pos):
            self.pos += len(token)
            return True
        return False

    def expect(self, token: str):
        if not self.accept(token):
            found = self.peek() or "end of input"
            raise self.error(f"expected {token!r}, found {found!r}")

    def at_end(self) -> bool:
        self.skip()
        return self.pos >= len(self.text)

    def number(self, allow_inf=False):
        self.skip()
        start = self.pos
        sign = 1
        if self.accept("-"):
            sign = -1
        elif self.accept("+"):
            pass
        self.skip()
        if allow_inf and (self.accept("inf") or self.accept("oo")):
            return POS_INF if sign > 0 else NEG_INF
        m = _NUMBER.match(self.text, self.pos)
        if not m:
            raise self.error("expected a number", start)
        tok = m.group(0)
        self.pos = m.end()
        if tok.count("/") and "." in tok:
            raise self.error("mixed decimal and fraction", start)
        try:
            value = Q(tok)
        except (ValueError, ZeroDivisionError):
            raise self.error(f"bad number {tok!r}", start) from None
        return sign * value


# --- sets ----------------------------------------------------------------------


def _interval(r: _Reader) -> list[Interval]:
    start = r.pos
    if r.accept("{"):
        pts = [r.number()]
        while r.accept(","):
            pts.append(r.number())
        r.expect("}")
        return [Interval.point(p) for p in pts]
    if r.accept("["):
        lo_closed = True
    elif r.accept("("):
        lo_closed = False
    else:
        raise r.error("expected '[', '(' or '{'")
    lo = r.number(allow_inf=True)
    r.expect(",")
    hi = r.number(allow_inf=True)
    if r.accept("]"):
        hi_closed = True
    elif r.accept(")"):
        hi_closed = False
    else:
        raise r.error("expected ']' or ')'")
    if (lo == NEG_INF and lo_closed) or (hi == POS_INF and hi_closed):
        raise r.error("an infinite endpoint cannot be included", start)
    try:
        return [Interval(lo, hi, lo_closed, hi_closed)]
    except SetError as e:
        raise r.error(str(e), start) from None


def _set(r: _Reader) -> RealSet:
    if r.accept("empty") or r.accept("∅"):
        return RealSet.empty()
    if r.peek() == "R" and r.accept("R"):
        return RealSet.reals()
    pieces = _interval(r)
    while r.accept("U") or r.accept("u") or r.accept("∪"):
        pieces.extend(_interval(r))
    return RealSet(pieces)


def parse_set(text: str) -> RealSet:
    r = _Reader(text)
    s = _set(r)
    if not r.at_end():
        raise r.error("unexpected trailing input")
    return s


def parse_number(text: str) -> Q:
    r = _Reader(text)
    x = r.number()
    if not r.at_end():
        raise r.error("unexpected trailing input")
    return x


# --- polynomials ----------------------------------------------------------------


def _expr(r: _Reader) -> Poly:
    if r.accept("-"):
        acc = -_term(r)
    else:
        r.accept("+")
        acc = _term(r)
    while True:
        if r.accept("+"):
            acc = acc + _term(r)
        elif r.peek() == "-":
            r.accept("-")
            acc = acc - _term(r)
        else:
            return acc


def _term(r: _Reader) -> Poly:
    acc = _power(r)
    while True:
        if r.accept("*"):
            acc = acc * _power(r)
        elif r.peek() == "/":
            pos = r.pos
            r.accept("/")
            d = _power(r)
            if not d.is_constant or d.is_zero:
                raise r.error("division only by a nonzero constant", pos)
            acc = acc.scale(1 / d.constant_value())
        elif r.peek() in ("x", "(") or r.peek().isdigit():
            # implicit product, e.g. "2x" or "3(x+1)"
            acc = acc * _power(r)
        else:
            return acc


def _power(r: _Reader) -> Poly:
    base = _atom(r)
    if r.accept("^") or r.accept("**"):
        r.skip()
        m = re.compile(r"\d+").match(r.text, r.pos)
        if not m:
            raise r.error("expected a nonnegative integer exponent")
        r.pos = m.end()
        return base ** int(m.group(0))
    return base


def _atom(r: _Reader) -> Poly:
    c = r.peek()
    if c == "x":
        r.accept("x")
        return Poly.x()
    if c == "(":
        r.accept("(")
        inner = _expr(r)
        r.expect(")")
        return inner
    if c == "-":
        r.accept("-")
        return -_power(r)
    if c.isdigit() or c == ".":
        start = r.pos
        m = re.compile(r"\d+(\.\d*)?|\.\d+").match(r.text, r.pos)
        r.pos = m.end()
        try:
            return Poly.const(Q(m.group(0)))
        except ValueError:
            raise r.error("bad number", start) from None
    raise r.error(f"unexpected {c!r}" if c else "unexpected end of input")


def parse_poly(text: str) -> Poly:
    r = _Reader(text)
    try:
        p = _expr(r)
    except PolyError as e:
        raise r.error(str(e)) from None
    if not r.at_end():
        raise r.error("unexpected trailing input")
    return p


# --- piecewise functions ----------------------------------------------------------


def parse_piecewise(text: str, domain: RealSet | None = None) -> PiecewiseFunc:
    """Parse ``piece: expr; piece: expr``; an empty text is the empty function."""
    r = _Reader(text)
    pieces = []
    if r.at_end() or r.accept("empty"):
        if not r.at_end():
            raise r.error("unexpected trailing input")
        return PiecewiseFunc([], RealSet.empty() if domain is None else domain)
    while True:
        start = r.pos
        ivs = _set(r)
        r.expect(":")
        expr = _expr(r)
        pieces.extend((iv, expr) for iv in ivs)
        if r.accept(";"):
            if r.at_end():
                break
            continue
        if not r.at_end():
            raise r.error("expected ';' between pieces")
        break
    try:
        return PiecewiseFunc(pieces, domain)
    except ValueError as e:
        raise ParseError(str(e), text, start) from None


def format_set(s: RealSet) -> str:
    return str(s)


def format_piecewise(f: PiecewiseFunc) -> str:
    return str(f)
