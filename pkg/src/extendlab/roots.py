"""Exact univariate polynomials over the rationals and real root isolation.

Root counting uses Sturm sequences evaluated in exact rational arithmetic, so
every bracket returned by :func:`isolate_roots` is certified to hold exactly
one real root.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .realset import Q, NEG_INF, POS_INF, Interval, as_fraction, fmt_number


class PolyError(ValueError):
    pass


def _strip(coeffs: Iterable) -> tuple[Q, ...]:
    cs = [as_fraction(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


@dataclass(frozen=True)
class Poly:
    """Polynomial with rational coefficients, lowest degree first.

    The zero polynomial has an empty coefficient tuple.
    """

    coeffs: tuple[Q, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _strip(self.coeffs))

    @classmethod
    def const(cls, c) -> "Poly":
        return cls((c,))

    @classmethod
    def x(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def affine(cls, slope, intercept) -> "Poly":
        return cls((intercept, slope))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def lead(self) -> Q:
        return self.coeffs[-1] if self.coeffs else Q(0)

    def constant_value(self) -> Q:
        return self.coeffs[0] if self.coeffs else Q(0)

    def __call__(self, x) -> Q:
        acc = Q(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "Poly") -> "Poly":
        other = _coerce(other)
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return Poly(tuple((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)))

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, other) -> "Poly":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "Poly":
        return _coerce(other) - self

    def __mul__(self, other) -> "Poly":
        other = _coerce(other)
        if self.is_zero or other.is_zero:
            return Poly()
        out = [Q(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise PolyError("negative powers are not polynomials")
        out, base = Poly.const(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def scale(self, c) -> "Poly":
        c = as_fraction(c)
        return Poly(tuple(c * a for a in self.coeffs))

    def derivative(self) -> "Poly":
        return Poly(tuple(i * c for i, c in enumerate(self.coeffs) if i))

    def compose(self, inner: "Poly") -> "Poly":
        """self(inner(x)) by Horner's scheme."""
        acc = Poly()
        for c in reversed(self.coeffs):
            acc = acc * inner + Poly.const(c)
        return acc

    def shift(self, m) -> "Poly":
        """Coefficients of self(m + t) in t."""
        return self.compose(Poly((m, 1)))

    def __divmod__(self, other: "Poly"):
        return poly_divmod(self, other)

    def monic(self) -> "Poly":
        if self.is_zero:
            return self
        return self.scale(1 / self.lead)

    def primitive_integer(self) -> tuple[int, ...]:
        """Integer coefficients with the same roots, content removed."""
        if self.is_zero:
            return ()
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = math.gcd(g, v)
        return tuple(v // g for v in ints)

    def __str__(self):
        return format_poly(self)


def _coerce(p) -> Poly:
    if isinstance(p, Poly):
        return p
    return Poly.const(p)


def format_poly(p: Poly, var: str = "x") -> str:
    if p.is_zero:
        return "0"
    terms = []
    for k in range(p.degree, -1, -1):
        c = p.coeffs[k]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if k == 0:
            body = fmt_number(a)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if a == 1 else f"{fmt_number(a)}*{mono}"
        terms.append((sign, body))
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def poly_add(p: Poly, q: Poly) -> Poly:
    return p + q


def poly_mul(p: Poly, q: Poly) -> Poly:
    return p * q


def poly_scale(p: Poly, c) -> Poly:
    return p.scale(c)


def poly_derivative(p: Poly) -> Poly:
    return p.derivative()


def poly_compose(p: Poly, q: Poly) -> Poly:
    return p.compose(q)


def poly_eval(p: Poly, x) -> Q:
    return p(as_fraction(x))


def poly_divmod(p: Poly, d: Poly) -> tuple[Poly, Poly]:
    if d.is_zero:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p.coeffs)
    quot = [Q(0)] * max(len(rem) - len(d.coeffs) + 1, 0)
    lead = d.lead
    dd = d.degree
    for k in range(len(rem) - 1, dd - 1, -1):
        c = rem[k] / lead
        if c == 0:
            continue
        quot[k - dd] = c
        for i, b in enumerate(d.coeffs):
            rem[k - dd + i] -= c * b
    return Poly(tuple(quot)), Poly(tuple(rem))


def poly_gcd(p: Poly, q: Poly) -> Poly:
    a, b = p, q
    while not b.is_zero:
        a, b = b, poly_divmod(a, b)[1]
    return a.monic()


def squarefree_part(p: Poly) -> Poly:
    """p / gcd(p, p'), made monic: same real roots, all simple."""
    if p.is_zero:
        raise PolyError("squarefree part of the zero polynomial")
    if p.is_constant:
        return Poly.const(1)
    g = poly_gcd(p, p.derivative())
    return poly_divmod(p, g)[0].monic()


def sturm_sequence(p: Poly) -> list[Poly]:
    seq = [p, p.derivative()]
    while not seq[-1].is_zero:
        seq.append(-poly_divmod(seq[-2], seq[-1])[1])
    return seq[:-1]


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _variations(signs: Iterable[int]) -> int:
    count, last = 0, 0
    for s in signs:
        if s == 0:
            continue
        if last and s != last:
            count += 1
        last = s
    return count


def sign_variations(seq: Sequence[Poly], x) -> int:
    """Sign changes of the Sturm sequence at x; x may be +-inf."""
    if x == POS_INF:
        return _variations(_sign(q.lead) for q in seq)
    if x == NEG_INF:
        return _variations(_sign(q.lead) * (-1 if q.degree % 2 else 1) for q in seq)
    return _variations(_sign(q(x)) for q in seq)


def count_roots(p: Poly, lo, hi) -> int:
    """Distinct real roots of p in the half-open interval (lo, hi]."""
    q = squarefree_part(p)
    seq = sturm_sequence(q)
    return sign_variations(seq, lo) - sign_variations(seq, hi)


def root_bound(p: Poly) -> Q:
    """Cauchy bound: every real root lies strictly inside (-B, B)."""
    lead = abs(p.lead)
    return 1 + max((abs(c) / lead for c in p.coeffs[:-1]), default=Q(0))


@dataclass(frozen=True)
class RootBracket:
    """A closed rational interval holding exactly one root of a squarefree poly."""

    poly: Poly
    lo: Q
    hi: Q

    @property
    def width(self) -> Q:
        return self.hi - self.lo

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    @property
    def midpoint(self) -> Q:
        return (self.lo + self.hi) / 2

    def __str__(self):
        return f"[{fmt_number(self.lo)},{fmt_number(self.hi)}]"


def isolate_roots(p: Poly, within: Interval | None = None) -> list[RootBracket]:
    """Disjoint brackets, one per distinct real root of p inside ``within``.

    Brackets are sorted.  A rational root met during bisection is returned as
    a degenerate bracket ``[r, r]``.
    """
    if p.is_zero:
        raise PolyError("cannot isolate roots of the zero polynomial")
    if within is None:
        within = Interval(NEG_INF, POS_INF, False, False)
    if p.degree == 1:
        r = -p.coeffs[0] / p.coeffs[1]
        return [RootBracket(p, r, r)] if within.contains(r) else []
    q = squarefree_part(p)
    if q.is_constant:
        return []
    if within is None:
        within = Interval(NEG_INF, POS_INF, False, False)
    seq = sturm_sequence(q)
    bound = root_bound(q)
    lo = max(within.lo, -bound) if within.lo != NEG_INF else -bound
    hi = min(within.hi, bound) if within.hi != POS_INF else bound
    lo, hi = Q(lo), Q(hi)
    out: list[RootBracket] = []
    if lo > hi:
        return out
    if lo == hi:
        if q(lo) == 0 and within.contains(lo):
            out.append(RootBracket(q, lo, lo))
        return out
    if q(lo) == 0 and within.contains(lo):
        out.append(RootBracket(q, lo, lo))
    _bisect_isolate(q, seq, lo, hi, out)
    if q(hi) == 0 and within.contains(hi):
        out.append(RootBracket(q, hi, hi))
    return out


def _bisect_isolate(q: Poly, seq, a: Q, b: Q, out: list) -> None:
    # roots strictly inside (a, b), appended in increasing order
    stack = [(a, b)]
    found = []
    while stack:
        a, b = stack.pop()
        n = sign_variations(seq, a) - sign_variations(seq, b) - (1 if q(b) == 0 else 0)
        if n == 0:
            continue
        if n == 1 and q(a) != 0 and q(b) != 0:
            found.append(RootBracket(q, a, b))
            continue
        m = (a + b) / 2
        if q(m) == 0:
            found.append(RootBracket(q, m, m))
        stack.append((a, m))
        stack.append((m, b))
    found.sort(key=lambda r: r.lo)
    out.extend(found)


def bisect_once(b: RootBracket) -> RootBracket:
    """Halve a bracket, keeping the half that holds the root."""
    if b.is_exact:
        return b
    q = b.poly
    m = b.midpoint
    vm = q(m)
    if vm == 0:
        return RootBracket(q, m, m)
    if _sign(q(b.lo)) != _sign(vm):
        return RootBracket(q, b.lo, m)
    return RootBracket(q, m, b.hi)


def refine(b: RootBracket, eps) -> RootBracket:
    eps = as_fraction(eps)
    if eps <= 0:
        raise PolyError("refinement tolerance must be positive")
    while b.width > eps:
        b = bisect_once(b)
    return b


def rational_root(b: RootBracket) -> Q | None:
    """The root inside ``b`` if it is rational, else None.

    A rational root r of an integer polynomial with leading coefficient L has
    r * L integral, so once the bracket is narrower than 1/|L| at most two
    candidates remain.
    """
    if b.is_exact:
        return b.lo
    ints = Poly(b.poly.coeffs).primitive_integer()
    lead = abs(ints[-1])
    b = refine(b, Q(1, 2 * lead))
    if b.is_exact:
        return b.lo
    for k in range(math.ceil(b.lo * lead), math.floor(b.hi * lead) + 1):
        r = Q(k, lead)
        if b.poly(r) == 0:
            return r
    return None


def value_enclosure(p: Poly, lo: Q, hi: Q) -> tuple[Q, Q]:
    """Rigorous enclosure of p over [lo, hi] from the Taylor expansion at the midpoint."""
    m = (lo + hi) / 2
    r = (hi - lo) / 2
    t = p.shift(m).coeffs
    if not t:
        return Q(0), Q(0)
    spread = sum((abs(c) * r**k for k, c in enumerate(t) if k), Q(0))
    return t[0] - spread, t[0] + spread


def real_roots(p: Poly, within: Interval | None = None, eps=Q(1, 10**9)):
    """Sorted roots of p in ``within``: exact Fractions or refined RootBrackets."""
    out = []
    for b in isolate_roots(p, within):
        r = rational_root(b)
        out.append(r if r is not None else refine(b, eps))
    return out
