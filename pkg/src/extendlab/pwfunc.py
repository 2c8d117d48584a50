"""Piecewise-polynomial functions on finite unions of intervals.

A :class:`PiecewiseFunc` pairs a :class:`~extendlab.realset.RealSet` domain
with a partition of it into intervals, each carrying a rational polynomial.
Functions are stored in a normal form (maximal pieces, see
:func:`normal_form`), so two representations of the same function compare
equal structurally.

Operations whose result needs an irrational breakpoint (a crossing point of
two pieces, a boundary of a preimage) cannot stay exact.  They place the
breakpoint at a rational point within ``eps`` of the true one and record that
distance as ``slack``.
"""

from __future__ import annotations

import bisect
import enum
from dataclasses import dataclass
from typing import Iterable, Sequence

from .realset import (
    Q,
    NEG_INF,
    POS_INF,
    Interval,
    RealSet,
    as_fraction,
    difference,
    fmt_number,
    from_canonical,
)
from .roots import Poly, RootBracket, isolate_roots, rational_root, refine, value_enclosure

DEFAULT_EPS = Q(1, 10**9)


class DomainError(ValueError):
    """A point or set falls outside the domain an operation needs."""


class RangeError(ValueError):
    """An inner function maps some point outside the outer function's domain."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class Mode(str, enum.Enum):
    EXACT = "EXACT"
    APPROX = "APPROX"


@dataclass(frozen=True)
class Piece:
    interval: Interval
    expr: Poly

    def __str__(self):
        return f"{self.interval}: {self.expr}"


def _sort_key(iv: Interval):
    return (iv.lo, 0 if iv.lo_closed else 1)


def _before(p: Interval, q: Interval) -> bool:
    return p.hi < q.lo or (p.hi == q.lo and not (p.hi_closed and q.lo_closed))


def _merged(sorted_disjoint: Iterable[Interval]) -> RealSet:
    """Canonical union of sorted, pairwise disjoint intervals (adjacent ones merge)."""
    out: list[list] = []
    for iv in sorted_disjoint:
        if out and out[-1][1] == iv.lo and (out[-1][3] or iv.lo_closed):
            out[-1][1], out[-1][3] = iv.hi, iv.hi_closed
        else:
            out.append([iv.lo, iv.hi, iv.lo_closed, iv.hi_closed])
    return from_canonical(Interval(*row) for row in out)


class PiecewiseFunc:
    """A function given by polynomial pieces over a RealSet domain.

    ``slack`` is None for an exact representation; otherwise it bounds how far
    any breakpoint may sit from the true (irrational) one.
    """

    __slots__ = ("domain", "pieces", "slack", "_los")

    def __init__(self, pieces: Iterable[Piece | tuple], domain: RealSet | None = None, slack=None):
        items = []
        for p in pieces:
            if not isinstance(p, Piece):
                iv, expr = p
                if not isinstance(expr, Poly):
                    expr = Poly.const(expr)
                p = Piece(iv, expr)
            items.append(p)
        items.sort(key=lambda p: _sort_key(p.interval))
        for a, b in zip(items, items[1:]):
            if not _before(a.interval, b.interval):
                raise DomainError(f"overlapping pieces {a.interval} and {b.interval}")
        covered = _merged(p.interval for p in items)
        if domain is None:
            domain = covered
        elif covered != domain:
            raise DomainError(f"pieces cover {covered}, expected domain {domain}")
        self.domain = domain
        self.pieces = tuple(normal_form(items))
        self.slack = None if slack is None else as_fraction(slack)
        self._los = [p.interval.lo for p in self.pieces]

    @classmethod
    def constant(cls, domain: RealSet, c) -> "PiecewiseFunc":
        return cls(((iv, Poly.const(c)) for iv in domain), domain)

    @classmethod
    def identity(cls, domain: RealSet) -> "PiecewiseFunc":
        return cls(((iv, Poly.x()) for iv in domain), domain)

    @classmethod
    def single(cls, domain: RealSet, expr: Poly) -> "PiecewiseFunc":
        return cls(((iv, expr) for iv in domain), domain)

    @property
    def exact(self) -> bool:
        return self.slack is None

    @property
    def mode(self) -> Mode:
        return Mode.EXACT if self.slack is None else Mode.APPROX

    def piece_at(self, x) -> Piece:
        i = bisect.bisect_right(self._los, x) - 1
        for j in (i, i - 1):
            if 0 <= j < len(self.pieces) and self.pieces[j].interval.contains(x):
                return self.pieces[j]
        raise DomainError(f"{fmt_number(x)} is outside the domain {self.domain}")

    def __call__(self, x) -> Q:
        x = as_fraction(x)
        return self.piece_at(x).expr(x)

    def breakpoints(self) -> list[Q]:
        pts = set()
        for p in self.pieces:
            for e in (p.interval.lo, p.interval.hi):
                if e not in (NEG_INF, POS_INF):
                    pts.add(e)
        return sorted(pts)

    def __eq__(self, other):
        return (
            isinstance(other, PiecewiseFunc)
            and self.domain == other.domain
            and self.pieces == other.pieces
        )

    def __hash__(self):
        return hash((self.domain, self.pieces))

    def __str__(self):
        if not self.pieces:
            return "empty"
        return "; ".join(str(p) for p in self.pieces)

    def __repr__(self):
        tag = "" if self.slack is None else f", slack={fmt_number(self.slack)}"
        return f"PiecewiseFunc({str(self)!r}{tag})"

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return add(self, negate(other))

    def __neg__(self):
        return negate(self)

    def __mul__(self, c):
        return scale(self, c)

    __rmul__ = __mul__

    def __abs__(self):
        return absolute(self)


def _combine_slack(*slacks):
    vals = [s for s in slacks if s is not None]
    return max(vals) if vals else None


def normal_form(pieces: Sequence[Piece]) -> list[Piece]:
    """Maximal pieces of the function described by ``pieces``.

    Open stretches keep their polynomial (it is determined by the values).  A
    breakpoint joins the run on its right when that polynomial gives its
    value, else the run on its left, else it stays a constant singleton.
    """
    pieces = sorted(pieces, key=lambda p: _sort_key(p.interval))
    # pieces are disjoint, so no cut falls inside a piece and every atom
    # (open stretch or single point) belongs to exactly one piece
    atoms = []  # (lo, hi, poly, value-or-None)
    for p in pieces:
        iv, e = p.interval, p.expr
        if iv.is_point:
            atoms.append((iv.lo, iv.lo, e, e(iv.lo)))
            continue
        if iv.lo_closed:
            atoms.append((iv.lo, iv.lo, e, e(iv.lo)))
        atoms.append((iv.lo, iv.hi, e, None))
        if iv.hi_closed:
            atoms.append((iv.hi, iv.hi, e, e(iv.hi)))

    out: list[list] = []  # [lo, hi, lo_closed, hi_closed, poly]
    pending = None  # singleton (b, value) waiting for the run on its right
    for lo, hi, expr, value in atoms:
        if value is not None:
            b = lo
            if pending is not None:
                _flush_pending(out, pending)
            pending = (b, value)
            continue
        # open atom
        if pending is not None and pending[0] == lo:
            b, v = pending
            pending = None
            if expr(b) == v:
                if out and out[-1][1] == b and not out[-1][3] and out[-1][4] == expr:
                    out[-1][1], out[-1][3] = hi, False
                else:
                    out.append([b, hi, True, False, expr])
                continue
            if out and out[-1][1] == b and not out[-1][3] and out[-1][4](b) == v:
                out[-1][3] = True
            else:
                out.append([b, b, True, True, Poly.const(v)])
            out.append([lo, hi, False, False, expr])
            continue
        if pending is not None:
            _flush_pending(out, pending)
            pending = None
        out.append([lo, hi, False, False, expr])
    if pending is not None:
        _flush_pending(out, pending)
    return [Piece(Interval(lo, hi, lc, hc), e) for lo, hi, lc, hc, e in out]


def _flush_pending(out, pending):
    b, v = pending
    if out and out[-1][1] == b and not out[-1][3] and out[-1][4](b) == v:
        out[-1][3] = True
    else:
        out.append([b, b, True, True, Poly.const(v)])


def evaluate(f: PiecewiseFunc, x) -> Q:
    return f(x)


def _pair_atoms(f: PiecewiseFunc, g: PiecewiseFunc):
    """Common refinement: atoms of the shared domain with both polynomials."""
    cuts = sorted(set(f.breakpoints()) | set(g.breakpoints()))
    bounds = [NEG_INF] + cuts + [POS_INF]
    for k in range(len(bounds) - 1):
        a, b = bounds[k], bounds[k + 1]
        if k > 0 and f.domain.contains(a):
            yield Interval.point(a), f.piece_at(a).expr, g.piece_at(a).expr
        gap = Interval(a, b, False, False)
        x = gap.interior_point()
        if f.domain.contains(x):
            yield gap, f.piece_at(x).expr, g.piece_at(x).expr


def add(f: PiecewiseFunc, g: PiecewiseFunc) -> PiecewiseFunc:
    if f.domain != g.domain:
        raise DomainError(f"cannot add functions on {f.domain} and {g.domain}")
    return PiecewiseFunc(
        ((iv, p + q) for iv, p, q in _pair_atoms(f, g)),
        f.domain,
        _combine_slack(f.slack, g.slack),
    )


def scale(f: PiecewiseFunc, c) -> PiecewiseFunc:
    c = as_fraction(c)
    return PiecewiseFunc(((p.interval, p.expr.scale(c)) for p in f.pieces), f.domain, f.slack)


def negate(f: PiecewiseFunc) -> PiecewiseFunc:
    return scale(f, -1)


def linear_combination(terms: Sequence[tuple], domain: RealSet | None = None) -> PiecewiseFunc:
    """sum of c * f over (c, f) pairs sharing one domain."""
    out = None
    for c, f in terms:
        term = scale(f, c)
        out = term if out is None else add(out, term)
    if out is None:
        return PiecewiseFunc.constant(domain, 0)
    return out


# --- cutting a single polynomial piece at level crossings -------------------


@dataclass
class _Seg:
    interval: Interval
    kind: str  # "gap" | "point" | "bracket"
    sample: Q
    level: Q | None = None  # crossed level, for points and brackets


def _segments(q: Poly, iv: Interval, levels: Iterable, eps) -> list[_Seg]:
    """Split ``iv`` where q crosses any of ``levels``.

    Between consecutive cuts q stays strictly between two adjacent levels, so
    anything decided at the sample point holds on the whole gap.  Irrational
    crossings become brackets of width at most eps that hold exactly one
    crossing and no other cut.
    """
    if iv.is_point:
        return [_Seg(iv, "point", iv.lo, None)]
    if q.is_constant:
        return [_Seg(iv, "gap", iv.interior_point(), None)]
    inner = Interval(iv.lo, iv.hi, False, False)
    exact: list[tuple[Q, Q]] = []
    brackets: list[tuple[RootBracket, Q]] = []
    for t in sorted(set(levels)):
        for b in isolate_roots(q - Poly.const(t), inner):
            r = rational_root(b)
            if r is not None:
                exact.append((r, t))
            else:
                brackets.append((refine(b, eps), t))
    brackets = _separate(brackets, [r for r, _ in exact], iv)
    cuts = [(Interval.point(r), "point", r, t) for r, t in exact]
    cuts += [(Interval.closed(b.lo, b.hi), "bracket", b.midpoint, t) for b, t in brackets]
    cuts.sort(key=lambda c: c[0].lo)

    segs: list[_Seg] = []
    if iv.lo_closed:
        segs.append(_Seg(Interval.point(iv.lo), "point", iv.lo, None))
    left = iv.lo
    for cut_iv, kind, sample, t in cuts:
        gap = Interval(left, cut_iv.lo, False, False)
        segs.append(_Seg(gap, "gap", gap.interior_point()))
        segs.append(_Seg(cut_iv, kind, sample, t))
        left = cut_iv.hi
    gap = Interval(left, iv.hi, False, False)
    segs.append(_Seg(gap, "gap", gap.interior_point()))
    if iv.hi_closed:
        segs.append(_Seg(Interval.point(iv.hi), "point", iv.hi, None))
    return segs


def _separate(brackets, points, iv: Interval):
    """Refine brackets until they are pairwise disjoint, avoid the exact cut
    points and sit strictly inside ``iv``."""
    brackets = list(brackets)
    while True:
        changed = False
        for i, (b, t) in enumerate(brackets):
            bad = (iv.lo != NEG_INF and b.lo <= iv.lo) or (iv.hi != POS_INF and b.hi >= iv.hi)
            bad = bad or any(b.lo <= r <= b.hi for r in points)
            bad = bad or any(
                j != i and not (b.hi < c.lo or c.hi < b.lo) for j, (c, _) in enumerate(brackets)
            )
            if bad:
                brackets[i] = (refine(b, b.width / 2), t)
                changed = True
        if not changed:
            return brackets


def _levels(s: RealSet) -> list[Q]:
    return s.endpoints()


# --- preimages ----------------------------------------------------------------


@dataclass(frozen=True)
class PreimageResult:
    set: RealSet
    mode: Mode
    slack: Q | None = None

    def inner(self) -> RealSet:
        """Each piece shrunk by the slack; inside the true preimage."""
        if self.slack is None:
            return self.set
        pieces = []
        for iv in self.set:
            lo = iv.lo + self.slack if iv.lo != NEG_INF else NEG_INF
            hi = iv.hi - self.slack if iv.hi != POS_INF else POS_INF
            if lo < hi or (lo == hi and iv.lo_closed and iv.hi_closed):
                pieces.append(Interval(lo, hi, iv.lo_closed, iv.hi_closed))
        return RealSet(pieces)


def preimage(f: PiecewiseFunc, target: RealSet, eps=DEFAULT_EPS) -> PreimageResult:
    """{x in domain(f) : f(x) in target}.

    EXACT when every boundary of the preimage is rational.  Otherwise the set
    is an outer approximation whose ambiguous stretches are no wider than
    ``eps``; shrinking its pieces by the slack gives an inner approximation.
    """
    eps = as_fraction(eps)
    levels = _levels(target)
    chosen: list[Interval] = []
    slack = None
    for piece in f.pieces:
        segs = _segments(piece.expr, piece.interval, levels, eps)
        member = [target.contains(piece.expr(s.sample)) for s in segs]
        for i, s in enumerate(segs):
            if s.kind != "bracket":
                if member[i]:
                    chosen.append(s.interval)
                continue
            votes = {member[i - 1], member[i + 1], target.contains(s.level)}
            if True in votes:
                chosen.append(s.interval)
            if len(votes) > 1:
                slack = max(slack or 0, s.interval.length)
    result = RealSet(chosen)
    if slack is None:
        return PreimageResult(result, Mode.EXACT, None)
    return PreimageResult(result, Mode.APPROX, Q(slack))


def range_within(f: PiecewiseFunc, target: RealSet, eps=DEFAULT_EPS):
    """Decide whether f maps its whole domain into ``target``.

    Returns (ok, witness); the witness is a rational point mapped outside, or
    a RootBracket whose irrational root is.
    """
    levels = _levels(target)
    for piece in f.pieces:
        for s in _segments(piece.expr, piece.interval, levels, eps):
            if s.kind == "bracket":
                if not target.contains(s.level):
                    return False, RootBracket(piece.expr - Poly.const(s.level), s.interval.lo, s.interval.hi)
            elif not target.contains(piece.expr(s.sample)):
                return False, s.sample
    return True, None


# --- composition --------------------------------------------------------------


def compose(f: PiecewiseFunc, g: PiecewiseFunc, eps=DEFAULT_EPS) -> PiecewiseFunc:
    """x -> f(g(x)) on domain(g); g must map into domain(f)."""
    eps = as_fraction(eps)
    levels = sorted(set(f.breakpoints()))
    out = []
    slack = _combine_slack(f.slack, g.slack)
    for piece in g.pieces:
        q = piece.expr
        segs = _segments(q, piece.interval, levels, eps)
        for i, s in enumerate(segs):
            if s.kind != "bracket":
                y = q(s.sample)
                if not f.domain.contains(y):
                    raise RangeError(
                        f"inner function maps {fmt_number(s.sample)} to {fmt_number(y)}, outside {f.domain}",
                        s.sample,
                    )
                out.append((s.interval, f.piece_at(y).expr.compose(q)))
                continue
            if not f.domain.contains(s.level):
                raise RangeError(
                    f"inner function hits {fmt_number(s.level)} (outside {f.domain}) inside {s.interval}",
                    s.sample,
                )
            left = f.piece_at(q(segs[i - 1].sample)).expr
            right = f.piece_at(q(segs[i + 1].sample)).expr
            at_root = f.piece_at(s.level).expr
            if left == right == at_root:
                out.append((s.interval, left.compose(q)))
                continue
            m = s.sample
            lo_iv = Interval(s.interval.lo, m, True, False)
            hi_iv = Interval(m, s.interval.hi, True, True)
            out.append((lo_iv, left.compose(q)))
            out.append((hi_iv, right.compose(q)))
            slack = max(slack or 0, s.interval.length)
    return PiecewiseFunc(out, g.domain, slack)


# --- lattice operations ---------------------------------------------------------


def absolute(f: PiecewiseFunc, eps=DEFAULT_EPS) -> PiecewiseFunc:
    """|f|, pieces split where f changes sign.

    A split point owns the value of the piece on its right.
    """
    eps = as_fraction(eps)
    out = []
    slack = f.slack
    for piece in f.pieces:
        q = piece.expr
        segs = _segments(q, piece.interval, [0], eps)
        for i, s in enumerate(segs):
            if s.kind == "gap" or s.kind == "point":
                v = q(s.sample)
                out.append((s.interval, -q if v < 0 else q))
                continue
            left_neg = q(segs[i - 1].sample) < 0
            right_neg = q(segs[i + 1].sample) < 0
            if left_neg == right_neg:
                out.append((s.interval, -q if left_neg else q))
                continue
            m = s.sample
            out.append((Interval(s.interval.lo, m, True, False), -q if left_neg else q))
            out.append((Interval(m, s.interval.hi, True, True), -q if right_neg else q))
            slack = max(slack or 0, s.interval.length)
    return PiecewiseFunc(out, f.domain, slack)


def lattice_max(f: PiecewiseFunc, g: PiecewiseFunc, eps=DEFAULT_EPS) -> PiecewiseFunc:
    """max(f, g) = (f + g + |f - g|) / 2, exact piece by piece."""
    return scale(add(add(f, g), absolute(add(f, negate(g)), eps)), Q(1, 2))


def lattice_min(f: PiecewiseFunc, g: PiecewiseFunc, eps=DEFAULT_EPS) -> PiecewiseFunc:
    return scale(add(add(f, g), negate(absolute(add(f, negate(g)), eps))), Q(1, 2))


# --- restriction and equality ---------------------------------------------------


def restrict(f: PiecewiseFunc, s: RealSet) -> PiecewiseFunc:
    if not s.issubset(f.domain):
        raise DomainError(f"{s} is not contained in the domain {f.domain}")
    out = []
    for piece in f.pieces:
        for iv in RealSet.of(piece.interval) & s:
            out.append((iv, piece.expr))
    return PiecewiseFunc(out, s, f.slack)


def canonical_equal(f: PiecewiseFunc, g: PiecewiseFunc) -> bool:
    """Same domain and the same function; both are stored in normal form."""
    return f.domain == g.domain and f.pieces == g.pieces


# --- suprema --------------------------------------------------------------------


@dataclass(frozen=True)
class NormResult:
    """A supremum: exact when known, else an enclosure [lo, hi]."""

    exact: Q | float | None
    enclosure: tuple
    attained: bool

    @property
    def lo(self):
        return self.enclosure[0]

    @property
    def hi(self):
        return self.enclosure[1]

    @property
    def width(self):
        return self.enclosure[1] - self.enclosure[0]

    @property
    def is_exact(self) -> bool:
        return self.exact is not None

    @property
    def finite(self) -> bool:
        return self.hi not in (POS_INF, NEG_INF)

    def to_dict(self):
        return {
            "exact": None if self.exact is None else fmt_number(self.exact),
            "enclosure": [fmt_number(self.lo), fmt_number(self.hi)],
            "attained": self.attained,
        }


@dataclass
class _Cand:
    lo: object
    hi: object
    attained: bool


def _piece_sup_candidates(q: Poly, iv: Interval, eps) -> list[_Cand]:
    out = []
    if iv.is_point:
        v = q(iv.lo)
        return [_Cand(v, v, True)]
    if not q.is_constant:
        lead = q.lead
        if iv.hi == POS_INF and lead > 0:
            return [_Cand(POS_INF, POS_INF, False)]
        if iv.lo == NEG_INF and lead * (-1) ** q.degree > 0:
            return [_Cand(POS_INF, POS_INF, False)]
    for e, closed in ((iv.lo, iv.lo_closed), (iv.hi, iv.hi_closed)):
        if e not in (NEG_INF, POS_INF):
            v = q(e)
            out.append(_Cand(v, v, closed))
    if q.is_constant:
        v = q.constant_value()
        out.append(_Cand(v, v, True))
        return out
    dq = q.derivative()
    if dq.is_constant:
        return out
    for b in isolate_roots(dq, Interval(iv.lo, iv.hi, False, False)):
        r = rational_root(b)
        if r is not None:
            v = q(r)
            out.append(_Cand(v, v, True))
            continue
        while True:
            lo, hi = value_enclosure(q, b.lo, b.hi)
            if hi - lo <= eps:
                break
            b = refine(b, b.width / 2)
        out.append(_Cand(lo, hi, True))
    return out


def _combine(cands: list[_Cand]) -> NormResult:
    if not cands:
        return NormResult(NEG_INF, (NEG_INF, NEG_INF), False)
    best_lo = max(c.lo for c in cands)
    best_hi = max(c.hi for c in cands)
    if best_lo == best_hi:
        attained = any(c.attained and c.lo == c.hi == best_lo for c in cands)
        return NormResult(best_lo, (best_lo, best_hi), attained)
    attained = any(c.attained and c.hi >= best_lo for c in cands)
    return NormResult(None, (best_lo, best_hi), attained)


def supremum(f: PiecewiseFunc, over: RealSet | None = None, eps=DEFAULT_EPS) -> NormResult:
    """sup of f over ``over`` (default: the whole domain).

    Uses endpoint limits, so an excluded endpoint still contributes the value
    its piece approaches there.  The supremum of the empty set is -inf.
    """
    eps = as_fraction(eps)
    if over is not None:
        f = restrict(f, over)
    cands = []
    for piece in f.pieces:
        cands.extend(_piece_sup_candidates(piece.expr, piece.interval, eps))
    return _combine(cands)


def infimum(f: PiecewiseFunc, over: RealSet | None = None, eps=DEFAULT_EPS) -> NormResult:
    s = supremum(negate(f), over, eps)
    ex = None if s.exact is None else -s.exact
    return NormResult(ex, (-s.hi, -s.lo), s.attained)


def sup_norm(f: PiecewiseFunc, over: RealSet | None = None, eps=DEFAULT_EPS) -> NormResult:
    """sup of |f| over ``over``; 0 on the empty set."""
    eps = as_fraction(eps)
    if over is not None:
        f = restrict(f, over)
    if not f.pieces:
        return NormResult(Q(0), (Q(0), Q(0)), False)
    cands = []
    for piece in f.pieces:
        cands.extend(_piece_sup_candidates(piece.expr, piece.interval, eps))
        cands.extend(_piece_sup_candidates(-piece.expr, piece.interval, eps))
    return _combine(cands)


# --- continuity and continuous approximation ---------------------------------------


@dataclass(frozen=True)
class Seam:
    """A breakpoint b inside a connected stretch of the domain."""

    at: Q
    value: Q
    left: Piece | None  # piece ending at b from the left, open at b
    right: Piece | None  # piece starting at b on the right, open at b

    @property
    def left_limit(self):
        return None if self.left is None else self.left.expr(self.at)

    @property
    def right_limit(self):
        return None if self.right is None else self.right.expr(self.at)

    @property
    def jumps_left(self) -> bool:
        return self.left is not None and self.left_limit != self.value

    @property
    def jumps_right(self) -> bool:
        return self.right is not None and self.right_limit != self.value

    @property
    def is_jump(self) -> bool:
        return self.jumps_left or self.jumps_right


def seams(f: PiecewiseFunc) -> list[Seam]:
    """Breakpoints b in the domain where pieces meet, with one-sided data."""
    out = []
    for b in f.breakpoints():
        if not f.domain.contains(b):
            continue
        owner = f.piece_at(b)
        left = right = None
        for p in f.pieces:
            if p is owner:
                continue
            if p.interval.hi == b:
                left = p
            elif p.interval.lo == b:
                right = p
        if left is not None or right is not None:
            out.append(Seam(b, owner.expr(b), left, right))
    return out


def jump_points(f: PiecewiseFunc) -> list[Q]:
    return [s.at for s in seams(f) if s.is_jump]


def continuous_approximation(f: PiecewiseFunc, n: int) -> PiecewiseFunc:
    """A continuous f_n agreeing with f except on short ramps at jumps.

    At a jump point b each side whose limit differs from f(b) gets an affine
    ramp of width min(1/n, half that piece's length) joining the piece to
    f(b).  So f_n(b) = f(b) for every n, and f_n(x) = f(x) once 1/n is below
    the distance from x to the jumps.
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"approximation index must be a positive integer, got {n!r}")
    step = Q(1, n)
    ramps: dict[Piece, list[tuple[Interval, Poly]]] = {}
    for s in seams(f):
        b, v = s.at, s.value
        if s.jumps_left:
            p = s.left
            w = min(step, p.interval.length / 2)
            a = b - w
            ramps.setdefault(p, []).append((Interval.open(a, b), _line(a, p.expr(a), b, v)))
        if s.jumps_right:
            p = s.right
            w = min(step, p.interval.length / 2)
            c = b + w
            ramps.setdefault(p, []).append((Interval.open(b, c), _line(b, v, c, p.expr(c))))
    if not ramps:
        return f
    out = []
    for p in f.pieces:
        rs = ramps.get(p, [])
        rest = difference(RealSet.of(p.interval), RealSet(iv for iv, _ in rs))
        out.extend((iv, p.expr) for iv in rest)
        out.extend(rs)
    return PiecewiseFunc(out, f.domain, f.slack)


def _line(x0, y0, x1, y1) -> Poly:
    slope = (y1 - y0) / (x1 - x0)
    return Poly((y0 - slope * x0, slope))
