"""Seeded random generators shared by the test modules."""

from __future__ import annotations

import random

from extendlab.pwfunc import PiecewiseFunc
from extendlab.realset import Q, Interval, RealSet
from extendlab.roots import Poly


def rat(rng: random.Random, lo=-10, hi=10, den=4) -> Q:
    return Q(rng.randint(lo * den, hi * den), den)


def distinct_points(rng, k, lo=-10, hi=10, den=4) -> list[Q]:
    pts = set()
    while len(pts) < k:
        pts.add(rat(rng, lo, hi, den))
    return sorted(pts)


def random_set(rng, max_pieces=5, lo=-10, hi=10, den=4, unbounded=False) -> RealSet:
    """Up to ``max_pieces`` pieces, some singletons, random inclusion flags."""
    k = rng.randint(1, max_pieces)
    pts = distinct_points(rng, 2 * k, lo, hi, den)
    pieces = []
    for i in range(k):
        a, b = pts[2 * i], pts[2 * i + 1]
        if rng.random() < 0.15:
            pieces.append(Interval.point(a))
        else:
            pieces.append(Interval(a, b, rng.random() < 0.5, rng.random() < 0.5))
    if unbounded and rng.random() < 0.5:
        p = pieces[0]
        pieces[0] = Interval(float("-inf"), p.hi, False, p.hi_closed if not p.is_point else True)
    if unbounded and rng.random() < 0.5:
        p = pieces[-1]
        pieces[-1] = Interval(p.lo, float("inf"), p.lo_closed if not p.is_point else True, False)
    return RealSet(pieces)


def random_closed(rng, max_pieces=3, lo=-12, hi=12) -> RealSet:
    k = rng.randint(1, max_pieces)
    pts = distinct_points(rng, 2 * k, lo, hi)
    pieces = []
    for i in range(k):
        if rng.random() < 0.2:
            pieces.append(Interval.point(pts[2 * i]))
        else:
            pieces.append(Interval.closed(pts[2 * i], pts[2 * i + 1]))
    return RealSet(pieces)


def random_open(rng, max_pieces=3, lo=-12, hi=12) -> RealSet:
    k = rng.randint(1, max_pieces)
    pts = distinct_points(rng, 2 * k, lo, hi)
    pieces = [Interval.open(pts[2 * i], pts[2 * i + 1]) for i in range(k)]
    if rng.random() < 0.2:
        pieces.append(Interval.open(float("-inf"), pts[0] - 1))
    return RealSet(pieces)


def _window(iv: Interval, reach) -> tuple[Q, Q]:
    """Finite stand-in for ``iv``: unbounded ends are cut ``reach`` past the other end."""
    lo, hi = iv.lo, iv.hi
    if lo == float("-inf") and hi == float("inf"):
        return Q(-reach), Q(reach)
    if lo == float("-inf"):
        return hi - reach, hi
    if hi == float("inf"):
        return lo, lo + reach
    return lo, hi


def random_poly(rng, degree, den=3, size=4) -> Poly:
    return Poly(tuple(Q(rng.randint(-size * den, size * den), den) for _ in range(degree + 1)))


def random_pw(rng, domain: RealSet, degree=1, max_cuts=2, den=8) -> PiecewiseFunc:
    """Random piecewise polynomial on ``domain``; cuts land on a 1/den grid."""
    pieces = []
    for iv in domain:
        if iv.is_point:
            pieces.append((iv, random_poly(rng, 0)))
            continue
        lo, hi = _window(iv, 5)
        cuts = sorted({Q(rng.randint(int(lo * den) + 1, int(hi * den) - 1), den) for _ in range(rng.randint(0, max_cuts))} if hi - lo > Q(2, den) else set())
        cuts = [c for c in cuts if iv.lo < c < iv.hi]
        edges = [iv.lo] + cuts + [iv.hi]
        for i in range(len(edges) - 1):
            a, b = edges[i], edges[i + 1]
            lo_closed = iv.lo_closed if i == 0 else True
            hi_closed = iv.hi_closed if i == len(edges) - 2 else False
            pieces.append((Interval(a, b, lo_closed, hi_closed), random_poly(rng, degree)))
    return PiecewiseFunc(pieces, domain)


def sample_points(rng, s: RealSet, count: int, den=64) -> list[Q]:
    """Rationals in ``s``: endpoints (when members) plus random interior points."""
    out = [e for e in s.endpoints() if s.contains(e)]
    pieces = list(s)
    while len(out) < count:
        iv = rng.choice(pieces)
        if iv.is_point:
            out.append(iv.lo)
            continue
        lo, hi = _window(iv, 20)
        x = Q(lo) + (Q(hi) - Q(lo)) * Q(rng.randint(0, den), den)
        if iv.contains(x):
            out.append(x)
    return out[:count]


def line_points(rng, count: int, lo=-15, hi=15, den=16) -> list[Q]:
    """Random rationals plus integer/quarter points, which hit many endpoints."""
    grid = [Q(k, 4) for k in range(lo * 4, hi * 4 + 1)]
    extra = [Q(rng.randint(lo * den * 7, hi * den * 7), den * 7) for _ in range(max(0, count - len(grid)))]
    return (grid + extra)[:count] if count < len(grid) else grid + extra
