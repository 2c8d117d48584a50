"""Exact subsets of the real line.

A :class:`RealSet` is a finite union of intervals and points with rational
endpoints.  Every such set is simultaneously F-sigma and G-delta, which is the
hypothesis the extension constructions need, and all boolean operations on
them are decidable.  Sets are kept in a canonical form (sorted, disjoint,
maximally merged) so equality is a structural comparison.
"""

from __future__ import annotations

import bisect
import math
import numbers
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from gmpy2 import mpq as Q

NEG_INF = -math.inf
POS_INF = math.inf

# finite endpoints are gmpy2 rationals; the infinities are the float constants above


class SetError(ValueError):
    pass


def as_fraction(x) -> Q:
    if isinstance(x, Q):
        return x
    if isinstance(x, float):
        if math.isinf(x) or math.isnan(x):
            raise SetError(f"not a finite rational: {x!r}")
    if isinstance(x, numbers.Rational):
        # Fractions may carry gmpy2 integers, which mpq() rejects directly
        return Q(int(x.numerator), int(x.denominator))
    return Q(x)


def _endpoint(x):
    if isinstance(x, float) and math.isinf(x):
        return x
    return as_fraction(x)


def fmt_number(x) -> str:
    if x == POS_INF:
        return "inf"
    if x == NEG_INF:
        return "-inf"
    x = Q(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class Interval:
    """An interval with rational (or infinite) endpoints.

    Singletons are ``Interval(a, a)`` with both ends closed; empty intervals
    cannot be constructed.
    """

    lo: Q | float
    hi: Q | float
    lo_closed: bool = True
    hi_closed: bool = True

    def __post_init__(self):
        lo, hi = self.lo, self.hi
        if type(lo) is Q and type(hi) is Q:
            if lo < hi or (lo == hi and self.lo_closed and self.hi_closed):
                return
        lo, hi = _endpoint(lo), _endpoint(hi)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        if lo == POS_INF or hi == NEG_INF:
            raise SetError("interval endpoints out of order")
        if lo == NEG_INF and self.lo_closed:
            object.__setattr__(self, "lo_closed", False)
        if hi == POS_INF and self.hi_closed:
            object.__setattr__(self, "hi_closed", False)
        if lo > hi:
            raise SetError(f"malformed interval: lo {fmt_number(lo)} > hi {fmt_number(hi)}")
        if lo == hi and not (self.lo_closed and self.hi_closed):
            raise SetError(f"malformed interval: empty at {fmt_number(lo)}")

    @classmethod
    def point(cls, x) -> "Interval":
        return cls(x, x, True, True)

    @classmethod
    def open(cls, lo, hi) -> "Interval":
        return cls(lo, hi, False, False)

    @classmethod
    def closed(cls, lo, hi) -> "Interval":
        return cls(lo, hi, True, True)

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    @property
    def bounded(self) -> bool:
        return self.lo != NEG_INF and self.hi != POS_INF

    @property
    def length(self):
        return self.hi - self.lo

    def contains(self, x) -> bool:
        if isinstance(x, float) and math.isinf(x):
            return False
        lo, hi = self.lo, self.hi
        # infinite ends are floats; skipping them avoids slow mixed comparisons
        if not isinstance(lo, float) and (x < lo or (x == lo and not self.lo_closed)):
            return False
        if not isinstance(hi, float) and (x > hi or (x == hi and not self.hi_closed)):
            return False
        return True

    __contains__ = contains

    def interior_point(self) -> Q:
        """Some rational point of the interval, strictly inside unless a singleton."""
        if self.is_point:
            return self.lo
        if self.lo == NEG_INF and self.hi == POS_INF:
            return Q(0)
        if self.lo == NEG_INF:
            return self.hi - 1
        if self.hi == POS_INF:
            return self.lo + 1
        return (self.lo + self.hi) / 2

    def midpoint(self):
        return self.interior_point()

    def closure(self) -> "Interval":
        return Interval(self.lo, self.hi, True, True)

    def __str__(self):
        if self.is_point:
            return "{" + fmt_number(self.lo) + "}"
        left = "[" if self.lo_closed else "("
        right = "]" if self.hi_closed else ")"
        return f"{left}{fmt_number(self.lo)},{fmt_number(self.hi)}{right}"


def _cut_points(intervals: Iterable[Interval]) -> list[Q]:
    pts = set()
    for iv in intervals:
        for e in (iv.lo, iv.hi):
            if not (isinstance(e, float) and math.isinf(e)):
                pts.add(e)
    return sorted(pts)


def _atom(points: Sequence[Q], k: int) -> tuple:
    """(lo, hi, lo_closed, hi_closed) of atom k: even k are gaps, odd k points."""
    if k % 2:
        p = points[k // 2]
        return p, p, True, True
    lo = points[k // 2 - 1] if k else NEG_INF
    hi = points[k // 2] if k // 2 < len(points) else POS_INF
    return lo, hi, False, False


class RealSet:
    """Canonical finite union of intervals.

    Construct through :meth:`of` (which canonicalizes) or the helpers below.
    Instances are immutable and hashable.
    """

    __slots__ = ("_pieces",)

    def __init__(self, pieces: Iterable[Interval] = ()):
        object.__setattr__(self, "_pieces", tuple(canonical_pieces(pieces)))

    def __setattr__(self, name, value):
        raise AttributeError("RealSet is immutable")

    @classmethod
    def of(cls, *pieces: Interval) -> "RealSet":
        return cls(pieces)

    @classmethod
    def empty(cls) -> "RealSet":
        return cls(())

    @classmethod
    def reals(cls) -> "RealSet":
        return cls((Interval(NEG_INF, POS_INF, False, False),))

    @classmethod
    def points(cls, *xs) -> "RealSet":
        return cls(Interval.point(x) for x in xs)

    @property
    def pieces(self) -> tuple[Interval, ...]:
        return self._pieces

    def __iter__(self):
        return iter(self._pieces)

    def __len__(self):
        return len(self._pieces)

    def __bool__(self):
        return bool(self._pieces)

    def __eq__(self, other):
        return isinstance(other, RealSet) and self._pieces == other._pieces

    def __hash__(self):
        return hash(self._pieces)

    def __repr__(self):
        return f"RealSet({str(self)!r})"

    def __str__(self):
        if not self._pieces:
            return "empty"
        return " U ".join(str(p) for p in self._pieces)

    def contains(self, x) -> bool:
        # the only candidate is the first piece ending at or after x
        k = bisect.bisect_left(self._pieces, x, key=_piece_hi)
        return k < len(self._pieces) and self._pieces[k].contains(x)

    __contains__ = contains

    def endpoints(self) -> list[Q]:
        return _cut_points(self._pieces)

    @property
    def is_empty(self) -> bool:
        return not self._pieces

    @property
    def is_reals(self) -> bool:
        return self == RealSet.reals()

    @property
    def bounded(self) -> bool:
        return all(p.bounded for p in self._pieces)

    # set algebra -------------------------------------------------------

    def __or__(self, other):
        return union(self, other)

    def __and__(self, other):
        return intersect(self, other)

    def __sub__(self, other):
        return difference(self, other)

    def __invert__(self):
        return complement(self)

    def issubset(self, other: "RealSet") -> bool:
        return difference(self, other).is_empty

    def __le__(self, other):
        return self.issubset(other)


def _piece_hi(iv: Interval):
    return iv.hi


def canonical_pieces(raw: Iterable[Interval]) -> list[Interval]:
    raw = list(raw)
    for iv in raw:
        if not isinstance(iv, Interval):
            raise SetError(f"not an Interval: {iv!r}")
    return combine([raw], lambda inside: inside[0])


def combine(sets: Sequence[Iterable[Interval]], predicate: Callable[[list[bool]], bool]) -> list[Interval]:
    """Canonical pieces of the set {x : predicate([x in S for S in sets])}.

    The endpoints of all inputs cut the line into atoms (open gaps and single
    points) on which every membership is constant.  Each interval covers a
    contiguous run of atoms, so coverage is a difference-array sweep, and runs
    of selected atoms merge into maximal intervals.
    """
    sets = [list(s) for s in sets]
    points = _cut_points(iv for s in sets for iv in s)
    index = {p: i for i, p in enumerate(points)}
    size = 2 * len(points) + 1
    rows = []
    for s in sets:
        diff = [0] * (size + 1)
        for iv in s:
            start = 0 if isinstance(iv.lo, float) else 2 * index[iv.lo] + (1 if iv.lo_closed else 2)
            stop = size - 1 if isinstance(iv.hi, float) else 2 * index[iv.hi] + (1 if iv.hi_closed else 0)
            diff[start] += 1
            diff[stop + 1] -= 1
        row, running = [], 0
        for k in range(size):
            running += diff[k]
            row.append(running > 0)
        rows.append(row)
    keep = [bool(predicate([row[k] for row in rows])) for k in range(size)]
    out: list[Interval] = []
    k = 0
    while k < size:
        if not keep[k]:
            k += 1
            continue
        j = k
        while j + 1 < size and keep[j + 1]:
            j += 1
        lo, _, lo_closed, _ = _atom(points, k)
        _, hi, _, hi_closed = _atom(points, j)
        out.append(Interval(lo, hi, lo_closed, hi_closed))
        k = j + 1
    return out


def canonicalize(raw: Iterable[Interval]) -> RealSet:
    return RealSet(raw)


def _make(pieces: Iterable[Interval]) -> RealSet:
    s = RealSet.__new__(RealSet)
    object.__setattr__(s, "_pieces", tuple(pieces))
    return s


def from_canonical(pieces: Iterable[Interval]) -> RealSet:
    """Wrap pieces already in canonical form, skipping the normalizing sweep."""
    return _make(pieces)


def union(*sets: RealSet) -> RealSet:
    return _make(combine([s.pieces for s in sets], any))


def intersect(*sets: RealSet) -> RealSet:
    return _make(combine([s.pieces for s in sets], all))


def difference(s: RealSet, t: RealSet) -> RealSet:
    return _make(combine([s.pieces, t.pieces], lambda m: m[0] and not m[1]))


def complement(s: RealSet) -> RealSet:
    return _make(combine([s.pieces], lambda m: not m[0]))


def contains(s: RealSet, x) -> bool:
    return s.contains(x)


def closure(s: RealSet) -> RealSet:
    return RealSet(p.closure() for p in s)


def interior(s: RealSet) -> RealSet:
    # valid piecewise because canonical pieces never share an included endpoint
    return RealSet(Interval.open(p.lo, p.hi) for p in s if not p.is_point)


def is_closed(s: RealSet) -> bool:
    return closure(s) == s


def is_open(s: RealSet) -> bool:
    return interior(s) == s


def components(s: RealSet) -> tuple[Interval, ...]:
    return s.pieces


def _shrink(piece: Interval, n: int) -> Interval:
    if piece.is_point:
        return piece
    step = Q(1, n)
    lo, hi = piece.lo, piece.hi
    mid = piece.interior_point() if piece.bounded else None
    if not piece.lo_closed and lo != NEG_INF:
        lo = lo + step
        if mid is not None:
            lo = min(lo, mid)
    if not piece.hi_closed and hi != POS_INF:
        hi = hi - step
        if mid is not None:
            hi = max(hi, mid)
    # the midpoint cap makes lo <= hi; lo == hi is the collapsed singleton
    return Interval(lo, hi, True, True)


def fsigma_decomposition(a: RealSet, n: int) -> RealSet:
    """The closed set F_n of an increasing closed exhaustion of ``a``.

    Each excluded finite endpoint moves inward by 1/n, never past the midpoint
    of its piece.  F_n is closed, F_n is contained in F_{n+1}, and the union
    over all n is ``a``.
    """
    if not isinstance(n, int) or n < 1:
        raise SetError(f"decomposition index must be a positive integer, got {n!r}")
    return RealSet(_shrink(p, n) for p in a)


def gdelta_codecomposition(a: RealSet, n: int) -> RealSet:
    """G_n: the closed exhaustion of the complement of ``a``."""
    return fsigma_decomposition(complement(a), n)


def coverage_index(a: RealSet, x) -> int | None:
    """First n with x in fsigma_decomposition(a, n), or None if x is not in a."""
    for piece in a:
        if piece.contains(x):
            break
    else:
        return None
    n = 1
    while not fsigma_decomposition(RealSet.of(piece), n).contains(x):
        n += 1
    return n


def distance_to_excluded(piece: Interval, x) -> float | Q:
    ds = []
    if not piece.lo_closed and piece.lo != NEG_INF:
        ds.append(x - piece.lo)
    if not piece.hi_closed and piece.hi != POS_INF:
        ds.append(piece.hi - x)
    return min(ds) if ds else POS_INF


def subset(s: RealSet, t: RealSet) -> bool:
    return s.issubset(t)
