"""Witness-producing classifiers for the Borel-type function classes.

Every representable piecewise-polynomial function is piecewise continuous, of
the first Borel class and of the first level Borel class, so these routines
do not decide membership; they build the explicit closed covers and F-sigma
decompositions that certify it.  The gallery holds the classical examples
that separate the classes and cannot be represented piecewise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from .pwfunc import DEFAULT_EPS, PiecewiseFunc, jump_points, preimage, restrict, seams
from .realset import (
    Q,
    Interval,
    RealSet,
    as_fraction,
    difference,
    fmt_number,
    fsigma_decomposition,
    is_closed,
    is_open,
    union,
)


class ClassifyError(ValueError):
    pass


@dataclass
class ContinuityReport:
    continuous: bool
    jumps: list

    def to_dict(self):
        return {"continuous": self.continuous, "jumps": [fmt_number(j) for j in self.jumps]}


def is_continuous(f: PiecewiseFunc) -> ContinuityReport:
    """Continuity on each connected component of the domain."""
    jumps = jump_points(f)
    return ContinuityReport(not jumps, jumps)


def pc_cover(f: PiecewiseFunc, n: int) -> RealSet:
    """X_n: the line minus the 1/n-collars on the jumping sides of each jump.

    The jump points themselves stay in X_n.
    """
    if n < 1:
        raise ClassifyError("cover index must be positive")
    w = Q(1, n)
    removed = []
    for s in seams(f):
        if s.jumps_left:
            removed.append(Interval.open(s.at - w, s.at))
        if s.jumps_right:
            removed.append(Interval.open(s.at, s.at + w))
    jumps = RealSet.points(*(s.at for s in seams(f) if s.is_jump))
    return union(difference(f.domain, RealSet(removed)), jumps)


@dataclass
class PiecewiseContinuityReport:
    piecewise_continuous: bool
    continuous: bool
    jumps: list
    cover: list  # X_1..X_k as RealSets
    witnesses: list  # per n: restriction continuous

    def to_dict(self):
        return {
            "piecewise_continuous": self.piecewise_continuous,
            "continuous": self.continuous,
            "jumps": [fmt_number(j) for j in self.jumps],
            "cover": [str(x) for x in self.cover],
            "restriction_continuous": self.witnesses,
        }


def is_piecewise_continuous(f: PiecewiseFunc, n_max: int = 8) -> PiecewiseContinuityReport:
    """An increasing closed cover X_1, X_2, ... of the line with f continuous on each."""
    if not f.domain.is_reals:
        raise ClassifyError(f"piecewise continuity is judged on the whole line, domain is {f.domain}")
    jumps = jump_points(f)
    if not jumps:
        return PiecewiseContinuityReport(True, True, [], [f.domain], [True])
    cover, witnesses = [], []
    for n in range(1, n_max + 1):
        x_n = pc_cover(f, n)
        cover.append(x_n)
        witnesses.append(not jump_points(restrict(f, x_n)) and is_closed(x_n))
    increasing = all(a.issubset(b) for a, b in zip(cover, cover[1:]))
    return PiecewiseContinuityReport(all(witnesses) and increasing, False, jumps, cover, witnesses)


@dataclass
class PreimageWitness:
    target: RealSet
    preimage: RealSet
    mode: str
    decomposition: list  # F_1..F_k, closed, increasing, exhausting the preimage

    def to_dict(self):
        return {
            "target": str(self.target),
            "preimage": str(self.preimage),
            "mode": self.mode,
            "fsigma_witness": [str(s) for s in self.decomposition],
        }


@dataclass
class ClassWitnessReport:
    kind: str  # "FCB" (open targets) or "FLB" (closed targets)
    witnessed: bool
    entries: list = field(default_factory=list)

    def to_dict(self):
        return {"class": self.kind, "witnessed": self.witnessed, "preimages": [e.to_dict() for e in self.entries]}


def _witness(f: PiecewiseFunc, targets, kind: str, depth: int, eps) -> ClassWitnessReport:
    entries = []
    for t in targets:
        p = preimage(f, t, eps)
        decomposition = [fsigma_decomposition(p.set, n) for n in range(1, depth + 1)]
        entries.append(PreimageWitness(t, p.set, p.mode.value, decomposition))
    return ClassWitnessReport(kind, True, entries)


def fcb_witness(f: PiecewiseFunc, opens: Sequence[RealSet], depth: int = 4, eps=DEFAULT_EPS) -> ClassWitnessReport:
    """Preimages of open sets with their F-sigma decompositions."""
    for u in opens:
        if not is_open(u):
            raise ClassifyError(f"{u} is not open")
    return _witness(f, opens, "FCB", depth, eps)


def flb_witness(f: PiecewiseFunc, closeds: Sequence[RealSet], depth: int = 4, eps=DEFAULT_EPS) -> ClassWitnessReport:
    """Preimages of closed sets (closed targets suffice for F-sigma targets)."""
    for c in closeds:
        if not is_closed(c):
            raise ClassifyError(f"{c} is not closed")
    return _witness(f, closeds, "FLB", depth, eps)


def cover_index(f: PiecewiseFunc, x, n_max: int = 10**6) -> int:
    """First n with x in X_n."""
    x = as_fraction(x)
    for n in range(1, n_max + 1):
        if pc_cover(f, n).contains(x):
            return n
    raise ClassifyError(f"{fmt_number(x)} not covered")


# --- gallery ------------------------------------------------------------------------


def riemann_eval(x) -> Q:
    """1/q for x = p/q in lowest terms (q > 0); integers map to 1.

    Irrational arguments, where the function is 0, are not representable.
    """
    x = as_fraction(x)
    return Q(1, x.denominator)


@dataclass(frozen=True)
class GalleryEntry:
    name: str
    evaluator: Callable | None
    classification: dict
    citation: str
    note: str = ""

    def to_dict(self):
        return {
            "name": self.name,
            "classification": self.classification,
            "citation": self.citation,
            "note": self.note,
            "evaluable": self.evaluator is not None,
        }


GALLERY = {
    "riemann": GalleryEntry(
        name="riemann",
        evaluator=riemann_eval,
        classification={"first_borel_class": True, "first_level_borel_class": False},
        citation="which is of the first Borel class but not of the first level Borel class",
        note="1/q at p/q in lowest terms, 0 at irrationals; only rational arguments are evaluated",
    ),
    "kalenda-spurny": GalleryEntry(
        name="kalenda-spurny",
        evaluator=None,
        classification={"baire_one": True, "bounded": True, "extendable_to_baire_one_on_[0,1]": False},
        citation="which cannot be extended to a Baire-one function on $[0,1]$",
        note=(
            "bounded Baire-one function on the rationals of [0,1] with no Baire-one extension to [0,1];"
            " its domain is not G-delta, so it is outside the representable universe"
        ),
    ),
}


def gallery(name: str) -> GalleryEntry:
    try:
        return GALLERY[name]
    except KeyError:
        raise ClassifyError(f"unknown gallery entry {name!r}; known: {', '.join(sorted(GALLERY))}") from None
