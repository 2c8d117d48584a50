"""Algebraic retractions of the real line onto an ambiguous set A.

``phi`` is the identity on A and equals a continuous map ``g`` off A.  The
module builds phi from A and g, supplies a canonical g, and checks the
structural facts that make phi piecewise continuous, of the first level Borel
class and Baire-one:

* the closed cover H_n = F_n U G_n on whose members phi is continuous,
* the closed-preimage identity phi^-1(F) = (A n F) U g^-1(F),
* continuous approximants phi_n that eventually agree with phi pointwise.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

from .pwfunc import (
    DEFAULT_EPS,
    PiecewiseFunc,
    jump_points,
    preimage,
    range_within,
    restrict,
)
from .realset import (
    Q,
    NEG_INF,
    POS_INF,
    Interval,
    RealSet,
    as_fraction,
    complement,
    fmt_number,
    fsigma_decomposition,
    gdelta_codecomposition,
    is_closed,
    union,
)
from .roots import Poly


class RetractionError(ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class AnchorRule(str, enum.Enum):
    NEAREST_MEMBER_ENDPOINT = "nearest-endpoint"
    MIDPOINT_FALLBACK = "midpoint"
    EXPLICIT = "explicit"


@dataclass(frozen=True)
class AnchorPolicy:
    rule: AnchorRule = AnchorRule.NEAREST_MEMBER_ENDPOINT
    anchors: tuple = ()  # one per complement component, for EXPLICIT


def _midpoint(piece: Interval) -> Q:
    if piece.lo == NEG_INF and piece.hi == POS_INF:
        return Q(0)
    if piece.lo == NEG_INF:
        return piece.hi - 1 if not piece.hi_closed else piece.hi
    if piece.hi == POS_INF:
        return piece.lo + 1 if not piece.lo_closed else piece.lo
    return (piece.lo + piece.hi) / 2


def _anchor(a: RealSet, gap: Interval, rule: AnchorRule) -> Q:
    left = next((p for p in reversed(a.pieces) if p.hi <= gap.lo), None) if gap.lo != NEG_INF else None
    right = next((p for p in a.pieces if p.lo >= gap.hi), None) if gap.hi != POS_INF else None
    if rule is AnchorRule.NEAREST_MEMBER_ENDPOINT:
        # both neighbours touch the gap; the tie goes to the smaller value
        if left is not None and left.hi_closed:
            return left.hi
        if right is not None and right.lo_closed:
            return right.lo
    nearest = left if left is not None else right
    return _midpoint(nearest)


def default_g(a: RealSet, policy: AnchorPolicy = AnchorPolicy()) -> PiecewiseFunc:
    """A continuous map from the complement of ``a`` into ``a``.

    Constant on each component of the complement.  Under the default rule the
    constant is the adjacent endpoint of a neighbouring piece of ``a`` when
    that endpoint lies in ``a`` (left neighbour first), otherwise the midpoint
    of the nearest piece; a half-line piece contributes the point at distance
    1 from its finite end.
    """
    if a.is_empty:
        raise RetractionError("cannot retract onto the empty set")
    rest = complement(a)
    rule = AnchorRule(policy.rule)
    if rule is AnchorRule.EXPLICIT:
        if len(policy.anchors) != len(rest.pieces):
            raise RetractionError(
                f"{len(rest.pieces)} complement components need as many anchors, got {len(policy.anchors)}"
            )
        anchors = [as_fraction(x) for x in policy.anchors]
        for x in anchors:
            if not a.contains(x):
                raise RetractionError(f"anchor {fmt_number(x)} is not in {a}", x)
    else:
        anchors = [_anchor(a, gap, rule) for gap in rest]
    return PiecewiseFunc(((gap, Poly.const(c)) for gap, c in zip(rest, anchors)), rest)


@dataclass(frozen=True)
class Retraction:
    phi: PiecewiseFunc
    A: RealSet
    g: PiecewiseFunc

    @property
    def single_interval(self) -> bool:
        return len(self.A.pieces) == 1

    def __call__(self, x) -> Q:
        return self.phi(x)


def build_retraction(a: RealSet, g: PiecewiseFunc | None = None, eps=DEFAULT_EPS) -> Retraction:
    """phi(x) = x on A and g(x) off A, after checking g is admissible."""
    if g is None:
        g = default_g(a)
    rest = complement(a)
    if g.domain != rest:
        raise RetractionError(f"g is defined on {g.domain}, expected the complement {rest}")
    ok, witness = range_within(g, a, eps)
    if not ok:
        where = fmt_number(witness) if isinstance(witness, Q) else str(witness)
        raise RetractionError(f"g maps {where} outside A = {a}", witness)
    jumps = jump_points(g)
    if jumps:
        raise RetractionError(f"g is discontinuous at {fmt_number(jumps[0])}", jumps[0])
    pieces = [(iv, Poly.x()) for iv in a] + [(p.interval, p.expr) for p in g.pieces]
    phi = PiecewiseFunc(pieces, RealSet.reals(), g.slack)
    return Retraction(phi, a, g)


def pc_decomposition(r: Retraction, n: int) -> RealSet:
    """H_n = F_n U G_n: closed, increasing in n, exhausting the line."""
    return union(fsigma_decomposition(r.A, n), gdelta_codecomposition(r.A, n))


def continuous_on(f: PiecewiseFunc, s: RealSet) -> tuple[bool, list[Q]]:
    """Whether f restricted to s is continuous, with the offending points."""
    jumps = jump_points(restrict(f, s))
    return not jumps, jumps


def flb_preimage(r: Retraction, closed_set: RealSet, eps=DEFAULT_EPS) -> RealSet:
    """phi^-1(F) via (A n F) U g^-1(F), cross-checked against the direct preimage."""
    if not is_closed(closed_set):
        raise RetractionError(f"{closed_set} is not closed")
    formula = union(r.A & closed_set, preimage(r.g, closed_set, eps).set)
    direct = preimage(r.phi, closed_set, eps).set
    if formula != direct:
        raise RetractionError(f"preimage identity fails: {formula} != {direct}")
    return formula


def retraction_approx(r: Retraction, n: int) -> PiecewiseFunc:
    """phi_n: phi on H_n, affine across each gap of H_n.

    phi_n is continuous, and phi_n(x) = phi(x) as soon as x is in H_n.
    """
    h = pc_decomposition(r, n)
    kept = restrict(r.phi, h)
    pieces = [(p.interval, p.expr) for p in kept.pieces]
    for gap in complement(h):
        p, q = gap.lo, gap.hi
        yp, yq = r.phi(p), r.phi(q)
        slope = (yq - yp) / (q - p)
        pieces.append((gap, Poly((yp - slope * p, slope))))
    return PiecewiseFunc(pieces, RealSet.reals(), r.phi.slack)


def entry_index(r: Retraction, x, n_max: int = 10**6) -> int:
    """First n with x in H_n."""
    x = as_fraction(x)
    for n in range(1, n_max + 1):
        if pc_decomposition(r, n).contains(x):
            return n
    raise RetractionError(f"{fmt_number(x)} not covered by H_n for n <= {n_max}")


@dataclass
class RetractionCheck:
    """Outcome of :func:`check_retraction`."""

    fixes_A: bool
    range_in_A: bool
    flb_identity: bool
    pc_continuity: bool
    approx_agrees: bool
    approx_continuous: bool
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(
            (self.fixes_A, self.range_in_A, self.flb_identity, self.pc_continuity, self.approx_agrees, self.approx_continuous)
        )

    def to_dict(self):
        return {
            "fixes_A": self.fixes_A,
            "range_in_A": self.range_in_A,
            "flb_identity": self.flb_identity,
            "pc_continuity": self.pc_continuity,
            "approx_agrees": self.approx_agrees,
            "approx_continuous": self.approx_continuous,
            "ok": self.ok,
            "failures": [str(f) for f in self.failures],
        }


def check_retraction(
    r: Retraction,
    samples: Sequence = (),
    closed_sets: Sequence[RealSet] = (),
    n_max: int = 10,
    eps=DEFAULT_EPS,
) -> RetractionCheck:
    fails = []
    fixes = True
    for a in samples:
        if r.A.contains(a) and r.phi(a) != a:
            fixes = False
            fails.append(f"phi({fmt_number(a)}) = {fmt_number(r.phi(a))}")
    in_a, witness = range_within(r.phi, r.A, eps)
    if not in_a:
        fails.append(f"phi leaves A near {witness}")
    flb = True
    for f_set in closed_sets:
        try:
            flb_preimage(r, f_set, eps)
        except RetractionError as e:
            flb = False
            fails.append(str(e))
    pc = agrees = cont = True
    for n in range(1, n_max + 1):
        h = pc_decomposition(r, n)
        ok, jumps = continuous_on(r.phi, h)
        if not ok:
            pc = False
            fails.append(f"phi jumps on H_{n} at {[fmt_number(j) for j in jumps]}")
        approx = retraction_approx(r, n)
        if restrict(approx, h) != restrict(r.phi, h):
            agrees = False
            fails.append(f"phi_{n} differs from phi on H_{n}")
        if jump_points(approx):
            cont = False
            fails.append(f"phi_{n} is discontinuous")
    return RetractionCheck(fixes, in_a, flb, pc, agrees, cont, fails)
