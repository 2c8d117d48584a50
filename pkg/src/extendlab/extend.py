"""Linear extension operators from A to the whole line, and their verification.

Two operators are provided:

* ``phi_star``: f -> f o phi for an algebraic retraction phi onto A;
* ``constant_extend``: f -> f on A, f(x0) off A, for a fixed anchor x0 in A.

:func:`verify_operator` checks the claimed operator properties as exact
identities between normal-form piecewise functions, and the preimage helpers
replay the set identities used to show the extensions stay in the first Borel
class.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .pwfunc import (
    DEFAULT_EPS,
    Mode,
    NormResult,
    PiecewiseFunc,
    PreimageResult,
    canonical_equal,
    compose,
    continuous_approximation,
    infimum,
    jump_points,
    linear_combination,
    preimage,
    restrict,
    sup_norm,
)
from .realset import (
    Q,
    NEG_INF,
    POS_INF,
    RealSet,
    as_fraction,
    complement,
    coverage_index,
    fmt_number,
    fsigma_decomposition,
    is_open,
    union,
)
from .retraction import Retraction, flb_preimage, retraction_approx
from .roots import Poly


class ExtensionError(ValueError):
    pass


# --- the operators ------------------------------------------------------------------


def phi_star(f: PiecewiseFunc, r: Retraction, eps=DEFAULT_EPS) -> PiecewiseFunc:
    """f o phi, a function on the whole line extending f."""
    if f.domain != r.A:
        raise ExtensionError(f"f is defined on {f.domain}, the retraction targets {r.A}")
    out = compose(f, r.phi, eps)
    if out.exact and restrict(out, r.A) != f:
        raise ExtensionError("f o phi does not restrict to f on A")
    return out


def constant_extend(f: PiecewiseFunc, x0) -> PiecewiseFunc:
    """f on A and the constant f(x0) on the complement."""
    x0 = as_fraction(x0)
    if not f.domain.contains(x0):
        raise ExtensionError(f"anchor {fmt_number(x0)} is not in A = {f.domain}")
    c = f(x0)
    pieces = [(p.interval, p.expr) for p in f.pieces]
    pieces += [(iv, Poly.const(c)) for iv in complement(f.domain)]
    return PiecewiseFunc(pieces, RealSet.reals(), f.slack)


@dataclass(frozen=True)
class OperatorKind:
    """Which extension operator to apply: PHI_STAR or CONSTANT_ANCHOR."""

    tag: str
    A: RealSet
    retraction: Retraction | None = None
    x0: Q | None = None

    @classmethod
    def phi_star(cls, r: Retraction) -> "OperatorKind":
        return cls("PHI_STAR", r.A, retraction=r)

    @classmethod
    def constant_anchor(cls, a: RealSet, x0) -> "OperatorKind":
        x0 = as_fraction(x0)
        if not a.contains(x0):
            raise ExtensionError(f"anchor {fmt_number(x0)} is not in A = {a}")
        return cls("CONSTANT_ANCHOR", a, x0=x0)

    def apply(self, f: PiecewiseFunc, eps=DEFAULT_EPS) -> PiecewiseFunc:
        if f.domain != self.A:
            raise ExtensionError(f"f is defined on {f.domain}, operator expects {self.A}")
        if self.tag == "PHI_STAR":
            return phi_star(f, self.retraction, eps)
        return constant_extend(f, self.x0)

    def describe(self) -> dict:
        out = {"tag": self.tag, "A": str(self.A)}
        if self.retraction is not None:
            out["phi"] = str(self.retraction.phi)
        if self.x0 is not None:
            out["x0"] = fmt_number(self.x0)
        return out


# --- verification ---------------------------------------------------------------------


PASS, FAIL, NOT_APPLICABLE, INCONCLUSIVE = "pass", "fail", "not-applicable", "inconclusive"


@dataclass
class Check:
    status: str = PASS
    checked: int = 0
    witness: str | None = None
    details: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.status in (PASS, NOT_APPLICABLE)

    def fail(self, witness: str):
        if self.status != FAIL:
            self.witness = witness
        self.status = FAIL

    def unsure(self, witness: str):
        if self.status == PASS:
            self.status = INCONCLUSIVE
            self.witness = witness

    def to_dict(self):
        out = {"status": self.status, "ok": self.ok, "checked": self.checked}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.details:
            out["details"] = self.details
        return out


@dataclass
class OperatorReport:
    kind: dict
    extension: Check
    linear: Check
    positive: Check
    unity: Check
    isometry: Check

    @property
    def extension_ok(self):
        return self.extension.ok

    @property
    def linear_ok(self):
        return self.linear.ok

    @property
    def positive_ok(self):
        return self.positive.ok

    @property
    def unity_ok(self):
        return self.unity.ok

    @property
    def isometry_ok(self):
        return self.isometry.ok

    @property
    def ok(self) -> bool:
        return all(c.ok for c in (self.extension, self.linear, self.positive, self.unity, self.isometry))

    def to_dict(self):
        return {
            "operator": self.kind,
            "extension": self.extension.to_dict(),
            "linear": self.linear.to_dict(),
            "positive": self.positive.to_dict(),
            "unity": self.unity.to_dict(),
            "isometry": self.isometry.to_dict(),
            "ok": self.ok,
        }


def _norm_str(n: NormResult) -> str:
    if n.exact is not None:
        return fmt_number(n.exact)
    return f"[{fmt_number(n.lo)}, {fmt_number(n.hi)}]"


def compare_norms(a: NormResult, b: NormResult, eps) -> str:
    """PASS, FAIL or INCONCLUSIVE for the claim sup-norms are equal."""
    if a.exact is not None and b.exact is not None:
        return PASS if a.exact == b.exact else FAIL
    if a.lo > b.hi or b.lo > a.hi:
        return FAIL
    if max(a.hi, b.hi) - min(a.lo, b.lo) <= 2 * eps:
        return PASS
    return INCONCLUSIVE


def verify_operator(
    kind: OperatorKind,
    fs: Sequence[PiecewiseFunc],
    coeffs: Sequence[tuple] = ((1, 1),),
    eps=DEFAULT_EPS,
) -> OperatorReport:
    """Check extension, linearity, unity, positivity and isometry of ``kind``.

    Linearity is checked for every coefficient pair against each consecutive
    pair of inputs.  Positivity only concerns inputs with nonnegative infimum
    on A, and isometry only bounded inputs; with none of either the check is
    reported not-applicable.
    """
    eps = as_fraction(eps)
    a = kind.A
    for f in fs:
        if f.domain != a:
            raise ExtensionError(f"input defined on {f.domain}, expected {a}")
    ext = {id(f): kind.apply(f, eps) for f in fs}

    extension = Check()
    for f in fs:
        extension.checked += 1
        if not canonical_equal(restrict(ext[id(f)], a), f):
            extension.fail(f"restriction of the extension of {f} differs")

    linear = Check()
    pairs = list(zip(fs, list(fs[1:]) + list(fs[:1]))) if fs else []
    for f, g in pairs:
        for alpha, beta in coeffs:
            alpha, beta = as_fraction(alpha), as_fraction(beta)
            linear.checked += 1
            lhs = kind.apply(linear_combination([(alpha, f), (beta, g)]), eps)
            rhs = linear_combination([(alpha, ext[id(f)]), (beta, ext[id(g)])])
            if not canonical_equal(lhs, rhs):
                linear.fail(f"alpha={fmt_number(alpha)}, beta={fmt_number(beta)}, f={f}, g={g}")

    unity = Check(checked=1)
    one = kind.apply(PiecewiseFunc.constant(a, 1), eps)
    if not canonical_equal(one, PiecewiseFunc.constant(RealSet.reals(), 1)):
        unity.fail(f"image of 1 is {one}")

    positive = Check()
    for f in fs:
        low = infimum(f, None, eps)
        if low.hi < 0:
            continue
        if low.lo < 0:
            positive.unsure(f"infimum of {f} on A not decided: {_norm_str(low)}")
            continue
        positive.checked += 1
        low_ext = infimum(ext[id(f)], None, eps)
        if low_ext.hi < 0:
            positive.fail(f"extension of {f} reaches {_norm_str(low_ext)}")
        elif low_ext.lo < 0:
            positive.unsure(f"infimum of extension of {f} not decided: {_norm_str(low_ext)}")
    if positive.checked == 0 and positive.status == PASS:
        positive.status = NOT_APPLICABLE

    isometry = Check()
    for f in fs:
        n_a = sup_norm(f, None, eps)
        if not n_a.finite:
            continue
        n_x = sup_norm(ext[id(f)], None, eps)
        isometry.checked += 1
        verdict = compare_norms(n_a, n_x, eps)
        isometry.details.append({"f": str(f), "norm_A": _norm_str(n_a), "norm_R": _norm_str(n_x)})
        if verdict == FAIL:
            isometry.fail(f"||f||_A = {_norm_str(n_a)} but ||Tf||_R = {_norm_str(n_x)} for f = {f}")
        elif verdict == INCONCLUSIVE:
            isometry.unsure(f"norm enclosures overlap without agreeing for f = {f}")
    if isometry.checked == 0 and isometry.status == PASS:
        isometry.status = NOT_APPLICABLE

    return OperatorReport(kind.describe(), extension, linear, positive, unity, isometry)


# --- preimage identities ------------------------------------------------------------


@dataclass(frozen=True)
class CaseSplitPreimage:
    """Preimage of an open set under the constant-anchor extension."""

    result: PreimageResult
    case: str  # "f(x0) in U" or "f(x0) not in U"
    direct: RealSet

    def to_dict(self):
        return {
            "case": self.case,
            "preimage": str(self.result.set),
            "mode": self.result.mode.value,
            "direct": str(self.direct),
            "agrees": self.result.set == self.direct,
        }


def constant_extend_preimage(f: PiecewiseFunc, x0, u: RealSet, eps=DEFAULT_EPS) -> CaseSplitPreimage:
    """Preimage of U under the constant-anchor extension, by the two-case formula.

    The formula's answer is compared with the direct preimage of the extension.
    """
    if not is_open(u):
        raise ExtensionError(f"{u} is not open")
    x0 = as_fraction(x0)
    ext = constant_extend(f, x0)
    base = preimage(f, u, eps)
    if u.contains(f(x0)):
        case = "f(x0) in U"
        formula = union(base.set, complement(f.domain))
    else:
        case = "f(x0) not in U"
        formula = base.set
    direct = preimage(ext, u, eps)
    if base.mode is Mode.EXACT and direct.mode is Mode.EXACT and formula != direct.set:
        raise ExtensionError(f"case formula gives {formula}, direct preimage is {direct.set}")
    return CaseSplitPreimage(PreimageResult(formula, base.mode, base.slack), case, direct.set)


@dataclass
class PreimageChainTrace:
    """Replay of the preimage chain for f o phi and an open set U.

    K_n exhausts f^-1(U) by closed sets, G_n is the same set viewed as closed
    in the line (K_n = A n G_n), and the union of phi^-1(G_n) rebuilds the
    preimage of U under f o phi.  The part of that union inside A is the union
    of the K_n, which is f^-1(U) itself; the part off A is a finite increasing
    chain that reaches its bound g^-1(f^-1(U)) at the stabilization index.
    """

    U: RealSet
    f_preimage: RealSet
    K: list
    G: list
    phi_preimages: list
    partial_unions: list
    off_A_unions: list
    stabilization_index: int | None
    final: RealSet | None
    direct: RealSet
    step_identities: bool
    anchor_index: int | None = None  # predicted stabilization index, for constant g

    @property
    def ok(self) -> bool:
        return self.stabilization_index is not None and self.final == self.direct and self.step_identities

    def to_dict(self):
        s = lambda xs: [str(x) for x in xs]
        return {
            "U": str(self.U),
            "f_preimage": str(self.f_preimage),
            "K": s(self.K),
            "G": s(self.G),
            "phi_preimage_G": s(self.phi_preimages),
            "partial_unions": s(self.partial_unions),
            "off_A_unions": s(self.off_A_unions),
            "stabilization_index": self.stabilization_index,
            "final": None if self.final is None else str(self.final),
            "direct": str(self.direct),
            "step_identities": self.step_identities,
            "anchor_index": self.anchor_index,
            "ok": self.ok,
        }


def phi_star_preimage_chain(
    f: PiecewiseFunc, r: Retraction, u: RealSet, n_max: int = 64, eps=DEFAULT_EPS
) -> PreimageChainTrace:
    if not is_open(u):
        raise ExtensionError(f"{u} is not open")
    p = preimage(f, u, eps)
    if p.mode is not Mode.EXACT:
        raise ExtensionError("f^-1(U) has irrational boundary points; the chain needs it exact")
    direct = preimage(phi_star(f, r, eps), u, eps)
    if direct.mode is not Mode.EXACT:
        raise ExtensionError("(f o phi)^-1(U) is not exact")
    bound_off = preimage(r.g, p.set, eps).set
    ks, gs, steps, partials, offs = [], [], [], [], []
    identities = True
    partial = off = RealSet.empty()
    stab = None
    for n in range(1, n_max + 1):
        k = fsigma_decomposition(p.set, n)
        g_n = k  # already closed in the line
        identities &= (r.A & g_n) == k
        step = flb_preimage(r, g_n, eps)
        off_step = preimage(r.g, g_n, eps).set
        identities &= step == union(r.A & g_n, off_step)
        partial = union(partial, step)
        off = union(off, off_step)
        ks.append(k)
        gs.append(g_n)
        steps.append(step)
        partials.append(partial)
        offs.append(off)
        if off == bound_off:
            stab = n
            break
    final = union(p.set, offs[-1]) if stab is not None else None
    return PreimageChainTrace(
        u, p.set, ks, gs, steps, partials, offs, stab, final, direct.set, identities, _anchor_index(r, p.set)
    )


def _anchor_index(r: Retraction, target: RealSet) -> int | None:
    """When g is constant on each component, the off-A part of the chain is
    complete once every anchor lying in ``target`` has entered the closed
    exhaustion of ``target``; that happens at the largest coverage index.
    """
    if any(not piece.expr.is_constant for piece in r.g.pieces):
        return None
    anchors = {piece.expr.constant_value() for piece in r.g.pieces}
    return max((coverage_index(target, c) for c in anchors if target.contains(c)), default=1)


# --- Baire-one witness ------------------------------------------------------------------


def _ceil_inv(d) -> int:
    if d == POS_INF:
        return 0
    return int(math.ceil(1 / Q(d)))


def _dist(x, pts) -> Q | float:
    ds = [abs(x - p) for p in pts if p != x]
    return min(ds) if ds else POS_INF


@dataclass
class SampleTrace:
    x: Q
    target: Q
    index: int  # equal for every n in (index, n_max]
    bound: int

    def to_dict(self):
        return {"x": fmt_number(self.x), "value": fmt_number(self.target), "index": self.index, "bound": self.bound}


@dataclass
class BaireReport:
    route: str  # "composition" or "direct"
    n_max: int
    samples: list
    continuous: list  # per n

    @property
    def stabilized(self) -> bool:
        return all(s.index < self.n_max for s in self.samples)

    @property
    def bound_ok(self) -> bool:
        return all(s.index <= s.bound for s in self.samples)

    @property
    def all_continuous(self) -> bool:
        return all(self.continuous)

    @property
    def ok(self) -> bool:
        return self.stabilized and self.bound_ok and self.all_continuous

    def to_dict(self):
        return {
            "route": self.route,
            "n_max": self.n_max,
            "stabilized": self.stabilized,
            "bound_ok": self.bound_ok,
            "all_continuous": self.all_continuous,
            "ok": self.ok,
            "samples": [s.to_dict() for s in self.samples],
        }


def default_samples(points: Sequence, count: int = 200) -> list[Q]:
    """``count`` rationals spread over a window around the given points.

    The window is cut into ``count`` equal cells and each cell contributes its
    point farthest from ``points``.  Convergence is slowest next to a
    breakpoint, so this keeps the needed n_max proportional to ``count``
    instead of to how closely a uniform grid happens to hit a breakpoint.
    """
    finite = sorted({p for p in points if p not in (NEG_INF, POS_INF)})
    lo = min(finite, default=Q(0)) - 2
    hi = max(finite, default=Q(0)) + 2
    step = (hi - lo) / count
    out = []
    for i in range(count):
        a, b = lo + step * i, lo + step * (i + 1)
        cuts = [a] + [p for p in finite if a < p < b] + [b]
        candidates = [(u + v) / 2 for u, v in zip(cuts, cuts[1:])]
        out.append(max(candidates, key=lambda x: _dist(x, finite)))
    return out


def baire_witness(
    f: PiecewiseFunc,
    r: Retraction,
    n_max: int | None = None,
    samples: Sequence | None = None,
    eps=DEFAULT_EPS,
) -> BaireReport:
    """Continuous functions converging pointwise (eventually equal) to f o phi.

    On a single-interval A these are f_n o phi_n, with f_n the continuous
    approximations of f and phi_n those of phi.  When A is disconnected the
    affine fill-ins of phi_n can leave A, so the approximations of f o phi are
    used directly.

    Each sample gets a bound from its distance to the relevant breakpoints;
    with ``n_max`` None the sequence runs one step past the largest bound.
    """
    if n_max is not None and n_max < 1:
        raise ExtensionError("n_max must be at least 1")
    target = phi_star(f, r, eps)
    if samples is None:
        samples = default_samples(r.phi.breakpoints() + f.breakpoints())
    samples = [as_fraction(x) for x in samples]
    if r.single_interval:
        route = "composition"
        phi_bps = r.phi.breakpoints()
        f_jumps = jump_points(f)
        bounds = [
            max(_ceil_inv(_dist(x, phi_bps)), _ceil_inv(_dist(r.phi(x), f_jumps))) for x in samples
        ]

        def approx(n):
            return compose(continuous_approximation(f, n), retraction_approx(r, n), eps)

    else:
        route = "direct"
        h_jumps = jump_points(target)
        bounds = [_ceil_inv(_dist(x, h_jumps)) for x in samples]

        def approx(n):
            return continuous_approximation(target, n)

    if n_max is None:
        n_max = max(bounds, default=0) + 1
    values = [target(x) for x in samples]
    index = [0] * len(samples)
    continuous = []
    for n in range(1, n_max + 1):
        h = approx(n)
        continuous.append(not jump_points(h))
        for i, x in enumerate(samples):
            if h(x) != values[i]:
                index[i] = n
    traces = [SampleTrace(x, v, k, b) for x, v, k, b in zip(samples, values, index, bounds)]
    return BaireReport(route, n_max, traces, continuous)
