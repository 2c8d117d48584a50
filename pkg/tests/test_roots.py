import math
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import corpus
from extendlab import roots as ro
from extendlab.notation import parse_poly as P
from extendlab.realset import Interval
from extendlab.roots import Poly, PolyError, RootBracket


def test_arithmetic_examples():
    assert ro.poly_eval(P("x^2 - x"), F(1, 2)) == F(-1, 4)
    assert ro.poly_compose(P("x^2"), P("x + 1")) == P("x^2 + 2x + 1")
    assert ro.poly_derivative(P("3x^3")) == P("9x^2")
    assert ro.poly_add(P("x"), P("-x")).is_zero
    assert ro.poly_mul(P("x - 1"), P("x + 1")) == P("x^2 - 1")
    assert ro.poly_scale(P("2x + 4"), F(1, 2)) == P("x + 2")


def test_degree_bookkeeping():
    assert Poly(()).degree == -1 or Poly(()).is_zero
    assert Poly((1, 0, 0)).degree == 0
    assert (P("x^3 + x") * P("x^2")).degree == 5


def _proportional(p: Poly, q: Poly) -> bool:
    return p.degree == q.degree and p.scale(q.lead / p.lead) == q


def _gcd_oracle(p: Poly, q: Poly) -> Poly:
    # Euclid by long division, written out independently of poly_gcd
    a, b = list(p.coeffs), list(q.coeffs)
    while any(b):
        while b and b[-1] == 0:
            b.pop()
        r = a[:]
        while len(r) >= len(b) and any(r):
            c = r[-1] / b[-1]
            shift = len(r) - len(b)
            for i, coef in enumerate(b):
                r[shift + i] -= c * coef
            r.pop()
        a, b = b, r if r else [0]
    return Poly(tuple(a))


@pytest.mark.parametrize("text, expected", [("(x-1)^2", "x - 1"), ("x^2 - 2", "x^2 - 2"), ("x^3 - x^2", "x^2 - x")])
def test_squarefree_examples(text, expected):
    assert _proportional(ro.squarefree_part(P(text)), P(expected))


def test_squarefree_matches_gcd_oracle():
    p = P("x^3 - x^2")
    g = _gcd_oracle(p, p.derivative())
    quotient, rem = ro.poly_divmod(p, g)
    assert rem.is_zero
    assert _proportional(ro.squarefree_part(p), quotient)


def test_squarefree_rejects_zero():
    with pytest.raises(PolyError):
        ro.squarefree_part(Poly(()))


def test_isolation_examples():
    bs = ro.isolate_roots(P("x^2 - 2"), Interval.open(-10, 10))
    assert len(bs) == 2
    assert bs[0].hi <= 0 and bs[0].hi ** 2 <= 2 <= bs[0].lo ** 2
    assert bs[1].lo >= 0 and bs[1].lo ** 2 <= 2 <= bs[1].hi ** 2
    assert ro.isolate_roots(P("x^2 + 1")) == []
    (b,) = ro.isolate_roots(P("(x-1)^2"))
    assert b.lo <= 1 <= b.hi


def test_isolation_rejects_zero():
    with pytest.raises(PolyError):
        ro.isolate_roots(Poly(()))


def test_sign_scan_oracle_for_sqrt2():
    p = P("x^2 - 2")
    xs = [F(k, 1000) for k in range(-10000, 10001)]
    changes = sum(1 for a, b in zip(xs, xs[1:]) if p(a) * p(b) < 0)
    assert changes == len(ro.isolate_roots(p, Interval.open(-10, 10)))


def test_refine_examples():
    (b,) = ro.isolate_roots(P("x^2 - 2"), Interval.closed(0, 2))
    r = ro.refine(b, F(1, 1000))
    assert r.width <= F(1, 1000)
    assert 0 < r.lo and r.lo ** 2 <= 2 <= r.hi ** 2
    narrow = RootBracket(P("x^2 - 2"), F(141, 100), F(142, 100))
    assert ro.refine(narrow, 1) == narrow
    r3 = ro.refine(RootBracket(P("x - 3"), 0, 10), 1)
    assert r3.width <= 1 and r3.lo <= 3 <= r3.hi


def test_refine_rejects_nonpositive_eps():
    (b,) = ro.isolate_roots(P("x^2 - 2"), Interval.closed(0, 2))
    with pytest.raises(PolyError):
        ro.refine(b, 0)


def test_bisection_halves_width_and_keeps_sign_change():
    (b,) = ro.isolate_roots(P("x^3 - 2"), Interval.closed(0, 2))
    for _ in range(20):
        nxt = ro.bisect_once(b)
        if nxt.is_exact:
            break
        assert nxt.width == b.width / 2
        assert nxt.poly(nxt.lo) * nxt.poly(nxt.hi) < 0
        b = nxt


def test_rational_roots_are_exact():
    bs = ro.isolate_roots(P("(3x - 1)(x^2 - 5)"))
    exact = [ro.rational_root(b) for b in bs]
    assert F(1, 3) in exact
    assert sum(r is None for r in exact) == 2


def test_sturm_total_count():
    rng = random.Random(11)
    for _ in range(50):
        p = corpus.random_poly(rng, rng.randint(1, 6))
        if p.is_constant:
            continue
        q = ro.squarefree_part(p)
        seq = ro.sturm_sequence(q)
        total = ro.sign_variations(seq, -math.inf) - ro.sign_variations(seq, math.inf)
        assert total == len(ro.isolate_roots(p))


def test_value_enclosure_contains_values():
    p = P("x^3 - 2x + 1")
    lo, hi = ro.value_enclosure(p, F(0), F(1, 2))
    for k in range(11):
        assert lo <= p(F(k, 20)) <= hi


def test_format_round_trip():
    for text in ("3/2*x^2 - x + 1/3", "x", "-x^4 + 7", "0"):
        assert P(str(P(text))) == P(text)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.fractions(min_value=-9, max_value=9, max_denominator=5), min_size=1, max_size=5, unique=True))
def test_isolates_constructed_roots(rs):
    p = Poly((1,))
    for r in rs:
        p = p * Poly((-r, 1))
    bs = ro.isolate_roots(p)
    assert len(bs) == len(rs)
    for b, r in zip(bs, sorted(rs)):
        assert b.lo <= r <= b.hi
        assert ro.rational_root(b) == r
