import random
from fractions import Fraction as F

import pytest

import corpus
from extendlab import pwfunc as pw
from extendlab.notation import parse_piecewise as PW
from extendlab.notation import parse_poly as P
from extendlab.notation import parse_set as S
from extendlab.pwfunc import DomainError, Mode, PiecewiseFunc
from extendlab.realset import Q, RealSet
from extendlab.retraction import build_retraction

STEP = "[-1,0): 0; [0,1]: 1"


def test_evaluation():
    assert PW("[0,2]: x^2")(F(3, 2)) == F(9, 4)
    assert PW(STEP)(0) == 1
    assert PW(STEP)(F(-1, 2)) == 0


def test_evaluation_outside_domain():
    with pytest.raises(DomainError):
        PW("[0,1]: x")(2)


def test_overlapping_pieces_rejected():
    with pytest.raises(DomainError):
        PiecewiseFunc([(S("[0,1]").pieces[0], P("x")), (S("[1,2]").pieces[0], P("1"))])


def test_linear_combinations():
    assert str(pw.add(PW("[0,1]: x"), PW("[0,1]: 1-x"))) == "[0,1]: 1"
    assert str(pw.scale(PW("[0,1]: x"), 0)) == "[0,1]: 0"
    f = pw.linear_combination([(2, PW("[0,1]: x")), (-1, PW("[0,1]: x^2"))])
    assert f(F(1, 2)) == F(3, 4)


def test_linear_combination_needs_common_domain():
    with pytest.raises(DomainError):
        pw.add(PW("[0,1]: x"), PW("[0,2]: x"))


def test_lattice_and_absolute():
    assert str(pw.lattice_max(PW("[0,1]: x"), PW("[0,1]: 1-x"))) == "[0,1/2): -x + 1; [1/2,1]: x"
    assert str(pw.lattice_min(PW("[0,1]: x"), PW("[0,1]: 1-x"))) == "[0,1/2): x; [1/2,1]: -x + 1"
    g = pw.absolute(PW("[0,2]: x^2-2"))
    assert g.mode is Mode.APPROX
    cut = g.breakpoints()[1]
    assert (cut - g.slack) ** 2 <= 2 <= (cut + g.slack) ** 2


def test_absolute_of_rational_crossing_is_exact():
    g = pw.absolute(PW("[-1,1]: x"))
    assert g.exact
    assert str(g) == "[-1,0): -x; [0,1]: x"


def test_composition():
    clamp = build_retraction(S("[0,1]")).phi
    assert str(pw.compose(PW("[0,1]: x^2"), clamp)) == "(-inf,0): 0; [0,1): x^2; [1,inf): 1"
    assert str(pw.compose(PW("[0,1]: x^2"), PiecewiseFunc.identity(S("[0,1]")))) == "[0,1]: x^2"


def test_composition_range_violation():
    with pytest.raises(pw.RangeError) as err:
        pw.compose(PW("[0,1]: x"), PW("[0,2]: x"))
    assert err.value.witness is not None


def test_preimages():
    p = pw.preimage(PW("[0,1] U [2,3]: x"), S("(1/2,5/2)"))
    assert str(p.set) == "(1/2,1] U [2,5/2)" and p.mode is Mode.EXACT
    assert str(pw.preimage(PW("[0,2]: x^2"), S("[0,1]")).set) == "[0,1]"
    assert pw.preimage(PW("[0,1]: x"), RealSet.empty()).set.is_empty


def test_irrational_preimage_is_approx_and_bracketed():
    p = pw.preimage(PW("[0,2]: x^2"), S("[0,2]"))
    assert p.mode is Mode.APPROX
    (piece,) = p.set.pieces
    assert piece.lo == 0 and abs(piece.hi ** 2 - 2) <= 4 * p.slack


def test_sup_norms():
    n = pw.sup_norm(PW("[0,2]: x^2-x"))
    assert n.exact == 2 and n.attained
    n = pw.sup_norm(PW("(0,1): x"))
    assert n.exact == 1 and not n.attained


def test_sup_norm_matches_dense_sampling():
    rng = random.Random(5)
    for _ in range(40):
        f = corpus.random_pw(rng, S("[-2,2]"))
        n = pw.sup_norm(f)
        xs = corpus.sample_points(rng, f.domain, 200)
        assert max(abs(f(x)) for x in xs) <= n.hi + n.width + Q(1, 10**6)


def test_restriction():
    clamp = build_retraction(S("[0,1]")).phi
    assert str(pw.restrict(clamp, S("[0,1]"))) == "[0,1]: x"
    assert pw.restrict(clamp, RealSet.empty()).domain.is_empty


def test_continuous_approximation_of_step():
    ap = pw.continuous_approximation(PW(STEP), 4)
    assert str(ap) == "[-1,-1/4): 0; [-1/4,0): 4*x + 1; [0,1]: 1"
    assert ap(F(-1, 8)) == F(1, 2)


def test_canonical_equality():
    assert pw.canonical_equal(pw.add(PW("[0,1]: x"), PW("[0,1]: x")), PW("[0,1]: 2x"))
    assert not pw.canonical_equal(PW("[0,1]: x^2"), PW("[0,1): x^2"))
    assert pw.canonical_equal(PW("[0,1): x; [1,2]: x"), PW("[0,2]: x"))


def test_jumps():
    assert pw.jump_points(PW(STEP)) == [0]
    assert pw.jump_points(PW("[0,1): x^2; [1,2]: x^2")) == []
