from fractions import Fraction as F

import pytest

from extendlab import classify as cl
from extendlab.notation import parse_piecewise as PW
from extendlab.notation import parse_set as S
from extendlab.realset import RealSet
from extendlab.retraction import build_retraction

STEP = "(-inf,0): 0; [0,inf): 1"


def test_continuity():
    assert cl.is_continuous(PW("[0,1): x^2; [1,2]: x^2")).continuous
    rep = cl.is_continuous(PW("[-1,0): 0; [0,1]: 1"))
    assert not rep.continuous and rep.to_dict()["jumps"] == ["0"]
    assert cl.is_continuous(PW("[0,1]: 0; [2,3]: 5")).continuous


def test_piecewise_continuity_cover():
    assert cl.is_piecewise_continuous(PW(STEP), 3).to_dict()["cover"] == [
        "(-inf,-1] U [0,inf)",
        "(-inf,-1/2] U [0,inf)",
        "(-inf,-1/3] U [0,inf)",
    ]
    assert cl.is_piecewise_continuous(PW("R: x")).to_dict()["cover"] == ["(-inf,inf)"]
    d = cl.is_piecewise_continuous(PW("(-inf,0): 0; [0,1): 1; [1,inf): 0"), 2).to_dict()
    assert d["piecewise_continuous"] and d["jumps"] == ["0", "1"]
    assert all(d["restriction_continuous"])


def test_fcb_witness():
    d = cl.fcb_witness(PW(STEP), [S("(1/2,2)")], 2).to_dict()
    assert d["witnessed"] and d["preimages"][0]["preimage"] == "[0,inf)"
    clamp = build_retraction(S("[0,1]")).phi
    e = cl.fcb_witness(clamp, [S("(-1,1/2)")], 3).to_dict()["preimages"][0]
    assert e["preimage"] == "(-inf,1/2)"
    assert e["fsigma_witness"] == ["(-inf,-1/2]", "(-inf,0]", "(-inf,1/6]"]
    empty = cl.fcb_witness(PW("R: x"), [RealSet.empty()], 1).to_dict()
    assert empty["preimages"][0]["preimage"] == "empty"


def test_fcb_rejects_non_open_target():
    with pytest.raises(cl.ClassifyError):
        cl.fcb_witness(PW("R: x"), [S("[0,1]")])


def test_flb_witness():
    clamp = build_retraction(S("[0,1]")).phi
    assert cl.flb_witness(clamp, [S("{0}")], 1).to_dict()["preimages"][0]["preimage"] == "(-inf,0]"
    assert cl.flb_witness(PW("R: x"), [S("[0,1]")], 1).to_dict()["preimages"][0]["preimage"] == "[0,1]"
    assert cl.flb_witness(PW(STEP), [S("{1}")], 1).to_dict()["preimages"][0]["preimage"] == "[0,inf)"


def test_cover_index():
    assert cl.cover_index(PW(STEP), F(-1, 10)) == 10
    assert cl.cover_index(PW(STEP), 5) == 1


def test_riemann_values():
    assert cl.riemann_eval(F(3, 6)) == F(1, 2)
    assert cl.riemann_eval(0) == 1
    assert cl.riemann_eval(F(22, 7)) == F(1, 7)


def test_gallery_lookup():
    assert cl.gallery("riemann").citation
    assert cl.gallery("kalenda-spurny").evaluator is None
    with pytest.raises(cl.ClassifyError):
        cl.gallery("nope")
