import pytest

from extendlab import extend as ex
from extendlab.notation import parse_piecewise as PW
from extendlab.notation import parse_set as S
from extendlab.realset import Q, RealSet
from extendlab.retraction import build_retraction

CLAMP = build_retraction(S("[0,1]"))


def test_phi_star_examples():
    assert str(ex.phi_star(PW("[0,1]: x^2"), CLAMP)) == "(-inf,0): 0; [0,1): x^2; [1,inf): 1"
    assert str(ex.phi_star(PW("[0,1]: 1"), CLAMP)) == "(-inf,inf): 1"
    r = build_retraction(S("(0,1)"))
    assert str(ex.phi_star(PW("(0,1): x"), r)) == "(-inf,0]: 1/2; (0,1): x; [1,inf): 1/2"


def test_phi_star_rejects_wrong_domain():
    with pytest.raises(ex.ExtensionError):
        ex.phi_star(PW("[0,2]: x"), CLAMP)


def test_constant_extension():
    assert str(ex.constant_extend(PW("[0,1]: x"), 0)) == "(-inf,0): 0; [0,1]: x; (1,inf): 0"
    assert str(ex.constant_extend(PW("R: x^2"), 3)) == "(-inf,inf): x^2"
    with pytest.raises(ex.ExtensionError):
        ex.constant_extend(PW("[0,1]: x"), 2)


@pytest.mark.parametrize(
    "u, case, expected",
    [("(-1/2,1/2)", "f(x0) in U", "(-inf,1/2) U (1,inf)"), ("(2,3)", "f(x0) not in U", "empty"), ("R", "f(x0) in U", "(-inf,inf)")],
)
def test_constant_extension_preimage(u, case, expected):
    d = ex.constant_extend_preimage(PW("[0,1]: x"), 0, S(u)).to_dict()
    assert d["case"] == case and d["preimage"] == expected and d["agrees"]


def test_preimage_chain():
    tr = ex.phi_star_preimage_chain(PW("[0,1]: x"), CLAMP, S("(1/2,2)"))
    assert str(tr.final) == "(1/2,inf)" and tr.stabilization_index == 1 and tr.ok
    tr = ex.phi_star_preimage_chain(PW("[0,1]: x"), CLAMP, RealSet.empty())
    assert tr.final.is_empty and tr.ok
    tr = ex.phi_star_preimage_chain(PW("[0,1]: 0"), CLAMP, S("(-1,1)"))
    assert str(tr.final) == "(-inf,inf)" and tr.ok


def test_chain_on_open_set_agrees_with_direct():
    r = build_retraction(S("(0,1) U [2,4]"))
    f = PW("(0,1): x; [2,4]: 5 - x")
    tr = ex.phi_star_preimage_chain(f, r, S("(1/2,3/2)"))
    assert tr.ok
    assert tr.final == tr.direct


def test_verify_phi_star():
    rep = ex.verify_operator(ex.OperatorKind.phi_star(CLAMP), [PW("[0,1]: x"), PW("[0,1]: 1-x^2")])
    assert rep.ok
    assert rep.isometry.details[0]["norm_A"] == rep.isometry.details[0]["norm_R"] == "1"


def test_verify_constant_operator():
    kind = ex.OperatorKind.constant_anchor(S("[0,1]"), 0)
    rep = ex.verify_operator(kind, [PW("[0,1]: x")])
    assert rep.ok and rep.positive.status == "pass"


def test_positivity_not_applicable_for_negative_input():
    rep = ex.verify_operator(ex.OperatorKind.phi_star(CLAMP), [PW("[0,1]: -1")])
    assert rep.ok and rep.positive.status == "not-applicable"


def test_baire_witness_routes():
    rep = ex.baire_witness(PW("[-1,0): 0; [0,1]: 1"), build_retraction(S("[-1,1]")))
    assert rep.ok and rep.route == "composition"
    rep = ex.baire_witness(PW("[-1,1]: x"), build_retraction(S("[-1,1]")))
    assert rep.ok and max(s.index for s in rep.samples) == 0
    rep = ex.baire_witness(PW("[0,1] U [2,3]: x"), build_retraction(S("[0,1] U [2,3]")))
    assert rep.ok and rep.route == "direct"


def test_default_samples_avoid_breakpoints():
    xs = ex.default_samples([Q(0), Q(1)], 20)
    assert len(xs) == 20
    assert Q(0) not in xs and Q(1) not in xs
