from __future__ import annotations

import json

import pytest
from conftest import mono

from mixmult.bhattacharya import MixedType, context
from mixmult.harness import (
    FuzzConfig,
    fuzz_campaign,
    random_instance,
    random_m_primary_equigenerated,
    rees_slot,
    verify_equimultiple_vanishing,
    verify_main_theorem,
    verify_rees_corollary,
    verify_superficial_remark,
)
from mixmult.monomial_ideal import MonomialIdeal
from mixmult.reductions import make_rng
from mixmult.ring import CoefficientField

M2, M3 = MonomialIdeal.maximal(2), MonomialIdeal.maximal(3)
XY = MonomialIdeal.coordinate([0, 1], 3)
Z2, Z3 = MonomialIdeal.zero(2), MonomialIdeal.zero(3)


def test_main_theorem_plane():
    rep = verify_main_theorem(M2, [M2], Z2, MixedType((1,), 1), 0)
    assert rep.verified and rep.mixed_value == rep.reduction_value == 1
    assert rep.certificates["joint_reduction"].verified


def test_main_theorem_space():
    rep = verify_main_theorem(M3, [XY], Z3, MixedType((1,), 2), 0)
    assert rep.verified and rep.mixed_value == rep.reduction_value == 1
    assert rep.window == (1, 3)


def test_advisory_mode_on_violated_hypothesis():
    rep = verify_main_theorem(M3, [XY], Z3, MixedType((2,), 1), 0)
    assert rep.status == "HypothesisViolated"
    assert rep.mixed_value == 0 and rep.reduction_value is None
    forced = verify_main_theorem(M3, [XY], Z3, MixedType((2,), 1), 0, force=True)
    assert forced.status == "HypothesisViolated"
    assert forced.reduction_value == 1 and not forced.equal


def test_module_instance():
    H = mono((1, 1, 1))
    rep = verify_main_theorem(M3.power(2), [M3], H, MixedType((0,), 2), 3)
    assert rep.verified and rep.mixed_value == rep.reduction_value == 12


def test_superficial_remark():
    rep = verify_superficial_remark(M2, [M2], Z2, MixedType((1,), 1), 4)
    assert rep.verified and "joint_reduction" not in rep.certificates
    rep = verify_superficial_remark(M3, [XY], Z3, MixedType((1,), 2), 4)
    assert rep.verified and rep.reduction_value == 1


def test_field_check_over_rationals():
    rep = verify_main_theorem(M2, [M2], Z2, MixedType((1,), 1), 0, field_check=True)
    assert rep.verified


def test_rees_corollary():
    rep = verify_rees_corollary([M2, M2], Z2, (1, 1), 0)
    assert rep.verified and rep.mixed_value == 1
    rep = verify_rees_corollary([M2, M2.power(2)], Z2, (1, 1), 0)
    assert rep.verified and rep.mixed_value == 2
    assert rees_slot((1, 0)) == 0 and rees_slot((1, 1)) == 1


def test_rees_corollary_errors():
    assert verify_rees_corollary([M2, mono((1, 0))], Z2, (1, 1), 0).status == "NotMPrimary"
    assert verify_rees_corollary([M2, M2], Z2, (1, 0), 0).status == "Error"


def test_equimultiple_vanishing():
    rep = verify_equimultiple_vanishing(0)
    assert rep.details["values"] == {"0;3": 1, "1;2": 1, "2;1": 0}
    assert rep.verified and rep.mixed_value == 0 and rep.reduction_value > 0
    with pytest.raises(ValueError):
        verify_equimultiple_vanishing(0, d=3, h=3)


def test_report_json_is_stable():
    a = verify_main_theorem(M3, [XY], Z3, MixedType((1,), 2), 9).to_dict(["x", "y", "z"])
    b = verify_main_theorem(M3, [XY], Z3, MixedType((1,), 2), 9).to_dict(["x", "y", "z"])
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
    assert "timings" not in a


def test_random_instances_satisfy_hypotheses():
    for trial in range(15):
        inst = random_instance(make_rng((1, trial)))
        ctx = context(inst.J, inst.I_list, inst.H)
        assert inst.mtype.total_degree == ctx.d - 1
        assert inst.mtype.i_sum < ctx.h
        assert all(I.is_equigenerated() for I in inst.I_list)


def test_random_m_primary_equigenerated():
    for trial in range(10):
        I = random_m_primary_equigenerated(make_rng((2, trial)), 3, 2)
        assert I.is_m_primary() and I.is_equigenerated()


def test_fuzz_campaign_small_and_deterministic():
    cfg = FuzzConfig(trials=4, nvars=(2,))
    a = fuzz_campaign(cfg, 5)
    assert a["equal"] == 4 and a["unequal"] == 0 and a["errored"] == 0
    assert fuzz_campaign(cfg, 5) == a
    assert fuzz_campaign(FuzzConfig(trials=0), 1)["equal"] == 0


def test_fuzz_config_validation():
    with pytest.raises(ValueError):
        FuzzConfig(nvars=(4,))
    with pytest.raises(ValueError):
        FuzzConfig(trials=-1)


def test_errors_become_statuses():
    rep = verify_main_theorem(mono((1, 0)), [M2], Z2, MixedType((1,), 1), 0)
    assert rep.status == "NotMPrimary"
    rep = verify_main_theorem(M2, [mono((1, 0), (0, 2))], Z2, MixedType((1,), 1), 0)
    assert rep.status == "UnsupportedInput"


def test_plane_campaign_fifty_trials():
    summary = fuzz_campaign(FuzzConfig(trials=50, nvars=(2,)), 0, CoefficientField.prime())
    assert summary["equal"] == 50, summary["reproducers"]
