import math

import pytest

import drbd

SERIES = "A ~ exp(0.1)\nB ~ exp(0.2)\nsystem = A * B\n"
WSP = "Y ~ exp(1.0)\nspare S ~ exp(1.0) dormancy 0.5\nsystem = wsp(Y, S)\n"


def test_parse_and_closed_form():
    m = drbd.parse(SERIES)
    assert m.blocks == ["A", "B"]
    assert m.rel(0.0) == 1.0
    assert m.rel(1.0) == pytest.approx(math.exp(-0.3), abs=1e-9)
    curve = m.rel_curve(0.0, 1.0, 4)
    assert [t for t, _ in curve] == pytest.approx([0.0, 0.25, 0.5, 0.75, 1.0])
    assert all(a >= b for (_, a), (_, b) in zip(curve, curve[1:]))


def test_parse_errors_surface_as_value_errors():
    with pytest.raises(ValueError):
        drbd.parse("system = A\n")
    with pytest.raises(ValueError):
        drbd.parse("A ~ exp(1)\nsystem = A * A\n").rel(1.0)  # not read-once


def test_simulation_is_deterministic_and_worker_independent():
    m = drbd.parse(WSP)
    a = m.simulate(1.0, n=50000, seed=11, workers=1)
    b = m.simulate(1.0, n=50000, seed=11, workers=4)
    assert a == b
    c = m.simulate(1.0, n=50000, seed=12)
    assert c != a


def test_compare_formula_against_oracle():
    m = drbd.parse(WSP)
    verdict = m.compare(1.0, n=200000, seed=5)
    assert verdict["consistent"]
    assert verdict["rel"] == pytest.approx(verdict["mc_rel"], abs=5 * verdict["mc_halfwidth"])


def test_simplify_normal_forms():
    m = drbd.parse("X ~ exp(1)\nY ~ exp(1)\nsystem = X + X * Y\n")
    assert m.simplify() == "X"
    n = drbd.parse("X ~ exp(1)\nsystem = X + never\n")
    assert n.simplify() == "never"


def test_spare_ordering_via_case_study_machinery():
    def wsp_rel(alpha):
        text = f"Y ~ exp(1.0)\nspare S ~ exp(1.0) dormancy {alpha}\nsystem = wsp(Y, S)\n"
        return drbd.parse(text).rel(1.0)

    cold, warm, hot = wsp_rel(0.0), wsp_rel(0.5), wsp_rel(1.0)
    assert cold >= warm >= hot
    assert cold == pytest.approx(2.0 * math.exp(-1.0), abs=1e-7)


def test_case_studies():
    sen = drbd.case_study("sen")
    sen_plain = drbd.case_study("sen-nospare")
    for t in (0.0, 2.0e4, 1.0e5):
        assert sen.rel(t) >= sen_plain.rel(t)
    dbw = drbd.case_study("dbw", rates={"TF": 1e-3})
    assert dbw.rel(0.0) == 1.0
    assert dbw.rel(1000.0) < drbd.case_study("dbw").rel(1000.0)
    with pytest.raises(ValueError):
        drbd.case_study("nope")
