"""Numerical probe, first integrals, and the cross-validation report."""

import numpy as np
import pytest

from liestab.algebra_core import MetricLieAlgebra
from liestab.catalog import (
    STANDARD_PHI_MATRIX,
    central_extension_algebra,
    get_entry,
    milnor_algebra,
    semidirect_algebra,
)
from liestab.classify import NotStationaryError
from liestab.euler import integrate
from liestab.probe import (
    AgreementReport,
    AgreementRow,
    ProbeConfig,
    agreement_report,
    integral_drift,
    integral_set_for,
    probe_point,
)

FAST = ProbeConfig(epsilons=(1e-2, 1e-3), T=50.0, trials=8)


def test_abelian_deviation_is_exactly_epsilon():
    alg = MetricLieAlgebra.from_brackets(3, {})
    rep = probe_point(alg, np.array([1.0, 2.0, 3.0]), FAST)
    assert rep.verdict == "EmpStable"
    for eps in FAST.epsilons:
        assert rep.max_deviation[repr(eps)] == pytest.approx(eps, rel=1e-10)


def test_probe_requires_stationarity():
    alg = milnor_algebra(1.0, 2.0, 3.0)
    with pytest.raises(NotStationaryError):
        probe_point(alg, np.array([1.0, 1.0, 1.0]), FAST)


def test_unstable_circle_matches_closed_form():
    # perturbing e1 by eps*e3 makes (y1, y2) rotate at rate eps: the
    # trajectory is a circle of radius |X| and the excursion reaches 0.1
    alg = MetricLieAlgebra.from_brackets(4, {(0, 1): [0, 0, 1, 0]})
    rep = probe_point(alg, np.eye(4)[0], ProbeConfig(epsilons=(1e-2,), trials=8))
    assert rep.verdict == "EmpUnstable"
    eps = 1e-2
    traj = integrate(alg, np.eye(4)[0] + eps * np.eye(4)[2], T=200.0)
    dev = np.linalg.norm(traj.states - np.eye(4)[0], axis=1)
    # chord of the circle plus the constant offset along e3
    expected = np.sqrt((2 * np.sin(eps * traj.times / 2)) ** 2 + eps ** 2)
    assert np.max(np.abs(dev - expected)) <= 1e-6


def test_stable_point_stays_within_linear_band():
    rep = probe_point(milnor_algebra(1.0, 0.0, -1.0), np.eye(3)[0], FAST)
    assert rep.verdict == "EmpStable"
    for eps in FAST.epsilons:
        assert rep.max_deviation[repr(eps)] <= 20 * eps


def test_degenerate_stable_point_breaches_fixed_thresholds():
    # at this point the excursion shrinks like a tiny fractional power of
    # epsilon; it is Lyapunov stable yet exceeds the fixed probe thresholds
    # at every practical radius, so the probe reports EmpUnstable
    alg = semidirect_algebra(STANDARD_PHI_MATRIX)
    rep = probe_point(alg, np.eye(4)[3], ProbeConfig(epsilons=(1e-3,), trials=8))
    assert rep.verdict == "EmpUnstable"
    assert rep.max_deviation[repr(1e-3)] >= 0.1


def test_integral_sets_by_case():
    assert set(integral_set_for(milnor_algebra(1.0, 0.0, -1.0))) == {"I0", "I1"}
    assert set(integral_set_for(MetricLieAlgebra.from_brackets(3, {}))) == {"I0"}
    distinct = central_extension_algebra(np.diag([1.0, 0.0, -1.0]),
                                         np.array([0.0, 0.0, 1.0]))
    assert set(integral_set_for(distinct)) == {"I0", "I1", "I2"}
    repeated = central_extension_algebra(np.diag([1.0, 1.0, -2.0]),
                                         np.array([0.0, 0.0, 1.0]))
    assert set(integral_set_for(repeated)) == {"I0", "I1", "I2", "I3"}


@pytest.mark.parametrize("name", ["milnor-1-0-m1", "z1-tilted", "z1-repeated"])
def test_case_integrals_are_conserved(name):
    alg = get_entry(name).algebra
    rng = np.random.default_rng(6)
    for _ in range(3):
        y0 = rng.normal(size=alg.n)
        traj = integrate(alg, y0, T=20.0)
        for key, drift in integral_drift(alg, traj).items():
            assert drift <= 1e-10, f"{name}/{key}: {drift}"


def test_agreement_report_on_clean_rows():
    e3 = np.eye(3)
    m101 = get_entry("milnor-1-0-m1").algebra
    rows = [("m101", m101, e3[0], "Stable"), ("m101", m101, e3[1], "Unstable")]
    rep = agreement_report(rows, FAST)
    assert [r.outcome for r in rep.rows] == ["agree", "agree"]
    assert rep.agreement_fraction == 1.0
    assert "agreement" in rep.to_table()


def test_agreement_report_skips_unsupported_and_inconclusive():
    nonuni = get_entry("nonunimodular-4d").algebra
    rep = agreement_report([("nonuni", nonuni, np.eye(4)[0], "Unsupported")], FAST)
    assert rep.rows[0].outcome == "unsupported"
    assert not rep.decisive
    # inconclusive rows are reported but never counted as agreement
    synthetic = AgreementReport(rows=[
        AgreementRow("a", np.zeros(2), "Stable", "Stable", "EmpStable", "agree"),
        AgreementRow("b", np.zeros(2), "Stable", "Stable", "Inconclusive",
                     "inconclusive")])
    assert synthetic.agreement_fraction == 1.0
    assert len(synthetic.inconclusive) == 1


def test_probe_is_seed_reproducible():
    alg = milnor_algebra(1.0, 0.0, -1.0)
    a = probe_point(alg, np.eye(3)[0], FAST)
    b = probe_point(alg, np.eye(3)[0], FAST)
    assert a.max_deviation == b.max_deviation
    assert np.array_equal(a.worst_direction, b.worst_direction)
    assert a.to_dict()["verdict"] == "EmpStable"
