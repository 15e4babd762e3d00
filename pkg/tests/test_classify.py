"""Stability classification: catalog verdicts, invariance properties,
stationary-set enumeration, and witness search."""

import numpy as np
import pytest

from liestab.algebra_core import MetricLieAlgebra, conjugate, is_biinvariant
from liestab.catalog import builtin_catalog, labeled_cases, milnor_algebra
from liestab.classify import (
    NotStationaryError,
    UnsupportedCaseError,
    classify_point,
    enumerate_stationary,
    find_stable_and_unstable,
)
from liestab.euler import is_stationary


@pytest.mark.parametrize("name, alg, point, expected",
                         labeled_cases(),
                         ids=[f"{r[0]}-{i}" for i, r in enumerate(labeled_cases())])
def test_catalog_labeled_verdicts(name, alg, point, expected):
    verdict = classify_point(alg, point)
    assert verdict.status == expected, verdict.to_dict()


def test_rejects_non_stationary_points():
    alg = milnor_algebra(1.0, 2.0, 3.0)
    with pytest.raises(NotStationaryError):
        classify_point(alg, np.array([1.0, 1.0, 1.0]))


def test_verdict_is_scaling_invariant():
    # positive scalings only: Y -> tY rescales time, so negating a point is a
    # time reversal and can legitimately flip stability
    for name, alg, point, expected in labeled_cases():
        for t in (0.5, 3.0, 40.0):
            v = classify_point(alg, t * point)
            assert v.status == expected, f"{name} scaled by {t}"


def test_verdict_is_basis_invariant():
    rng = np.random.default_rng(8)
    for name, alg, point, expected in labeled_cases():
        for _ in range(3):
            R, _ = np.linalg.qr(rng.normal(size=(alg.n, alg.n)))
            v = classify_point(conjugate(alg, R), R.T @ point)
            assert v.status == expected, name


def test_rule_labels_on_representative_points():
    m101 = milnor_algebra(1.0, 0.0, -1.0)
    assert classify_point(m101, np.eye(3)[0]).rule == "T1.ii"
    assert classify_point(m101, np.eye(3)[1]).rule == "T1"
    so3 = milnor_algebra(1.0, 1.0, 1.0)
    assert classify_point(so3, np.array([1.0, 2.0, 3.0])).rule == "L2.1.b"
    heisR = MetricLieAlgebra.from_brackets(4, {(0, 1): [0, 0, 1, 0]})
    assert classify_point(heisR, np.eye(4)[0]).rule == "T2.a"
    abelian = MetricLieAlgebra.from_brackets(2, {})
    assert classify_point(abelian, np.eye(2)[0]).rule == "abelian"


def test_marginal_flag_near_decision_boundary():
    # sigma_2 at e1 equals 2*delta: far from zero -> crisp, within the
    # widened tolerance band -> marginal
    crisp = classify_point(milnor_algebra(1.0, 0.5, -1.0), np.eye(3)[0])
    assert crisp.status == "Stable" and not crisp.marginal
    delta = 2e-9
    near = classify_point(milnor_algebra(1.0, 1.0 - delta, -1.0), np.eye(3)[0])
    assert near.marginal


def test_unsupported_cases():
    nonuni = MetricLieAlgebra.from_brackets(
        4, {(0, 1): [0, 1, 0, 0], (0, 2): [0, 0, 1, 0], (0, 3): [0, 0, 0, 1]})
    assert classify_point(nonuni, np.eye(4)[0]).status == "Unsupported"
    five = MetricLieAlgebra.from_brackets(5, {(0, 1): [0, 0, 1, 0, 0]})
    assert classify_point(five, np.eye(5)[0]).status == "Unsupported"
    with pytest.raises(UnsupportedCaseError):
        enumerate_stationary(nonuni)


def test_enumerated_families_produce_stationary_points():
    for entry in builtin_catalog():
        try:
            fams = enumerate_stationary(entry.algebra)
        except UnsupportedCaseError:
            continue
        assert fams
        for fam in fams:
            pts = fam.sample(20, seed=11)
            for p in pts:
                assert is_stationary(entry.algebra, p, 1e-7), \
                    f"{entry.name}/{fam.kind}: {p}"


def test_enumeration_sampling_is_deterministic():
    alg = milnor_algebra(1.0, 0.0, -1.0)
    a = enumerate_stationary(alg)[0].sample(5, seed=4)
    b = enumerate_stationary(alg)[0].sample(5, seed=4)
    assert np.array_equal(a, b)


def test_witness_search():
    for entry in builtin_catalog():
        alg = entry.algebra
        if any(lp.expected == "Unsupported" for lp in entry.labeled_points):
            continue
        stable, unstable = find_stable_and_unstable(alg, seed=2)
        assert stable is not None
        assert classify_point(alg, stable).status == "Stable"
        if is_biinvariant(alg) or np.max(np.abs(alg.c)) == 0:
            assert unstable is None
        else:
            assert classify_point(alg, unstable).status == "Unstable"


def test_certificates_carry_decision_data():
    m101 = milnor_algebra(1.0, 0.0, -1.0)
    v = classify_point(m101, np.eye(3)[1])
    assert v.certificates["sigma2"] == pytest.approx(-1.0)
    d = v.to_dict()
    assert set(d) == {"status", "rule", "marginal", "certificates"}
