"""Euler vector field, linearisation, symmetric functions, and integration."""

import io

import numpy as np

from liestab import _kernels
from liestab.algebra_core import MetricLieAlgebra, bracket, inner
from liestab.catalog import builtin_catalog, milnor_algebra
from liestab.classify import enumerate_stationary
from liestab.euler import (
    euler_rhs,
    integrate,
    is_stationary,
    linearization,
    numerical_rank,
    sigma_k,
)
from liestab.probe import integral_set_for


def test_rhs_definition_matches_bracket_pairing():
    # <rhs(Y), Z> = <Y, [Y, Z]> for all Z, directly from the definition
    rng = np.random.default_rng(0)
    alg = milnor_algebra(1.0, 2.0, -0.5)
    e = np.eye(3)
    for _ in range(30):
        y = rng.normal(size=3)
        r = euler_rhs(alg, y)
        for k in range(3):
            assert np.isclose(inner(alg, r, e[k]),
                              inner(alg, y, bracket(alg, y, e[k])), atol=1e-12)


def test_labeled_points_are_stationary():
    for entry in builtin_catalog():
        for lp in entry.labeled_points:
            assert is_stationary(entry.algebra, lp.point), \
                f"{entry.name}: {lp.point}"
            assert np.allclose(euler_rhs(entry.algebra, lp.point), 0.0, atol=1e-12)


def test_linearization_matches_finite_differences():
    rng = np.random.default_rng(1)
    eps = 1e-6
    for entry in builtin_catalog():
        alg = entry.algebra
        for lp in entry.labeled_points[:1]:
            J = linearization(alg, lp.point)
            for j in range(alg.n):
                step = np.zeros(alg.n)
                step[j] = eps
                col = (euler_rhs(alg, lp.point + step)
                       - euler_rhs(alg, lp.point - step)) / (2 * eps)
                assert np.allclose(J[:, j], col, atol=1e-8), entry.name


def test_linearization_kernel_identity_at_stationary_points():
    # J X = 0 and J^t X = 0 whenever X is stationary
    for entry in builtin_catalog():
        try:
            fams = enumerate_stationary(entry.algebra)
        except Exception:
            continue
        for fam in fams:
            for X in fam.sample(5, seed=9):
                J = linearization(entry.algebra, X)
                scale = max(1.0, float(np.linalg.norm(X)) ** 2)
                assert np.max(np.abs(J @ X)) <= 1e-10 * scale
                assert np.max(np.abs(J.T @ X)) <= 1e-10 * scale


def test_sigma_k_against_interpolated_characteristic_polynomial():
    rng = np.random.default_rng(2)
    for _ in range(100):
        n = rng.integers(2, 5)
        J = rng.normal(size=(n, n))
        sig = sigma_k(J)
        # oracle: fit det(J - t I) at n+1 nodes, read off the coefficients
        nodes = np.linspace(-1, 1, n + 1) * max(1.0, np.max(np.abs(J)))
        vals = [np.linalg.det(J - t * np.eye(n)) for t in nodes]
        coef = np.linalg.solve(np.vander(nodes, n + 1, increasing=True), vals)
        for k in range(1, n + 1):
            ref = coef[n - k] * (-1.0) ** (n - k)
            assert abs(sig[k - 1] - ref) <= 1e-9 * max(1.0, abs(ref))


def test_numerical_rank():
    assert numerical_rank(np.zeros((3, 3))) == 0
    assert numerical_rank(np.diag([1.0, 1e-14, 0.0])) == 1
    assert numerical_rank(np.diag([2.0, 1.0, 0.5])) == 3


def test_norm_is_conserved_along_the_flow():
    rng = np.random.default_rng(4)
    for entry in builtin_catalog():
        y0 = rng.normal(size=entry.algebra.n)
        traj = integrate(entry.algebra, y0, T=20.0)
        assert not traj.aborted
        assert traj.drift["I0"] <= 1e-9, entry.name


def test_time_reversal_symmetry_of_the_split_system():
    # for dY = (-<Ay,y>, y1 A^t y) the map (y1, t) -> (-y1, -t) preserves
    # solutions; integrating the reflected endpoint recovers the start
    hyp = MetricLieAlgebra.from_brackets(
        3, {(0, 1): [0, 1, 0], (0, 2): [0, 0, 1]})
    y0 = np.array([0.3, -0.4, 0.5])
    sigma = np.diag([-1.0, 1.0, 1.0])
    T = 5.0
    fwd = integrate(hyp, y0, T=T)
    back = integrate(hyp, sigma @ fwd.states[-1], T=T)
    assert np.allclose(back.states[-1], sigma @ y0, atol=1e-10)


def test_trajectory_csv_format_round_trips():
    alg = milnor_algebra(1.0, 0.0, -1.0)
    traj = integrate(alg, np.array([0.1, 0.2, 0.3]), T=0.01,
                     integrals=integral_set_for(alg))
    buf = io.StringIO()
    traj.to_csv(buf)
    lines = buf.getvalue().strip().split("\n")
    assert lines[0] == "t,y1,y2,y3,I0,I1"
    row = [float(v) for v in lines[-1].split(",")]
    assert row[0] == traj.times[-1]
    assert row[1:4] == list(traj.states[-1])  # 17 digits: exact round trip


def test_kernel_aborts_on_blowup():
    # dy/dt = y^2 escapes in finite time; the kernel must stop, not overflow
    Q = np.ones((1, 1, 1))
    states, done = _kernels.rk4_record(Q, np.array([1.0]), 1e-3, 5000, 1e6)
    assert done < 5000
    assert np.all(np.isfinite(states))


def test_integrate_matches_closed_form_rotation():
    # Heisenberg + line: y3, y4 constant; (y1, y2) rotates at rate y3
    alg = MetricLieAlgebra.from_brackets(4, {(0, 1): [0, 0, 1, 0]})
    eps = 1e-2
    y0 = np.array([1.0, 0.0, eps, 0.0])
    traj = integrate(alg, y0, T=50.0)
    t = traj.times
    exact = np.stack([np.cos(eps * t), np.sin(eps * t),
                      np.full_like(t, eps), np.zeros_like(t)], axis=1)
    assert np.max(np.abs(traj.states - exact)) <= 1e-10
