"""Structure-adapted frames, splits, and the phi-coefficient machinery."""

import numpy as np
import pytest

from liestab.algebra_core import MetricLieAlgebra, bracket, conjugate
from liestab.catalog import (
    STANDARD_PHI_MATRIX,
    central_extension_algebra,
    milnor_algebra,
    semidirect_algebra,
)
from liestab.euler import sigma_k
from liestab.normal_forms import (
    NotUnimodularError,
    StructureError,
    center_split_4d,
    codim1_split,
    matrix_exp,
    milnor_frame,
    no_imaginary_eigenvalues,
    phi_taylor,
)


def check_cyclic_table(alg, frame, tol=1e-10):
    b, lam = frame.basis, frame.lam
    for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        assert np.allclose(bracket(alg, b[i], b[j]), lam[k] * b[k], atol=tol)


def test_milnor_frame_known_eigenvalues():
    assert milnor_frame(milnor_algebra(1, 1, 1)).lam == (1.0, 1.0, 1.0)
    heis = MetricLieAlgebra.from_brackets(3, {(0, 1): [0, 0, 1]})
    assert np.allclose(milnor_frame(heis).lam, (1.0, 0.0, 0.0), atol=1e-12)


def test_milnor_frame_is_rotation_invariant():
    rng = np.random.default_rng(0)
    alg = milnor_algebra(2.0, 0.5, -1.0)
    for _ in range(10):
        R, _ = np.linalg.qr(rng.normal(size=(3, 3)))
        rotated = conjugate(alg, R)
        frame = milnor_frame(rotated)
        assert np.allclose(frame.lam, (2.0, 0.5, -1.0), atol=1e-10)
        check_cyclic_table(rotated, frame)


def test_milnor_frame_rejects_non_unimodular():
    hyp = MetricLieAlgebra.from_brackets(
        3, {(0, 1): [0, 1, 0], (0, 2): [0, 0, 1]})
    with pytest.raises(NotUnimodularError):
        milnor_frame(hyp)


def test_codim1_split_three_dimensional():
    hyp = MetricLieAlgebra.from_brackets(
        3, {(0, 1): [0, 1, 0], (0, 2): [0, 0, 1]})
    sp = codim1_split(hyp)
    assert np.allclose(sp.e1, [1, 0, 0])
    assert np.trace(sp.A) > 0
    # the split reproduces the bracket action of e1 on the ideal
    for q in range(2):
        img = bracket(hyp, sp.e1, sp.ideal_basis[q])
        assert np.allclose(img, sp.A[:, q] @ sp.ideal_basis, atol=1e-12)
    for p in range(2):
        for q in range(2):
            assert np.allclose(
                bracket(hyp, sp.ideal_basis[p], sp.ideal_basis[q]), 0.0)


def test_codim1_split_rejects_unimodular_3d():
    with pytest.raises(StructureError):
        codim1_split(milnor_algebra(1.0, 0.0, -1.0))


def test_codim1_split_centerless_4d_recovers_similar_operator():
    alg = semidirect_algebra(STANDARD_PHI_MATRIX)
    sp = codim1_split(alg)
    # A is expressed in an arbitrary orthonormal ideal basis: compare the
    # basis-independent characteristic coefficients
    assert np.allclose(sigma_k(sp.A), sigma_k(STANDARD_PHI_MATRIX), atol=1e-10)
    assert abs(np.trace(sp.A)) <= 1e-10


def test_no_imaginary_eigenvalues_against_eigensolver():
    rng = np.random.default_rng(1)
    checked = 0
    for _ in range(300):
        A = rng.normal(size=(3, 3))
        eig = np.linalg.eigvals(A)
        margin = float(np.min(np.abs(eig.real)))
        if margin < 1e-6:  # too close to the boundary for a crisp oracle
            continue
        checked += 1
        assert no_imaginary_eigenvalues(A)
    assert checked > 250
    # explicit boundary cases
    assert not no_imaginary_eigenvalues(np.diag([0.0, 1.0, 2.0]))
    rot = np.array([[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]])
    assert not no_imaginary_eigenvalues(rot)
    assert no_imaginary_eigenvalues(np.diag([1.0, -1.0, 2.0]))


def test_phi_taylor_low_order_identities():
    rng = np.random.default_rng(2)
    for _ in range(50):
        A = rng.normal(size=(3, 3))
        x = rng.normal(size=3)
        pc = phi_taylor(A, x, 4)
        assert np.isclose(pc.c[0], x @ x, atol=1e-12)
        assert np.isclose(pc.c[1], 2 * x @ A @ x, atol=1e-10)
        assert np.isclose(pc.c[2], x @ (A @ A + A @ A.T) @ x, atol=1e-10)


def test_phi_taylor_matches_matrix_exponential():
    rng = np.random.default_rng(3)
    s = 1e-2
    for _ in range(50):
        A = rng.normal(size=(3, 3))
        x = rng.normal(size=3)
        x /= np.linalg.norm(x)
        pc = phi_taylor(A, x, 8)
        partial = float(np.polynomial.polynomial.polyval(s, pc.c))
        y = matrix_exp(A.T, s) @ x
        assert abs(partial - float(y @ y)) <= 1e-14


def test_phi_taylor_degenerate_worked_values():
    pc = phi_taylor(STANDARD_PHI_MATRIX, np.array([0.0, 0.0, 1.0]), 6)
    assert np.max(np.abs(pc.c[1:6])) <= 1e-12
    assert abs(pc.c[6] - 8.0 / 5.0) <= 1e-12
    assert pc.first_significant(1e-9) == (6, pytest.approx(1.6))


def test_matrix_exp_closed_forms():
    # rotation generator
    W = np.array([[0.0, -1.0], [1.0, 0.0]])
    for s in (0.3, 2.0, -5.0):
        expected = np.array([[np.cos(s), -np.sin(s)], [np.sin(s), np.cos(s)]])
        assert np.allclose(matrix_exp(W, s), expected, atol=1e-13)
    # symmetric matrices via eigendecomposition
    rng = np.random.default_rng(4)
    for _ in range(20):
        M = rng.normal(size=(3, 3))
        S = (M + M.T) / 2
        w, V = np.linalg.eigh(S)
        expected = V @ np.diag(np.exp(w)) @ V.T
        assert np.allclose(matrix_exp(S), expected, atol=1e-12)


def test_center_split_reconstructs_brackets():
    S = np.diag([1.0, 0.0, -1.0])
    l = np.array([0.0, 0.0, 1.0])
    alg = central_extension_algebra(S, l)
    sp = center_split_4d(alg)
    m, e4 = sp.m_basis, sp.e4
    for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        lhs = bracket(alg, m[i], m[j])
        rhs = sp.S[:, k] @ m + sp.l[k] * e4
        assert np.allclose(lhs, rhs, atol=1e-10)
    # eigenvalues of S are basis independent
    assert np.allclose(np.linalg.eigvalsh(sp.S), [-1.0, 0.0, 1.0], atol=1e-10)


def test_center_split_rejects_wrong_center_dimension():
    heisR = MetricLieAlgebra.from_brackets(4, {(0, 1): [0, 0, 1, 0]})
    with pytest.raises(StructureError):
        center_split_4d(heisR)  # centre has dimension 2
    with pytest.raises(StructureError):
        # rank-1 S with l in its image: the centre comes out two-dimensional
        center_split_4d(central_extension_algebra(
            np.diag([1.0, 0.0, 0.0]), np.array([1.0, 0.0, 0.0])))
