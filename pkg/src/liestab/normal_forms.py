"""Adapted bases for the classification: Milnor frames, codimension-one
abelian-ideal splits, the (S, l) form for 4D algebras with 1-dimensional
centre, and Taylor coefficients of phi_x(s) = |exp(s A^t) x|^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .algebra_core import (
    MetricLieAlgebra,
    Subspace,
    _null_space,
    ad,
    base_tolerance,
    bracket,
    center,
    derived_algebra,
    is_unimodular,
    orthonormalize,
    trace_form,
)
from .euler import sigma_k


class NotUnimodularError(ValueError):
    """Milnor frames exist only for unimodular 3-dimensional algebras."""


class StructureError(ValueError):
    """The algebra does not have the structure the requested split assumes."""


class DegenerateFormError(ValueError):
    """The recovered (S, l) data would enlarge the centre."""


@dataclass(frozen=True)
class MilnorFrame:
    """Orthonormal basis with [b_i, b_j] = lambda_k b_k for cyclic (i,j,k).

    basis[k] is the k-th frame vector in the original algebra coordinates;
    lam is sorted descending.
    """

    basis: np.ndarray  # (3, 3), rows are frame vectors
    lam: tuple[float, float, float]


@dataclass(frozen=True)
class IdealSplit:
    """Orthogonal split g = R e1 + a with a an abelian ideal.

    A is the matrix of (ad_{e1})|_a in the row-basis `ideal_basis`.
    """

    e1: np.ndarray
    ideal_basis: np.ndarray  # (k, n) orthonormal rows
    A: np.ndarray  # (k, k)


@dataclass(frozen=True)
class CenterSplit4D:
    """4D unimodular, dim z = 1: brackets [x,y] = S(x cross y) + <l, x cross y> e4."""

    e4: np.ndarray
    m_basis: np.ndarray  # (3, n) orthonormal rows spanning z-perp
    S: np.ndarray  # (3, 3) symmetric
    l: np.ndarray  # (3,)


@dataclass(frozen=True)
class PhiCoefficients:
    """Taylor coefficients c_0..c_N of phi_x(s) = |exp(s A^t) x|^2."""

    c: np.ndarray

    def first_significant(self, tol: float) -> tuple[int, float] | None:
        """First k >= 1 with |c_k| > tol, or None."""
        for k in range(1, self.c.shape[0]):
            if abs(self.c[k]) > tol:
                return k, float(self.c[k])
        return None


def milnor_frame(alg: MetricLieAlgebra) -> MilnorFrame:
    """Diagonalizing frame of a 3D unimodular metric Lie algebra.

    Defines L by [x, y] = L (x cross y); unimodularity makes L symmetric, and
    an eigenframe of L (orientation-corrected) gives the cyclic bracket table.
    """
    if alg.n != 3:
        raise StructureError("Milnor frames are defined for dimension 3")
    alg_o, P = orthonormalize(alg)
    c = alg_o.c
    L = np.column_stack([c[1, 2], c[2, 0], c[0, 1]])  # L e_k = [e_i, e_j], cyclic
    scale = max(1.0, float(np.max(np.abs(L))))
    if np.max(np.abs(L - L.T)) > 1e3 * alg.tau * scale:
        raise NotUnimodularError("bracket operator is not symmetric")
    Lsym = (L + L.T) / 2.0
    mu, V = np.linalg.eigh(Lsym)  # ascending
    # realized lambda_k = det(frame) * mu_k; two descending-sorted candidates
    lam_a, Qa = mu[::-1].copy(), V[:, ::-1].copy()
    if np.linalg.det(Qa) < 0:
        Qa[:, 0] = -Qa[:, 0]
    lam_b, Qb = (-mu).copy(), V.copy()
    if np.linalg.det(Qb) > 0:
        Qb[:, 0] = -Qb[:, 0]
    lam, Qf = (lam_a, Qa) if tuple(lam_a) >= tuple(lam_b) else (lam_b, Qb)
    basis = (P @ Qf).T  # rows are frame vectors in original coordinates
    frame = MilnorFrame(basis=basis, lam=tuple(float(v) for v in lam))
    _check_milnor(alg, frame)
    return frame


def _check_milnor(alg: MetricLieAlgebra, frame: MilnorFrame) -> None:
    b, lam = frame.basis, frame.lam
    for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        res = bracket(alg, b[i], b[j]) - lam[k] * b[k]
        if np.max(np.abs(res)) > 1e-10 * max(1.0, abs(lam[k])):
            raise NotUnimodularError("frame does not reproduce the cyclic bracket table")


def codim1_split(alg: MetricLieAlgebra) -> IdealSplit:
    """Split off a codimension-one abelian ideal.

    Dim 2/3 non-unimodular: the ideal is the kernel of X -> Tr ad_X.
    Dim 4 unimodular with trivial centre: the ideal is the derived algebra,
    enlarged by a commuting complement vector when dim g' = 2.
    """
    alg_o, P = orthonormalize(alg)
    tau = alg.tau
    n = alg.n
    if n in (2, 3):
        t = trace_form(alg_o)
        tn = float(np.linalg.norm(t))
        if tn <= tau:
            raise StructureError("algebra is unimodular; no trace-form split exists")
        e1 = t / tn
        ideal = _null_space(t[None, :], tau)
    elif n == 4:
        if not is_unimodular(alg_o):
            raise StructureError("4-dimensional split expects a unimodular algebra")
        if center(alg_o).dim != 0:
            raise StructureError("4-dimensional split expects a trivial centre")
        der = derived_algebra(alg_o)
        if der.dim == 3:
            ideal = der.basis
        elif der.dim == 2:
            comp = _null_space(der.basis, tau)  # dim-2 complement
            # find X in the complement with [X, g'] = 0
            rows = []
            for w in der.basis:
                cols = [bracket(alg_o, f, w) for f in comp]
                rows.append(np.column_stack(cols))
            M = np.vstack(rows)
            ker = _null_space(M, tau)
            if ker.shape[0] == 0:
                raise StructureError("no commuting complement vector found")
            x = ker[0] @ comp
            ideal = np.vstack([der.basis, x / np.linalg.norm(x)])
        else:
            raise StructureError(f"derived algebra has dimension {der.dim}; no split")
        nrm = _null_space(ideal, tau)
        if nrm.shape[0] != 1:
            raise StructureError("ideal is not codimension one")
        e1 = nrm[0]
        if e1[np.argmax(np.abs(e1))] < 0:  # deterministic sign
            e1 = -e1
    else:
        raise StructureError(f"no codimension-one split for dimension {n}")

    k = ideal.shape[0]
    A = np.empty((k, k))
    for q in range(k):
        img = bracket(alg_o, e1, ideal[q])
        A[:, q] = ideal @ img
        if np.linalg.norm(img - A[:, q] @ ideal) > 1e-10 * max(1.0, np.linalg.norm(img)):
            raise StructureError("candidate ideal is not ad-invariant")
    for p in range(k):
        for q in range(p + 1, k):
            if np.max(np.abs(bracket(alg_o, ideal[p], ideal[q]))) > 1e-10:
                raise StructureError("candidate ideal is not abelian")
    if n == 4:
        if abs(np.trace(A)) > 1e-10 * max(1.0, float(np.max(np.abs(A)))):
            raise StructureError("restriction operator has nonzero trace")
        if abs(np.linalg.det(A)) <= tau:
            raise StructureError("restriction operator is singular despite trivial centre")
    # map back to the original (possibly non-orthonormal) coordinates
    return IdealSplit(e1=P @ e1, ideal_basis=ideal @ P.T, A=A)


def no_imaginary_eigenvalues(A: np.ndarray, tol: float | None = None) -> bool:
    """True iff no eigenvalue of the 3x3 matrix A lies on the imaginary axis.

    For p(z) = z^3 + c2 z^2 + c1 z + c0 an imaginary-axis root exists exactly
    when c0 = 0, or c0 = c1 c2 with c1 > 0.
    """
    A = np.asarray(A, dtype=float)
    if A.shape != (3, 3):
        raise ValueError("expects a 3x3 matrix")
    if tol is None:
        tol = base_tolerance()
    sig = sigma_k(A)
    c2, c1, c0 = -sig[0], sig[1], -sig[2]
    scale = max(1.0, float(np.max(np.abs(A)))) ** 3
    t = tol * scale
    if abs(c0) <= t:
        return False
    if abs(c0 - c1 * c2) <= t and c1 > 0:
        return False
    return True


def center_split_4d(alg: MetricLieAlgebra) -> CenterSplit4D:
    """Recover (S, l) with [x, y] = S(x cross y) + <l, x cross y> e4 on m = z-perp."""
    if alg.n != 4:
        raise StructureError("center split is defined for dimension 4")
    alg_o, P = orthonormalize(alg)
    if not is_unimodular(alg_o):
        raise StructureError("center split expects a unimodular algebra")
    z = center(alg_o)
    if z.dim != 1:
        raise StructureError(f"center split expects dim z = 1, got {z.dim}")
    e4 = z.basis[0]
    if e4[np.argmax(np.abs(e4))] < 0:
        e4 = -e4
    m = _null_space(e4[None, :], alg.tau)  # (3, 4) orthonormal rows
    S = np.empty((3, 3))
    l = np.empty(3)
    for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        B = bracket(alg_o, m[i], m[j])  # = S m_k + l_k e4 (m_i x m_j = m_k)
        S[:, k] = m @ B
        l[k] = e4 @ B
    scale = max(1.0, float(np.max(np.abs(S))), float(np.max(np.abs(l))))
    if np.max(np.abs(S - S.T)) > 1e-10 * scale:
        raise StructureError("recovered operator is not symmetric")
    S = (S + S.T) / 2.0
    if np.max(np.abs(S)) <= alg.tau:
        raise DegenerateFormError("S = 0 would enlarge the centre")
    svals = np.linalg.svd(S, compute_uv=False)
    if int(np.sum(svals > alg.tau * max(1.0, svals[0]))) == 1:
        sol, res, *_ = np.linalg.lstsq(S, l, rcond=None)
        if np.linalg.norm(S @ sol - l) <= alg.tau * max(1.0, np.linalg.norm(l)):
            raise DegenerateFormError("rank-1 S with l in its image enlarges the centre")
    return CenterSplit4D(e4=P @ e4, m_basis=m @ P.T, S=S, l=l)


def phi_taylor(A: np.ndarray, x: np.ndarray, N: int = 6) -> PhiCoefficients:
    """c_N = sum_j <A^{N-j} (A^t)^j x, x> / (j! (N-j)!), for N up to 12."""
    A = np.asarray(A, dtype=float)
    x = np.asarray(x, dtype=float)
    if not 0 <= N <= 12:
        raise ValueError("N must be between 0 and 12")
    k = A.shape[0]
    powA = [np.eye(k)]
    powAt = [np.eye(k)]
    for _ in range(N):
        powA.append(powA[-1] @ A)
        powAt.append(powAt[-1] @ A.T)
    c = np.empty(N + 1)
    for m in range(N + 1):
        acc = 0.0
        for j in range(m + 1):
            acc += float(x @ powA[m - j] @ powAt[j] @ x) / (
                math.factorial(j) * math.factorial(m - j))
        c[m] = acc
    return PhiCoefficients(c=c)


def matrix_exp(A: np.ndarray, s: float = 1.0) -> np.ndarray:
    """exp(s A) by scaling-and-squaring with a term-truncated Taylor series."""
    M = s * np.asarray(A, dtype=float)
    n = M.shape[0]
    nrm = float(np.max(np.abs(M), initial=0.0)) * n
    k = max(0, int(np.ceil(np.log2(nrm / 0.5))) if nrm > 0.5 else 0)
    B = M / (2.0 ** k)
    out = np.eye(n)
    term = np.eye(n)
    j = 0
    while True:
        j += 1
        term = term @ B / j
        out = out + term
        if np.max(np.abs(term)) < 1e-16 * max(1.0, float(np.max(np.abs(out)))):
            break
        if j > 60:  # converges long before this for scaled inputs
            break
    for _ in range(k):
        out = out @ out
    return out
