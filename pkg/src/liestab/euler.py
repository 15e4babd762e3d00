"""The Euler vector field Y' = ad^t_Y Y, its linearisation, and an integrator.

Stationary points of this quadratic ODE are the geodesic vectors of the
metric Lie algebra; the squared norm I0(Y) = <Y, Y> is always conserved.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np

from . import _kernels
from .algebra_core import (
    MetricLieAlgebra,
    DimensionMismatchError,
    ad,
    ad_t,
    base_tolerance,
    bracket,
    inner,
    norm,
    _check_vec,
)

DEFAULT_STEP = 1e-3
DEFAULT_HORIZON = 200.0
OVERFLOW_FACTOR = 1e6


def quadratic_tensor(alg: MetricLieAlgebra) -> np.ndarray:
    """Tensor Q with euler_rhs(Y)_j = sum_{i,l} Y_i Y_l Q[i,l,j].

    Folds a general gram into the contraction:
    rhs = gram^{-1} ad(Y)^T gram Y.
    """
    n = alg.n
    if np.array_equal(alg.gram, np.eye(n)):
        return np.ascontiguousarray(alg.c.transpose(0, 2, 1))  # Q[i,l,j] = c[i,j,l]
    ginv = np.linalg.inv(alg.gram)
    # v_m = sum_{i,k,l} Y_i c[i,m,k] G[k,l] Y_l ; rhs = ginv @ v
    E = np.einsum("imk,kl->ilm", alg.c, alg.gram)
    return np.ascontiguousarray(np.einsum("jm,ilm->ilj", ginv, E))


def euler_rhs(alg: MetricLieAlgebra, Y: np.ndarray) -> np.ndarray:
    """ad^t_Y Y; quadratic in Y and orthogonal to Y."""
    Y = _check_vec(alg, Y)
    return np.einsum("...i,...l,ilj->...j", Y, Y, quadratic_tensor(alg))


def is_stationary(alg: MetricLieAlgebra, X: np.ndarray, tol: float | None = None) -> bool:
    """<X, [X, e_i]> = 0 for all basis vectors, relative to max(1, |X|^2)."""
    X = _check_vec(alg, X)
    if tol is None:
        tol = alg.tau
    gx = alg.gram @ X
    vals = np.einsum("k,i,ijk->j", gx, X, alg.c)  # <X, [X, e_j]>
    return bool(np.max(np.abs(vals), initial=0.0) <= tol * max(1.0, float(X @ alg.gram @ X)))


def linearization(alg: MetricLieAlgebra, X: np.ndarray) -> np.ndarray:
    """J_X with J_X Y = ad^t_X Y + ad^t_Y X (the Jacobian of the Euler field)."""
    X = _check_vec(alg, X)
    J = ad_t(alg, X).copy()
    for j in range(alg.n):
        J[:, j] += ad_t(alg, alg.basis_vector(j)) @ X
    return J


def sigma_k(op: np.ndarray) -> np.ndarray:
    """Elementary symmetric functions (sigma_1..sigma_n) of the eigenvalues.

    Computed from power sums Tr(op^m) via Newton's identities; no eigenvalues
    are ever formed.
    """
    op = np.asarray(op, dtype=float)
    n = op.shape[0]
    if op.shape != (n, n):
        raise DimensionMismatchError("sigma_k needs a square matrix")
    p = np.empty(n + 1)
    M = np.eye(n)
    for m in range(1, n + 1):
        M = M @ op
        p[m] = np.trace(M)
    e = np.empty(n + 1)
    e[0] = 1.0
    for k in range(1, n + 1):
        acc = 0.0
        for i in range(1, k + 1):
            acc += (-1.0) ** (i - 1) * e[k - i] * p[i]
        e[k] = acc / k
    return e[1:]


def char_poly_coeffs(op: np.ndarray) -> np.ndarray:
    """Monic characteristic polynomial coefficients [1, c_{n-1}, ..., c_0].

    p(z) = z^n + c_{n-1} z^{n-1} + ... + c_0 with c_{n-k} = (-1)^k sigma_k.
    """
    sig = sigma_k(op)
    n = sig.shape[0]
    out = np.empty(n + 1)
    out[0] = 1.0
    for k in range(1, n + 1):
        out[k] = (-1.0) ** k * sig[k - 1]
    return out


def numerical_rank(op: np.ndarray, tol: float | None = None) -> int:
    """Rank with singular values thresholded at tol * max-norm of the matrix."""
    op = np.asarray(op, dtype=float)
    if tol is None:
        tol = base_tolerance()
    scale = float(np.max(np.abs(op), initial=0.0))
    if scale == 0.0:
        return 0
    s = np.linalg.svd(op, compute_uv=False)
    return int(np.sum(s > tol * max(1.0, scale)))


@dataclass
class Trajectory:
    """A sampled Euler-flow solution with first-integral bookkeeping."""

    times: np.ndarray
    states: np.ndarray
    integrals: dict[str, np.ndarray] = field(default_factory=dict)
    drift: dict[str, float] = field(default_factory=dict)
    aborted: bool = False

    def to_csv(self, fh: io.TextIOBase) -> None:
        """Header t,y1,...,yn,I0[,...]; 17 significant digits."""
        n = self.states.shape[1]
        names = list(self.integrals)
        fh.write("t," + ",".join(f"y{i+1}" for i in range(n)))
        if names:
            fh.write("," + ",".join(names))
        fh.write("\n")
        cols = [self.times] + [self.states[:, i] for i in range(n)]
        cols += [self.integrals[k] for k in names]
        for row in zip(*cols):
            fh.write(",".join(f"{v:.17g}" for v in row) + "\n")


def i0_evaluator(alg: MetricLieAlgebra) -> Callable[[np.ndarray], np.ndarray]:
    gram = alg.gram

    def eval_i0(states: np.ndarray) -> np.ndarray:
        return np.einsum("...i,ij,...j->...", states, gram, states)

    return eval_i0


def integrate(alg: MetricLieAlgebra, Y0: np.ndarray, T: float = DEFAULT_HORIZON,
              h: float = DEFAULT_STEP,
              integrals: Mapping[str, Callable[[np.ndarray], np.ndarray]] | None = None,
              ) -> Trajectory:
    """Classical RK4 with fixed step h over [0, T].

    Always monitors I0 = |Y|^2; extra integrals are vectorized callables on
    state arrays.  Aborts (flagged, partial trajectory) if the state blows up.
    """
    if h <= 0 or T <= 0:
        raise ValueError("need h > 0 and T > 0")
    Y0 = _check_vec(alg, Y0)
    steps = int(round(T / h))
    cap = (OVERFLOW_FACTOR * max(norm(alg, Y0), 1e-30)) ** 2
    Q = quadratic_tensor(alg)
    states, done = _kernels.rk4_record(Q, Y0, h, steps, cap)
    times = h * np.arange(done + 1)
    evals: dict[str, Callable] = {"I0": i0_evaluator(alg)}
    for name, fn in (integrals or {}).items():
        if name != "I0":
            evals[name] = fn
    traj = Trajectory(times=times, states=states, aborted=(done < steps))
    for name, fn in evals.items():
        vals = np.asarray(fn(states), dtype=float)
        ref = float(vals[0])
        traj.integrals[name] = vals
        traj.drift[name] = float(np.max(np.abs(vals - ref)) / max(1.0, abs(ref)))
    return traj
