"""Stability classification of geodesic vectors (Euler-equation equilibria).

Complete rules: dimension <= 2, dimension 3 (via the signs of sigma_1 and
sigma_2 of the linearisation), and dimension 4 unimodular (split by the
dimension of the centre).  4D non-unimodular algebras and dimensions >= 5
yield an Unsupported verdict rather than an error.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .algebra_core import (
    MetricLieAlgebra,
    center,
    derived_algebra,
    is_abelian,
    is_biinvariant,
    is_unimodular,
    norm,
    orthonormalize,
    _check_vec,
    _null_space,
)
from .euler import is_stationary, linearization, numerical_rank, sigma_k
from .normal_forms import (
    center_split_4d,
    codim1_split,
    milnor_frame,
    phi_taylor,
)

STABLE = "Stable"
UNSTABLE = "Unstable"
UNSUPPORTED = "Unsupported"

MARGINAL_BAND = 10.0  # multiples of the scaled tolerance


class NotStationaryError(ValueError):
    """classify_point was called at a non-stationary point."""


class UnsupportedCaseError(ValueError):
    """The algebra falls outside the classified cases."""


class SearchExhaustedError(RuntimeError):
    """The witness search failed; contradicts the existence theorem."""


@dataclass(frozen=True)
class StabilityVerdict:
    status: str
    rule: str
    certificates: dict[str, float]
    marginal: bool = False

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "rule": self.rule,
            "marginal": self.marginal,
            "certificates": dict(self.certificates),
        }


@dataclass
class StationaryFamily:
    """A parametrized component of the stationary set with a point sampler."""

    kind: str  # Axis | Subspace | Cone | MuCurve | WholeSpace
    label: str
    parameters: dict = field(default_factory=dict)
    _sampler: Callable[[int, np.random.Generator], np.ndarray] = None

    def sample(self, count: int, seed: int = 0) -> np.ndarray:
        """Deterministic (count, n) array of stationary points."""
        rng = np.random.default_rng(seed)
        pts = self._sampler(count, rng)
        return np.asarray(pts, dtype=float).reshape(-1, self.parameters.get("n", 0) or -1)


# ---------------------------------------------------------------------------
# Classification rules
# ---------------------------------------------------------------------------

def theorem1_rule(J: np.ndarray, tol: float) -> tuple[str, dict, bool]:
    """3D rule: stable iff J = 0, or sigma_2 >= 0 >= sigma_1 with one strict."""
    sig = sigma_k(J)
    s1, s2 = float(sig[0]), float(sig[1])
    scale = max(1.0, float(np.max(np.abs(J), initial=0.0)))
    normJ = float(np.max(np.abs(J), initial=0.0))
    certs = {"sigma1": s1, "sigma2": s2, "norm_J": normJ}

    def decide(t1: float, t2: float) -> tuple[str, int]:
        if normJ <= t1:
            return STABLE, 1
        if s2 >= -t2 and s1 <= t1 and (s2 > t2 or s1 < -t1):
            return STABLE, 2
        return UNSTABLE, 0

    t1, t2 = tol * scale, tol * scale * scale
    status, branch = decide(t1, t2)
    # marginal: the verdict flips when every tolerance is widened tenfold
    marginal = status != decide(MARGINAL_BAND * t1, MARGINAL_BAND * t2)[0]
    if branch:
        return status, {**certs, "branch": branch}, marginal
    return status, certs, marginal


def _theorem2_rule(alg: MetricLieAlgebra, X: np.ndarray, J: np.ndarray,
                   tol: float) -> StabilityVerdict:
    """4D unimodular rule, split by the dimension of the centre."""
    z = center(alg)
    nx = norm(alg, X)
    sig = sigma_k(J)
    scale = max(1.0, float(np.max(np.abs(J), initial=0.0)))
    normJ = float(np.max(np.abs(J), initial=0.0))
    base = {"sigma1": float(sig[0]), "sigma2": float(sig[1]), "norm_J": normJ,
            "dim_center": float(z.dim)}

    if z.dim >= 2:
        dist = z.distance(alg, X)
        certs = {**base, "dist_to_center": dist}
        t = tol * max(1.0, nx)
        marginal = (dist <= t) != (dist <= MARGINAL_BAND * t)
        status = STABLE if dist <= t else UNSTABLE
        return StabilityVerdict(status, "T2.a", certs, marginal)

    if z.dim == 1:
        s2 = float(sig[1])
        rank = numerical_rank(J, tol)
        Z = z.basis[0]
        JZ = linearization(alg, Z)
        prod = float((X @ alg.gram @ Z) * np.trace(J @ JZ))
        certs = {**base, "rank_J": float(rank), "central_pairing": prod}

        def decide(t: float) -> tuple[str, str]:
            if normJ <= t * scale:
                return STABLE, "T2.b.i"
            if s2 > t * scale * scale:
                return STABLE, "T2.b.ii"
            if rank == 1 and prod < -t * scale ** 3:
                return STABLE, "T2.b.iii"
            return UNSTABLE, "T2.b"

        status, rule = decide(tol)
        marginal = status != decide(MARGINAL_BAND * tol)[0]
        return StabilityVerdict(status, rule, certs, marginal)

    # trivial centre: codimension-one abelian ideal
    split = codim1_split(alg)
    xa = split.ideal_basis @ X
    in_ideal = X - xa @ split.ideal_basis
    dist_to_ideal = float(np.linalg.norm(in_ideal))
    certs = {**base, "dist_to_ideal": dist_to_ideal}
    if nx <= tol:
        return StabilityVerdict(STABLE, "T2.c", certs, True)
    if dist_to_ideal <= tol * max(1.0, nx):
        pc = phi_taylor(split.A, xa, 6)
        tc = tol * max(1.0, nx * nx)

        def decide(t: float) -> tuple[str, tuple[int, float] | None]:
            h = pc.first_significant(t)
            if h is None:
                # all coefficients vanish through order 6; the order-6
                # coefficient is then provably positive, hence stable
                return STABLE, None
            k, ck = h
            return (STABLE if k % 2 == 0 and ck > 0 else UNSTABLE), h

        status, hit = decide(tc)
        marginal = status != decide(MARGINAL_BAND * tc)[0] or hit is None
        if hit is not None:
            certs = {**certs, "k": float(hit[0]), "c_k": hit[1]}
        else:
            certs = {**certs, "k": 6.0, "c_k": float(pc.c[6])}
        return StabilityVerdict(status, "T2.c", certs, marginal)
    # stationary points off the ideal lie on the e1 axis and are unstable
    return StabilityVerdict(UNSTABLE, "T2.c", certs,
                            float(np.linalg.norm(xa)) > tol * nx)


def classify_point(alg: MetricLieAlgebra, X: np.ndarray,
                   tol: float | None = None) -> StabilityVerdict:
    """Stability verdict for a stationary point of the Euler equation."""
    X = _check_vec(alg, X)
    if tol is None:
        tol = alg.tau
    if not is_stationary(alg, X, tol):
        raise NotStationaryError("point is not stationary at the given tolerance")
    alg_o, P = orthonormalize(alg)
    Xo = X if alg_o is alg else np.linalg.solve(P, X)

    if alg.n == 1 or is_abelian(alg_o):
        return StabilityVerdict(STABLE, "abelian", {"norm_X": norm(alg, X)})

    J = linearization(alg_o, Xo)
    scale = max(1.0, float(np.max(np.abs(J), initial=0.0)))
    if np.max(np.abs(J + J.T)) <= tol * scale:
        # skew linearisation: |Y - X|^2 is a local Lyapunov function
        return StabilityVerdict(STABLE, "L2.1.b",
                                {"skew_residual": float(np.max(np.abs(J + J.T)))})

    if alg.n == 2:
        sp = codim1_split(alg_o)
        x1 = float(sp.e1 @ Xo)
        certs = {"x1": x1, "alpha": float(sp.A[0, 0])}
        t = tol * max(1.0, norm(alg, X))
        status = STABLE if x1 <= t else UNSTABLE
        marginal = (x1 <= t) != (x1 <= MARGINAL_BAND * t)
        return StabilityVerdict(status, "R2.2", certs, marginal)

    if alg.n == 3:
        status, certs, marginal = theorem1_rule(J, tol)
        branch = certs.pop("branch", None)
        rule = "T1" if status == UNSTABLE else ("T1.i" if branch == 1 else "T1.ii")
        return StabilityVerdict(status, rule, certs, marginal)

    if alg.n == 4 and is_unimodular(alg_o):
        return _theorem2_rule(alg_o, Xo, J, tol)

    reason = "dim>=5" if alg.n > 4 else "4D non-unimodular"
    return StabilityVerdict(UNSUPPORTED, reason, {"norm_X": norm(alg, X)})


# ---------------------------------------------------------------------------
# Stationary-set enumeration
# ---------------------------------------------------------------------------

def _unit_rows(rows: np.ndarray) -> np.ndarray:
    nrm = np.linalg.norm(rows, axis=1, keepdims=True)
    return rows / np.where(nrm > 0, nrm, 1.0)


def _axis_family(v: np.ndarray, label: str) -> StationaryFamily:
    v = v / np.linalg.norm(v)

    def sampler(count, rng):
        t = rng.uniform(0.5, 2.0, size=count) * rng.choice([-1.0, 1.0], size=count)
        return t[:, None] * v[None, :]

    return StationaryFamily("Axis", label, {"direction": v, "n": v.shape[0]}, sampler)


def _subspace_family(basis: np.ndarray, label: str) -> StationaryFamily:
    def sampler(count, rng):
        coeff = rng.normal(size=(count, basis.shape[0]))
        pts = coeff @ basis
        pts = _unit_rows(pts) * rng.uniform(0.5, 2.0, size=(count, 1))
        return pts

    return StationaryFamily("Subspace", label, {"basis": basis, "n": basis.shape[1]}, sampler)


def _whole_space_family(n: int, label: str) -> StationaryFamily:
    def sampler(count, rng):
        pts = rng.normal(size=(count, n))
        return _unit_rows(pts) * rng.uniform(0.5, 2.0, size=(count, 1))

    return StationaryFamily("WholeSpace", label, {"n": n}, sampler)


def _cone_directions(sym: np.ndarray, count: int, rng: np.random.Generator) -> np.ndarray:
    """Unit solutions of <sym x, x> = 0; empty if the form is definite."""
    d, V = np.linalg.eigh(sym)
    scale = max(float(np.max(np.abs(d))), 1e-300)
    tol = 1e-12 * scale
    pos = V[:, d > tol]
    neg = V[:, d < -tol]
    ker = V[:, np.abs(d) <= tol]
    if pos.shape[1] == 0 or neg.shape[1] == 0:
        if ker.shape[1] == 0:
            return np.zeros((0, sym.shape[0]))
        coeff = rng.normal(size=(count, ker.shape[1]))
        return _unit_rows(coeff @ ker.T)
    out = np.empty((count, sym.shape[0]))
    for r in range(count):
        u = pos @ rng.normal(size=pos.shape[1])
        v = neg @ rng.normal(size=neg.shape[1])
        qu = float(u @ sym @ u)
        qv = float(v @ sym @ v)
        quv = float(u @ sym @ v)
        disc = quv * quv - qv * qu  # > 0 since qu > 0 > qv
        root = (-quv + rng.choice([-1.0, 1.0]) * np.sqrt(disc)) / qv
        x = u + root * v
        out[r] = x / np.linalg.norm(x)
    return out


def _cone_family(sym: np.ndarray, carrier: np.ndarray, label: str) -> StationaryFamily:
    """Quadric cone <sym x, x> = 0 inside the subspace spanned by carrier rows."""

    def sampler(count, rng):
        dirs = _cone_directions(sym, count, rng)
        if dirs.shape[0] == 0:
            return np.zeros((0, carrier.shape[1]))
        return (dirs * rng.uniform(0.5, 2.0, size=(dirs.shape[0], 1))) @ carrier

    return StationaryFamily("Cone", label,
                            {"form": sym, "carrier": carrier, "n": carrier.shape[1]}, sampler)


def enumerate_stationary(alg: MetricLieAlgebra) -> list[StationaryFamily]:
    """The components of the stationary set for every classified case."""
    alg_o, P = orthonormalize(alg)
    n = alg.n

    def to_orig(rows: np.ndarray) -> np.ndarray:
        return rows @ P.T

    if n == 1 or is_abelian(alg_o):
        return [_whole_space_family(n, "all points (abelian)")]

    if n == 2:
        sp = codim1_split(alg_o)
        return [_axis_family(P @ sp.e1, "axis orthogonal to the unimodular ideal")]

    if n == 3 and is_unimodular(alg_o):
        frame = milnor_frame(alg)  # already in original coordinates
        lam = np.array(frame.lam)
        tol = alg.tau * max(1.0, float(np.max(np.abs(lam))))
        if abs(lam[0] - lam[2]) <= tol:
            return [_whole_space_family(n, "all points (bi-invariant)")]
        if abs(lam[0] - lam[1]) <= tol:  # lam1 = lam2 > lam3
            return [_axis_family(frame.basis[2], "repeated-eigenvalue axis"),
                    _subspace_family(frame.basis[:2], "degenerate plane")]
        if abs(lam[1] - lam[2]) <= tol:  # lam1 > lam2 = lam3
            return [_axis_family(frame.basis[0], "repeated-eigenvalue axis"),
                    _subspace_family(frame.basis[1:], "degenerate plane")]
        return [_axis_family(frame.basis[k], f"coordinate axis {k + 1}") for k in range(3)]

    if n == 3:  # non-unimodular
        sp = codim1_split(alg)
        ker = _null_space(sp.A.T, alg.tau)  # kernel of A^t in ideal coordinates
        rows = [sp.e1] + [k @ sp.ideal_basis for k in ker]
        fams = [_subspace_family(np.array(rows), "span(e1, ker A^t)")]
        sym = (sp.A + sp.A.T) / 2.0
        fams.append(_cone_family(sym, sp.ideal_basis, "cone <Ax, x> = 0 in the ideal"))
        return fams

    if n == 4 and is_unimodular(alg_o):
        z = center(alg_o)
        if z.dim >= 2:
            der = derived_algebra(alg_o)
            perp = _null_space(der.basis, alg.tau)
            return [_subspace_family(to_orig(z.basis), "centre"),
                    _subspace_family(to_orig(perp), "orthocomplement of the derived algebra")]
        if z.dim == 1:
            split = center_split_4d(alg)
            S, l = split.S, split.l
            fams = [_axis_family(split.e4, "central axis")]
            eig = np.linalg.eigvalsh(S)
            tolS = alg.tau * max(1.0, float(np.max(np.abs(S))))
            if eig[2] - eig[0] <= tolS:  # scalar S
                if np.linalg.norm(l) <= tolS:
                    return [_whole_space_family(n, "all points (bi-invariant)")]
                fams.append(_subspace_family(split.m_basis, "hyperplane y4 = 0"))
                fams.append(_subspace_family(
                    np.vstack([l @ split.m_basis / np.linalg.norm(l), split.e4]),
                    "span(l, e4)"))
                return fams
            carrier = np.vstack([split.m_basis, split.e4])  # coords (x, x4)
            seen = []
            for mu in eig:
                if any(abs(mu - s) <= tolS for s in seen):
                    continue
                seen.append(mu)
                M4 = np.column_stack([S - mu * np.eye(3), l])
                ker = _null_space(M4, alg.tau)
                if ker.shape[0] > 0:
                    fams.append(_subspace_family(ker @ carrier, f"eigenvalue branch mu={mu:.6g}"))
            if np.linalg.norm(l) > tolS:
                fams.append(_mu_curve_family(S, l, carrier, alg.tau))
            return fams
        split = codim1_split(alg)
        sym = (split.A + split.A.T) / 2.0
        return [_axis_family(split.e1, "axis orthogonal to the abelian ideal"),
                _cone_family(sym, split.ideal_basis, "cone <Ax, x> = 0 in the ideal")]

    raise UnsupportedCaseError(
        "stationary-set enumeration covers dim <= 3 and 4D unimodular algebras")


def _mu_curve_family(S: np.ndarray, l: np.ndarray, carrier: np.ndarray,
                     tau: float) -> StationaryFamily:
    """Solutions x(mu) = -x4 (S - mu I)^{-1} l off the spectrum of S."""
    eig = np.linalg.eigvalsh(S)
    grid = np.linspace(eig[0] - 2.0, eig[-1] + 2.0, 101)
    keep = np.array([np.min(np.abs(g - eig)) > tau for g in grid])
    grid = grid[keep]

    def sampler(count, rng):
        idx = rng.integers(0, grid.shape[0], size=count)
        x4 = rng.choice([-1.0, 1.0], size=count)
        pts = np.empty((count, carrier.shape[1]))
        for r in range(count):
            x = -x4[r] * np.linalg.solve(S - grid[idx[r]] * np.eye(3), l)
            pts[r] = np.concatenate([x, [x4[r]]]) @ carrier
        return pts

    return StationaryFamily("MuCurve", "mu-parametrized curve",
                            {"S": S, "l": l, "grid": grid, "n": carrier.shape[1]}, sampler)


# ---------------------------------------------------------------------------
# Existence witnesses (assertion B of both theorems)
# ---------------------------------------------------------------------------

def find_stable_and_unstable(alg: MetricLieAlgebra, samples_per_family: int = 60,
                             seed: int = 0) -> tuple[np.ndarray | None, np.ndarray | None]:
    """A nonzero stable witness (always) and an unstable witness (unless the
    algebra is abelian or bi-invariant so(3), possibly plus a line)."""
    if is_abelian(alg):
        return alg.basis_vector(0), None
    stable = unstable = None
    for fam in enumerate_stationary(alg):
        for pt in fam.sample(samples_per_family, seed=seed):
            if np.linalg.norm(pt) <= alg.tau:
                continue
            v = classify_point(alg, pt)
            if v.status == STABLE and stable is None:
                stable = pt
            elif v.status == UNSTABLE and unstable is None:
                unstable = pt
            if stable is not None and unstable is not None:
                return stable, unstable
    if stable is None:
        raise SearchExhaustedError("no stable stationary point found; this "
                                   "contradicts the existence theorem")
    if unstable is None and not is_biinvariant(alg):
        raise SearchExhaustedError("no unstable point found in a non-bi-invariant algebra")
    return stable, unstable
