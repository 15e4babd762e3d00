"""Empirical stability probing and classifier-vs-probe cross-validation.

A stationary point is perturbed in many directions at several radii and the
worst excursion of the integrated flow is compared against fixed thresholds.
Case-specific first integrals provide independent accuracy monitors.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

from . import _kernels
from .algebra_core import (
    MetricLieAlgebra,
    center,
    is_abelian,
    is_unimodular,
    norm,
    orthonormalize,
    _check_vec,
)
from .classify import NotStationaryError, classify_point
from .euler import (
    DEFAULT_HORIZON,
    DEFAULT_STEP,
    OVERFLOW_FACTOR,
    Trajectory,
    is_stationary,
    linearization,
    quadratic_tensor,
)
from .normal_forms import StructureError, center_split_4d, milnor_frame

EMP_STABLE = "EmpStable"
EMP_UNSTABLE = "EmpUnstable"
INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class ProbeConfig:
    epsilons: tuple[float, ...] = (1e-2, 1e-3, 1e-4)
    T: float = DEFAULT_HORIZON
    h: float = DEFAULT_STEP
    trials: int = 32
    seed: int = 0
    stable_factor: float = 20.0
    unstable_fraction: float = 0.1
    early_stop: bool = True


@dataclass(frozen=True)
class ProbeReport:
    point: np.ndarray
    epsilons: tuple[float, ...]
    max_deviation: dict[str, float]  # keyed by repr of epsilon
    verdict: str
    worst_direction: np.ndarray
    truncated: bool
    seed: int

    def to_dict(self) -> dict:
        return {
            "point": [float(v) for v in self.point],
            "epsilons": list(self.epsilons),
            "max_deviation": dict(self.max_deviation),
            "verdict": self.verdict,
            "worst_direction": [float(v) for v in self.worst_direction],
            "truncated": self.truncated,
            "seed": self.seed,
        }


def _probe_directions(J: np.ndarray, trials: int,
                      rng: np.random.Generator) -> np.ndarray:
    """Random unit directions plus two adversarial seeds from J."""
    n = J.shape[0]
    dirs = rng.normal(size=(trials, n))
    dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
    extra = []
    if np.max(np.abs(J)) > 0:
        _, _, vh = np.linalg.svd(J)
        extra.append(vh[0])  # most-amplified input direction of J
        w, V = np.linalg.eigh((J + J.T) / 2.0)
        extra.append(V[:, np.argmax(w)])  # dominant growth of the symmetric part
    if extra:
        dirs = np.vstack([dirs, np.array(extra)])
    return dirs


def probe_point(alg: MetricLieAlgebra, X: np.ndarray,
                config: ProbeConfig | None = None) -> ProbeReport:
    """Perturb a stationary point and report the worst finite-horizon excursion.

    EmpStable iff max deviation stays below stable_factor * epsilon for every
    radius; EmpUnstable iff it reaches unstable_fraction * max(|X|, 1) for
    some radius; otherwise Inconclusive.
    """
    if config is None:
        config = ProbeConfig()
    X = _check_vec(alg, X)
    if not is_stationary(alg, X):
        raise NotStationaryError("probe requires a stationary point")

    alg_o, P = orthonormalize(alg)
    Xo = X if alg_o is alg else np.linalg.solve(P, X)
    Q = quadratic_tensor(alg_o)
    J = linearization(alg_o, Xo)
    rng = np.random.default_rng(config.seed)
    dirs = _probe_directions(J, config.trials, rng)

    nx = float(np.linalg.norm(Xo))
    unstable_thr = config.unstable_fraction * max(nx, 1.0)
    steps = int(round(config.T / config.h))
    cap_sq = (OVERFLOW_FACTOR * max(nx, 1.0)) ** 2

    max_dev: dict[str, float] = {}
    worst = dirs[0]
    worst_val = -np.inf
    truncated = False
    breached = False
    for eps in config.epsilons:
        Y0 = Xo[None, :] + eps * dirs
        stop = unstable_thr if config.early_stop else 0.0
        dev, done = _kernels.rk4_maxdev(Q, Y0, config.h, steps, Xo, stop, cap_sq)
        m = float(np.max(dev))
        max_dev[repr(float(eps))] = m
        if m > worst_val:
            worst_val = m
            worst = dirs[int(np.argmax(dev))]
        if m >= unstable_thr:
            breached = True
            if config.early_stop:
                break
        elif done < steps:
            truncated = True  # overflow abort without threshold breach

    if breached:
        verdict = EMP_UNSTABLE
    elif truncated:
        verdict = INCONCLUSIVE
    elif all(max_dev[repr(float(e))] <= config.stable_factor * e
             for e in config.epsilons if repr(float(e)) in max_dev):
        verdict = EMP_STABLE
    else:
        verdict = INCONCLUSIVE

    worst_orig = P @ worst if alg_o is not alg else worst
    return ProbeReport(point=X.copy(), epsilons=tuple(config.epsilons),
                       max_deviation=max_dev, verdict=verdict,
                       worst_direction=worst_orig, truncated=truncated,
                       seed=config.seed)


# ---------------------------------------------------------------------------
# Case-specific first integrals
# ---------------------------------------------------------------------------

def integral_set_for(alg: MetricLieAlgebra) -> dict[str, Callable[[np.ndarray], np.ndarray]]:
    """Named first-integral evaluators valid for this algebra.

    Always contains I0 = |Y|^2.  Adds the eigenvalue-weighted quadratic in
    dimension 3 unimodular, and the central/quadratic (plus, when present,
    linear) integrals for 4D unimodular algebras with a one-dimensional centre.
    """
    gram = alg.gram
    out: dict[str, Callable[[np.ndarray], np.ndarray]] = {
        "I0": lambda Y: np.einsum("...i,ij,...j->...", Y, gram, Y)}

    if alg.n == 3 and is_unimodular(alg) and not is_abelian(alg):
        try:
            frame = milnor_frame(alg)
        except StructureError:
            return out
        B = frame.basis  # rows
        lam = np.array(frame.lam)

        def i1(Y, B=B, lam=lam):
            coords = np.einsum("...i,ij,kj->...k", Y, gram, B)
            return np.einsum("...k,k->...", coords ** 2, lam)

        out["I1"] = i1
        return out

    if alg.n == 4 and is_unimodular(alg) and center(alg).dim == 1:
        try:
            split = center_split_4d(alg)
        except StructureError:
            return out
        e4, m, S, l = split.e4, split.m_basis, split.S, split.l

        def coords(Y):
            return np.einsum("...i,ij,kj->...k", Y, gram, m)

        out["I1"] = lambda Y: np.einsum("...i,ij,j->...", Y, gram, e4)

        def i2(Y):
            y = coords(Y)
            y4 = np.einsum("...i,ij,j->...", Y, gram, e4)
            return np.einsum("...a,ab,...b->...", y, S, y) + 2.0 * y4 * (y @ l)

        out["I2"] = i2

        # a linear integral exists when S has a repeated eigenvalue and l
        # lies along the remaining eigendirection
        w, V = np.linalg.eigh(S)
        tolS = alg.tau * max(1.0, float(np.max(np.abs(S))))
        for rep, single in ((0, 2), (2, 0)):
            if abs(w[1] - w[rep]) <= tolS and abs(w[1] - w[single]) > tolS:
                u = V[:, single]
                if np.linalg.norm(l - (l @ u) * u) <= tolS * max(1.0, np.linalg.norm(l)):
                    out["I3"] = lambda Y, u=u: coords(Y) @ u
                break
    return out


def integral_drift(alg: MetricLieAlgebra, traj: Trajectory) -> dict[str, float]:
    """Relative drift of each registered first integral along a trajectory."""
    drifts = {}
    for name, ev in integral_set_for(alg).items():
        vals = ev(traj.states)
        drifts[name] = float(np.max(np.abs(vals - vals[0])) / max(1.0, abs(vals[0])))
    return drifts


# ---------------------------------------------------------------------------
# Cross-validation harness
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AgreementRow:
    entry: str
    point: np.ndarray
    expected: str
    theorem: str
    probe: str
    outcome: str  # agree | disagree | inconclusive | unsupported

    def to_dict(self) -> dict:
        return {"entry": self.entry, "point": [float(v) for v in self.point],
                "expected": self.expected, "theorem": self.theorem,
                "probe": self.probe, "outcome": self.outcome}


@dataclass(frozen=True)
class AgreementReport:
    rows: list[AgreementRow]

    @property
    def decisive(self) -> list[AgreementRow]:
        return [r for r in self.rows if r.outcome in ("agree", "disagree")]

    @property
    def agreement_fraction(self) -> float:
        dec = self.decisive
        if not dec:
            return float("nan")
        return sum(r.outcome == "agree" for r in dec) / len(dec)

    @property
    def inconclusive(self) -> list[AgreementRow]:
        return [r for r in self.rows if r.outcome == "inconclusive"]

    def to_table(self) -> str:
        lines = [f"{'entry':28s} {'expected':11s} {'theorem':11s} "
                 f"{'probe':12s} outcome"]
        for r in self.rows:
            lines.append(f"{r.entry:28s} {r.expected:11s} {r.theorem:11s} "
                         f"{r.probe:12s} {r.outcome}")
        dec = self.decisive
        lines.append(f"decisive rows: {len(dec)}, agreement "
                     f"{self.agreement_fraction:.1%}, "
                     f"inconclusive: {len(self.inconclusive)}")
        return "\n".join(lines)


def agreement_report(cases: Iterable[tuple[str, MetricLieAlgebra, np.ndarray, str]],
                     config: ProbeConfig | None = None) -> AgreementReport:
    """Run classifier and probe over labeled points and tabulate agreement.

    `cases` yields (entry name, algebra, stationary point, expected status).
    Inconclusive probe rows are reported but never counted as agreement.
    """
    rows = []
    for name, alg, X, expected in cases:
        verdict = classify_point(alg, X)
        if verdict.status not in ("Stable", "Unstable"):
            rows.append(AgreementRow(name, np.asarray(X, float), expected,
                                     verdict.status, "-", "unsupported"))
            continue
        rep = probe_point(alg, X, config)
        if rep.verdict == INCONCLUSIVE:
            outcome = "inconclusive"
        else:
            match = (verdict.status == "Stable") == (rep.verdict == EMP_STABLE)
            outcome = "agree" if match else "disagree"
        rows.append(AgreementRow(name, np.asarray(X, float), expected,
                                 verdict.status, rep.verdict, outcome))
    return AgreementReport(rows=rows)
