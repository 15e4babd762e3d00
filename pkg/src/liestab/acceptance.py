"""Self-contained acceptance checks for the whole package.

Each criterion function returns a CriterionResult; run_all prints one
pass/fail line per criterion.  The checks re-verify the mathematical content
(worked coefficient values, catalog verdicts, probe agreement, conservation,
oracle equivalence, structural identities, basis invariance) at fixed
tolerances and with runtime budgets.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .algebra_core import conjugate, is_abelian, is_biinvariant, orthonormalize
from .catalog import STANDARD_PHI_MATRIX, builtin_catalog, get_entry
from .classify import classify_point, enumerate_stationary, find_stable_and_unstable
from .euler import euler_rhs, integrate, linearization, sigma_k
from .normal_forms import matrix_exp, phi_taylor
from .probe import ProbeConfig, agreement_report, integral_set_for, probe_point


@dataclass(frozen=True)
class CriterionResult:
    name: str
    passed: bool
    details: str
    seconds: float


def _result(name: str, t0: float, passed: bool, details: str,
            budget: float | None = None) -> CriterionResult:
    dt = time.time() - t0
    if budget is not None and dt > budget:
        passed = False
        details += f"; runtime {dt:.1f}s exceeded budget {budget:.0f}s"
    return CriterionResult(name, passed, details, dt)


def criterion_1() -> CriterionResult:
    """Degenerate worked example: c_1..c_5 vanish, c_6 = 8/5, verdict Stable."""
    t0 = time.time()
    pc = phi_taylor(STANDARD_PHI_MATRIX, np.array([0.0, 0.0, 1.0]), 6)
    small = float(np.max(np.abs(pc.c[1:6])))
    err6 = abs(float(pc.c[6]) - 8.0 / 5.0)
    entry = get_entry("centerless-4d")
    v = classify_point(entry.algebra, np.eye(4)[3])
    ok = (small <= 1e-9 and err6 <= 1e-9 and v.status == "Stable"
          and v.rule == "T2.c" and v.certificates.get("k") == 6.0)
    details = (f"max|c_1..c_5|={small:.2e}, |c_6-8/5|={err6:.2e}, "
               f"verdict={v.status}/{v.rule}, k={v.certificates.get('k')}")
    return _result("criterion_1", t0, ok, details, budget=1.0)


def _check_rows(rows, config) -> tuple[bool, list[str]]:
    problems = []
    for name, alg, X, expected in rows:
        v = classify_point(alg, X)
        if v.status != expected:
            problems.append(f"{name}: classified {v.status}, expected {expected}")
            continue
        rep = probe_point(alg, X, config)
        want = "EmpStable" if expected == "Stable" else "EmpUnstable"
        if rep.verdict != want:
            problems.append(f"{name}: probe {rep.verdict}, expected {want}")
    return not problems, problems


def criterion_2() -> CriterionResult:
    """3D catalog verdicts with full probe agreement at eps in {1e-2, 1e-3}."""
    t0 = time.time()
    e = np.eye(3)
    m101 = get_entry("milnor-1-0-m1").algebra
    m11m1 = get_entry("milnor-1-1-m1").algebra
    hyp = get_entry("hyperbolic-3d").algebra
    rows = [("milnor-1-0-m1", m101, e[0], "Stable"),
            ("milnor-1-0-m1", m101, e[2], "Stable"),
            ("milnor-1-0-m1", m101, e[1], "Unstable"),
            ("milnor-1-1-m1", m11m1, 0.8 * e[2], "Stable"),
            ("milnor-1-1-m1", m11m1, -1.3 * e[2], "Stable"),
            ("milnor-1-1-m1", m11m1, np.array([0.6, 0.8, 0.0]), "Unstable"),
            ("milnor-1-1-m1", m11m1, np.array([-1.0, 0.4, 0.0]), "Unstable"),
            ("hyperbolic-3d", hyp, -e[0], "Stable"),
            ("hyperbolic-3d", hyp, e[0], "Unstable")]
    config = ProbeConfig(epsilons=(1e-2, 1e-3))
    ok, problems = _check_rows(rows, config)
    details = "all verdicts and probes agree" if ok else "; ".join(problems)
    return _result("criterion_2", t0, ok, details, budget=120.0)


def criterion_3() -> CriterionResult:
    """4D catalog verdicts; probe agreement on all decisive rows."""
    t0 = time.time()
    e = np.eye(4)
    rows = [("heisenberg-r", get_entry("heisenberg-r").algebra, e[2], "Stable"),
            ("heisenberg-r", get_entry("heisenberg-r").algebra, e[0], "Unstable"),
            ("z1-split", get_entry("z1-split").algebra, e[1], "Unstable"),
            ("z1-split", get_entry("z1-split").algebra, e[3], "Stable"),
            ("centerless-4d", get_entry("centerless-4d").algebra, 1.4 * e[0], "Unstable"),
            ("centerless-4d", get_entry("centerless-4d").algebra, e[3], "Stable")]
    problems = []
    v = classify_point(get_entry("z1-split").algebra, e[1])
    if abs(v.certificates.get("sigma2", np.nan) + 1.0) > 1e-9:
        problems.append(f"sigma_2 certificate {v.certificates.get('sigma2')} != -1")
    rep = agreement_report(rows, ProbeConfig())
    for r in rep.rows:
        if r.theorem != r.expected:
            problems.append(f"{r.entry}: classified {r.theorem}, expected {r.expected}")
    frac = rep.agreement_fraction
    if not frac == 1.0:
        bad = [f"{r.entry}(theorem {r.theorem} vs probe {r.probe})"
               for r in rep.rows if r.outcome == "disagree"]
        problems.append(f"decisive agreement {frac:.1%}; disagreeing: {', '.join(bad)}")
    ok = not problems
    details = "all verdicts and probes agree" if ok else "; ".join(problems)
    return _result("criterion_3", t0, ok, details, budget=180.0)


def criterion_4() -> CriterionResult:
    """Existence of stable and unstable witnesses on every classified entry."""
    t0 = time.time()
    problems = []
    for entry in builtin_catalog():
        alg = entry.algebra
        if is_abelian(alg):
            continue
        if any(lp.expected == "Unsupported" for lp in entry.labeled_points):
            continue  # outside the classified range; existence not asserted
        try:
            stable, unstable = find_stable_and_unstable(alg, seed=2)
        except Exception as ex:  # noqa: BLE001 - report, do not crash the suite
            problems.append(f"{entry.name}: {type(ex).__name__}: {ex}")
            continue
        if stable is None or classify_point(alg, stable).status != "Stable":
            problems.append(f"{entry.name}: missing stable witness")
        if is_biinvariant(alg):
            if unstable is not None:
                problems.append(f"{entry.name}: bi-invariant entry returned an "
                                f"unstable witness")
        elif unstable is None or classify_point(alg, unstable).status != "Unstable":
            problems.append(f"{entry.name}: missing unstable witness")
    ok = not problems
    details = "witnesses found on every classified entry" if ok else "; ".join(problems)
    return _result("criterion_4", t0, ok, details)


def criterion_5() -> CriterionResult:
    """First-integral conservation and the step-halving order check."""
    t0 = time.time()
    problems = []
    rng = np.random.default_rng(7)
    for entry in builtin_catalog():
        alg = entry.algebra
        y0 = rng.normal(size=alg.n)
        y0 *= 2.0 * rng.uniform(0.3, 1.0) / np.linalg.norm(y0)
        traj = integrate(alg, y0, integrals=integral_set_for(alg))
        if traj.aborted:
            problems.append(f"{entry.name}: integration aborted")
            continue
        for name, drift in traj.drift.items():
            if drift > 1e-8:
                problems.append(f"{entry.name}: {name} drift {drift:.2e}")
    alg = get_entry("milnor-1-0-m1").algebra
    y0 = np.array([0.9, 1.1, -0.7])
    d_coarse = integrate(alg, y0, T=50.0, h=2e-2).drift["I0"]
    d_fine = integrate(alg, y0, T=50.0, h=1e-2).drift["I0"]
    ratio = d_coarse / max(d_fine, 1e-300)
    if ratio < 12.0:
        problems.append(f"halving improved I0 drift only {ratio:.1f}x")
    ok = not problems
    details = (f"all drifts <= 1e-8; halving ratio {ratio:.1f}x"
               if ok else "; ".join(problems))
    return _result("criterion_5", t0, ok, details)


def _charpoly_interp(J: np.ndarray) -> np.ndarray:
    """Coefficients of det(J - t I) by determinant interpolation (oracle)."""
    n = J.shape[0]
    nodes = np.linspace(-1.0, 1.0, n + 1) * max(1.0, float(np.max(np.abs(J))))
    vals = [np.linalg.det(J - t * np.eye(n)) for t in nodes]
    V = np.vander(nodes, n + 1, increasing=True)
    return np.linalg.solve(V, np.array(vals))  # index k holds the t^k coefficient


def criterion_6() -> CriterionResult:
    """Symmetric functions and phi coefficients vs independent oracles."""
    t0 = time.time()
    rng = np.random.default_rng(11)
    worst_sigma = 0.0
    for _ in range(1000):
        J = rng.normal(size=(4, 4))
        sig = sigma_k(J)
        coef = _charpoly_interp(J)
        # det(J - tI) = t^4 - sigma_1 t^3 + sigma_2 t^2 - sigma_3 t + sigma_4
        ref = np.array([coef[3] * -1.0, coef[2], -coef[1], coef[0]])
        err = float(np.max(np.abs(sig - ref) / np.maximum(1.0, np.abs(ref))))
        worst_sigma = max(worst_sigma, err)
    worst_phi = 0.0
    s = 1e-2
    for _ in range(500):
        A = rng.normal(size=(3, 3))
        x = rng.normal(size=3)
        x /= np.linalg.norm(x)
        pc = phi_taylor(A, x, 8)
        partial = float(np.polynomial.polynomial.polyval(s, pc.c))
        y = matrix_exp(A.T, s) @ x
        exact = float(y @ y)
        worst_phi = max(worst_phi, abs(partial - exact))
    ok = worst_sigma <= 1e-10 and worst_phi <= 1e-14
    details = f"sigma_k worst rel err {worst_sigma:.2e}; phi worst err {worst_phi:.2e}"
    return _result("criterion_6", t0, ok, details)


def _fd_jacobian(alg, X: np.ndarray, eps: float = 1e-4) -> np.ndarray:
    n = alg.n
    J = np.empty((n, n))
    for j in range(n):
        e = np.zeros(n)
        e[j] = eps
        J[:, j] = (euler_rhs(alg, X + e) - euler_rhs(alg, X - e)) / (2.0 * eps)
    return J


def criterion_7() -> CriterionResult:
    """Structural identities of the linearisation at stationary points."""
    t0 = time.time()
    problems = []
    count = 0
    worst_kernel = worst_trace = worst_fd = 0.0
    for entry in builtin_catalog():
        alg = entry.algebra
        try:
            families = enumerate_stationary(alg)
        except Exception:  # unsupported entries carry no assertion here
            continue
        alg_o, P = orthonormalize(alg)
        unimod = float(np.max(np.abs(
            np.einsum("ijj->i", alg_o.c.transpose(0, 2, 1))))) <= alg.tau
        for fam in families:
            for X in fam.sample(12, seed=5):
                if np.linalg.norm(X) <= 1e-8 or count >= 500:
                    continue
                count += 1
                Xo = np.linalg.solve(P, X) if alg_o is not alg else X
                J = linearization(alg_o, Xo)
                r = max(float(np.max(np.abs(J @ Xo))),
                        float(np.max(np.abs(J.T @ Xo))))
                worst_kernel = max(worst_kernel, r / max(1.0, np.linalg.norm(Xo) ** 2))
                if unimod:
                    s1 = abs(float(sigma_k(J)[0]))
                    worst_trace = max(worst_trace, s1 / max(1.0, float(np.max(np.abs(J)))))
                fd = _fd_jacobian(alg_o, Xo)
                worst_fd = max(worst_fd, float(np.max(np.abs(fd - J)))
                               / max(1.0, float(np.max(np.abs(J)))))
    if count < 500:
        # top up with extra samples from the richest entries
        for entry in builtin_catalog():
            if count >= 500:
                break
            try:
                families = enumerate_stationary(entry.algebra)
            except Exception:
                continue
            for fam in families:
                extra = fam.sample(80, seed=17)
                for X in extra:
                    if count >= 500 or np.linalg.norm(X) <= 1e-8:
                        continue
                    count += 1
                    alg_o, P = orthonormalize(entry.algebra)
                    Xo = np.linalg.solve(P, X) if alg_o is not entry.algebra else X
                    J = linearization(alg_o, Xo)
                    r = max(float(np.max(np.abs(J @ Xo))),
                            float(np.max(np.abs(J.T @ Xo))))
                    worst_kernel = max(worst_kernel, r / max(1.0, np.linalg.norm(Xo) ** 2))
    if worst_kernel > 1e-10:
        problems.append(f"kernel identity residual {worst_kernel:.2e}")
    if worst_trace > 1e-12:
        problems.append(f"trace-free residual {worst_trace:.2e}")
    if worst_fd > 1e-6:
        problems.append(f"finite-difference residual {worst_fd:.2e}")
    if count < 500:
        problems.append(f"only {count} stationary samples")
    ok = not problems
    details = (f"{count} points: kernel {worst_kernel:.1e}, trace {worst_trace:.1e}, "
               f"fd {worst_fd:.1e}" if ok else "; ".join(problems))
    return _result("criterion_7", t0, ok, details)


def criterion_8() -> CriterionResult:
    """Labeled verdicts are invariant under random orthogonal basis changes."""
    t0 = time.time()
    rng = np.random.default_rng(23)
    problems = []
    for entry in builtin_catalog():
        for _ in range(20):
            R, _ = np.linalg.qr(rng.normal(size=(entry.algebra.n,) * 2))
            rotated = conjugate(entry.algebra, R)
            for lp in entry.labeled_points:
                v = classify_point(rotated, R.T @ lp.point)
                if v.status != lp.expected:
                    problems.append(f"{entry.name}: {v.status} != {lp.expected} "
                                    f"after conjugation")
                    break
    ok = not problems
    details = "all labeled verdicts invariant" if ok else "; ".join(sorted(set(problems)))
    return _result("criterion_8", t0, ok, details)


ALL_CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4,
                criterion_5, criterion_6, criterion_7, criterion_8]


def run_all(names: list[str] | None = None) -> list[CriterionResult]:
    """Run the acceptance criteria, printing one pass/fail line each."""
    results = []
    for fn in ALL_CRITERIA:
        if names and fn.__name__ not in names:
            continue
        res = fn()
        mark = "PASS" if res.passed else "FAIL"
        print(f"{mark}  {res.name} ({res.seconds:.1f}s): {res.details}")
        results.append(res)
    return results
