"""Built-in catalog of low-dimensional metric Lie algebras with labeled
stationary points whose stability status is known in closed form.

Each label records the expected classifier verdict together with a short note
explaining the mechanism, so the catalog doubles as a cross-validation corpus
for the numerical probe.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra_core import MetricLieAlgebra

STANDARD_PHI_MATRIX = np.array([[1.0, 1.0, 2.0],
                                [-3.0, -1.0, 4.0],
                                [-2.0, 0.0, 0.0]])
"""Trace-free restriction operator whose phi-expansion first fires at order 6
(c_1..c_5 = 0, c_6 = 8/5 at x = (0, 0, 1)): the canonical degenerate-but-stable
example for the centreless 4D rule."""


@dataclass(frozen=True)
class LabeledPoint:
    point: np.ndarray
    expected: str  # Stable | Unstable | Unsupported
    note: str = ""


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    description: str
    algebra: MetricLieAlgebra
    labeled_points: tuple[LabeledPoint, ...] = field(default_factory=tuple)


def milnor_algebra(l1: float, l2: float, l3: float) -> MetricLieAlgebra:
    """3D algebra with cyclic brackets [e_i, e_j] = lambda_k e_k."""
    return MetricLieAlgebra.from_brackets(3, {
        (1, 2): [l1, 0, 0], (0, 2): [0, -l2, 0], (0, 1): [0, 0, l3]})


def central_extension_algebra(S: np.ndarray, l: np.ndarray) -> MetricLieAlgebra:
    """4D unimodular algebra with brackets [x,y] = S(x cross y) + <l, x cross y> e4."""
    S = np.asarray(S, dtype=float)
    l = np.asarray(l, dtype=float)
    br = {}
    for (i, j, k) in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        v = list(S[:, k]) + [float(l[k])]
        if i < j:
            br[(i, j)] = v
        else:
            br[(j, i)] = [-x for x in v]
    return MetricLieAlgebra.from_brackets(4, br)


def semidirect_algebra(A: np.ndarray) -> MetricLieAlgebra:
    """Algebra R e1 x_A R^k with [e1, e_{q+1}] = sum_p A[p, q] e_{p+1}."""
    A = np.asarray(A, dtype=float)
    k = A.shape[0]
    br = {}
    for q in range(k):
        br[(0, q + 1)] = [0.0] + list(A[:, q])
    return MetricLieAlgebra.from_brackets(k + 1, br)


def _e(n: int, k: int) -> np.ndarray:
    return np.eye(n)[k]


def builtin_catalog() -> list[CatalogEntry]:
    """The standard corpus: every classified case is represented."""
    entries = []

    entries.append(CatalogEntry(
        "abelian-r3", "abelian R^3: the flow vanishes identically",
        MetricLieAlgebra.from_brackets(3, {}),
        (LabeledPoint(_e(3, 0), "Stable", "zero vector field"),)))

    entries.append(CatalogEntry(
        "abelian-r4", "abelian R^4",
        MetricLieAlgebra.from_brackets(4, {}),
        (LabeledPoint(_e(4, 1), "Stable", "zero vector field"),)))

    entries.append(CatalogEntry(
        "so3-round", "so(3), round metric: bi-invariant, every point stationary",
        milnor_algebra(1.0, 1.0, 1.0),
        (LabeledPoint(np.array([0.3, -1.2, 0.7]), "Stable",
                      "skew linearisation at every point"),)))

    entries.append(CatalogEntry(
        "so3-stretched", "so(3) with eigenvalues (2, 1, 1): one long axis",
        milnor_algebra(2.0, 1.0, 1.0),
        (LabeledPoint(_e(3, 0), "Stable", "rotation about the long axis"),
         LabeledPoint(_e(3, 1), "Unstable",
                      "sigma_2 < 0: saddle in the degenerate plane"))))

    entries.append(CatalogEntry(
        "milnor-1-0-m1", "3D unimodular, eigenvalues (1, 0, -1)",
        milnor_algebra(1.0, 0.0, -1.0),
        (LabeledPoint(_e(3, 0), "Stable", "sigma_2 = 2 > 0"),
         LabeledPoint(_e(3, 1), "Unstable", "sigma_2 = -1 < 0"),
         LabeledPoint(_e(3, 2), "Stable", "sigma_2 = 2 > 0"))))

    entries.append(CatalogEntry(
        "milnor-1-1-m1", "3D unimodular, eigenvalues (1, 1, -1)",
        milnor_algebra(1.0, 1.0, -1.0),
        (LabeledPoint(_e(3, 2), "Stable", "axis of the simple eigenvalue"),
         LabeledPoint(np.array([0.6, 0.8, 0.0]), "Unstable",
                      "degenerate plane: sigma_1 = sigma_2 = 0 with J != 0"))))

    entries.append(CatalogEntry(
        "hyperbolic-3d", "3D non-unimodular with [e1, e2] = e2, [e1, e3] = e3",
        MetricLieAlgebra.from_brackets(3, {(0, 1): [0, 1, 0], (0, 2): [0, 0, 1]}),
        (LabeledPoint(-_e(3, 0), "Stable", "contracting side of the axis"),
         LabeledPoint(_e(3, 0), "Unstable", "expanding side of the axis"))))

    entries.append(CatalogEntry(
        "affine-2d", "2D non-abelian algebra [e1, e2] = e2",
        MetricLieAlgebra.from_brackets(2, {(0, 1): [0, 1]}),
        (LabeledPoint(-_e(2, 0), "Stable", "contracting side of the axis"),
         LabeledPoint(_e(2, 0), "Unstable", "expanding side of the axis"))))

    entries.append(CatalogEntry(
        "heisenberg-r", "Heisenberg algebra plus a line: centre of dimension 2",
        MetricLieAlgebra.from_brackets(4, {(0, 1): [0, 0, 1, 0]}),
        (LabeledPoint(_e(4, 2), "Stable", "central point"),
         LabeledPoint(_e(4, 3), "Stable", "central point"),
         LabeledPoint(_e(4, 0), "Unstable",
                      "off-centre: nearby solutions circle at radius |X|"))))

    entries.append(CatalogEntry(
        "z1-split", "4D, centre dim 1: S = diag(1, 0, -1), no tilt",
        central_extension_algebra(np.diag([1.0, 0.0, -1.0]), np.zeros(3)),
        (LabeledPoint(_e(4, 3), "Stable", "central axis"),
         LabeledPoint(_e(4, 0), "Stable", "sigma_2 > 0 eigen-axis"),
         LabeledPoint(_e(4, 1), "Unstable", "sigma_2 = -1 eigen-axis"))))

    entries.append(CatalogEntry(
        "z1-tilted", "4D, centre dim 1: S = diag(1, 0, -1), l = (0, 0, 1)",
        central_extension_algebra(np.diag([1.0, 0.0, -1.0]),
                                  np.array([0.0, 0.0, 1.0])),
        (LabeledPoint(_e(4, 3), "Stable", "central axis"),
         LabeledPoint(_e(4, 0), "Stable", "sigma_2 > 0 eigen-axis"))))

    entries.append(CatalogEntry(
        "z1-repeated", "4D, centre dim 1: S = diag(1, 1, -2), l = (0, 0, 1); "
                       "carries an extra linear first integral",
        central_extension_algebra(np.diag([1.0, 1.0, -2.0]),
                                  np.array([0.0, 0.0, 1.0])),
        (LabeledPoint(_e(4, 3), "Stable", "central axis"),
         LabeledPoint(_e(4, 0), "Unstable", "repeated-eigenvalue plane"),
         LabeledPoint(_e(4, 2), "Stable", "simple eigen-axis"))))

    entries.append(CatalogEntry(
        "centerless-4d", "4D unimodular with trivial centre, split by a "
                         "codimension-one abelian ideal",
        semidirect_algebra(STANDARD_PHI_MATRIX),
        (LabeledPoint(_e(4, 0), "Unstable", "axis transverse to the ideal"),
         LabeledPoint(_e(4, 3), "Stable",
                      "degenerate ideal point: first significant phi "
                      "coefficient is c_6 = 8/5 > 0"))))

    entries.append(CatalogEntry(
        "nonunimodular-4d", "4D non-unimodular: outside the classified range",
        MetricLieAlgebra.from_brackets(4, {(0, 1): [0, 1, 0, 0],
                                           (0, 2): [0, 0, 1, 0],
                                           (0, 3): [0, 0, 0, 1]}),
        (LabeledPoint(_e(4, 0), "Unsupported", "no complete criterion"),)))

    entries.append(CatalogEntry(
        "so3-r", "so(3) plus a line, round metric: bi-invariant",
        MetricLieAlgebra.from_brackets(4, {(1, 2): [1, 0, 0, 0],
                                           (0, 2): [0, -1, 0, 0],
                                           (0, 1): [0, 0, 1, 0]}),
        (LabeledPoint(np.array([1.0, 2.0, 3.0, 4.0]), "Stable",
                      "skew linearisation at every point"),)))

    return entries


def get_entry(name: str) -> CatalogEntry:
    for entry in builtin_catalog():
        if entry.name == name:
            return entry
    raise KeyError(f"no catalog entry named {name!r}")


def labeled_cases() -> list[tuple[str, MetricLieAlgebra, np.ndarray, str]]:
    """Flatten the catalog into (name, algebra, point, expected) rows."""
    rows = []
    for entry in builtin_catalog():
        for lp in entry.labeled_points:
            rows.append((entry.name, entry.algebra, lp.point, lp.expected))
    return rows
