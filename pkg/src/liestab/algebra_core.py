"""Metric Lie algebras: structure constants, brackets, adjoints, subspaces.

A metric Lie algebra is a pair (g, <,>): a real Lie algebra with an inner
product.  We store the bracket densely as a tensor c[i, j, k] with
[e_i, e_j] = sum_k c[i, j, k] e_k, and the inner product as a symmetric
positive-definite Gram matrix.  Dimensions 1..4 are fully supported.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

DEFAULT_BASE_TOL = 1e-9


def base_tolerance() -> float:
    """Base relative tolerance; override with the LIESTAB_TOL env variable."""
    env = os.environ.get("LIESTAB_TOL")
    return float(env) if env else DEFAULT_BASE_TOL


class DimensionMismatchError(ValueError):
    """A vector or operator has the wrong dimension for this algebra."""


class SpecFormatError(ValueError):
    """An algebra spec file violates the JSON schema."""


@dataclass(frozen=True)
class MetricLieAlgebra:
    """A Lie algebra with an inner product, over a fixed basis.

    c:    structure constants, shape (n, n, n); [e_i,e_j] = c[i,j,:] . e
    gram: inner product matrix, shape (n, n), symmetric positive definite
    """

    c: np.ndarray
    gram: np.ndarray

    def __post_init__(self):
        c = np.ascontiguousarray(np.asarray(self.c, dtype=float))
        gram = np.ascontiguousarray(np.asarray(self.gram, dtype=float))
        if c.ndim != 3 or len(set(c.shape)) != 1:
            raise DimensionMismatchError(f"structure tensor must be (n,n,n), got {c.shape}")
        n = c.shape[0]
        if gram.shape != (n, n):
            raise DimensionMismatchError(f"gram must be ({n},{n}), got {gram.shape}")
        c.flags.writeable = False
        gram.flags.writeable = False
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "gram", gram)

    @property
    def n(self) -> int:
        return self.c.shape[0]

    @property
    def tau(self) -> float:
        """Scaled tolerance governing all exact-zero decisions."""
        scale = max(1.0, float(np.max(np.abs(self.c)), ), float(np.max(np.abs(self.gram))))
        return base_tolerance() * scale

    @classmethod
    def from_brackets(cls, dim: int,
                      brackets: Mapping[tuple[int, int], Iterable[float]] | None = None,
                      gram: np.ndarray | None = None) -> "MetricLieAlgebra":
        """Build from a sparse bracket table {(i, j): coeffs} with 0-based i < j.

        Antisymmetry is filled in automatically; unspecified pairs are zero.
        """
        c = np.zeros((dim, dim, dim))
        for (i, j), coeffs in (brackets or {}).items():
            if not 0 <= i < j < dim:
                raise SpecFormatError(f"bracket pair ({i},{j}) must satisfy 0 <= i < j < {dim}")
            v = np.asarray(list(coeffs), dtype=float)
            if v.shape != (dim,):
                raise SpecFormatError(f"bracket ({i},{j}) needs {dim} coefficients, got {v.shape}")
            c[i, j] = v
            c[j, i] = -v
        g = np.eye(dim) if gram is None else np.asarray(gram, dtype=float)
        return cls(c, g)

    def basis_vector(self, i: int) -> np.ndarray:
        e = np.zeros(self.n)
        e[i] = 1.0
        return e


def _check_vec(alg: MetricLieAlgebra, X: np.ndarray) -> np.ndarray:
    X = np.asarray(X, dtype=float)
    if X.shape[-1] != alg.n:
        raise DimensionMismatchError(f"vector of length {X.shape[-1]} in a {alg.n}-dim algebra")
    return X


def bracket(alg: MetricLieAlgebra, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """[X, Y] = sum_ij X_i Y_j c[i,j,:]."""
    X, Y = _check_vec(alg, X), _check_vec(alg, Y)
    return np.einsum("i,j,ijk->k", X, Y, alg.c)


def inner(alg: MetricLieAlgebra, X: np.ndarray, Y: np.ndarray) -> float:
    return float(_check_vec(alg, X) @ alg.gram @ _check_vec(alg, Y))


def norm(alg: MetricLieAlgebra, X: np.ndarray) -> float:
    return float(np.sqrt(max(inner(alg, X, X), 0.0)))


def ad(alg: MetricLieAlgebra, X: np.ndarray) -> np.ndarray:
    """Matrix of ad_X : Y -> [X, Y]."""
    X = _check_vec(alg, X)
    # column j is [X, e_j]; component k is sum_i X_i c[i,j,k]
    return np.einsum("i,ijk->kj", X, alg.c)


def ad_t(alg: MetricLieAlgebra, X: np.ndarray) -> np.ndarray:
    """Metric adjoint of ad_X: gram^{-1} ad_X^T gram (plain transpose when gram = I)."""
    M = ad(alg, X)
    return np.linalg.solve(alg.gram, M.T @ alg.gram)


@dataclass(frozen=True)
class Subspace:
    """A subspace given by a gram-orthonormal row basis, shape (dim, n)."""

    basis: np.ndarray

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def project(self, alg: MetricLieAlgebra, X: np.ndarray) -> np.ndarray:
        """Orthogonal (w.r.t. gram) projection of X onto the subspace."""
        coeffs = self.basis @ alg.gram @ X
        return coeffs @ self.basis

    def distance(self, alg: MetricLieAlgebra, X: np.ndarray) -> float:
        return norm(alg, X - self.project(alg, X))


def _null_space(M: np.ndarray, tol: float) -> np.ndarray:
    """Rows spanning ker(M), orthonormal in the Euclidean sense."""
    if M.size == 0:
        return np.eye(M.shape[1])
    u, s, vh = np.linalg.svd(M)
    cut = tol * max(1.0, (s[0] if s.size else 0.0))
    rank = int(np.sum(s > cut))
    return vh[rank:]


def _row_space(M: np.ndarray, tol: float) -> np.ndarray:
    """Orthonormal rows spanning the row space of M."""
    u, s, vh = np.linalg.svd(M, full_matrices=False)
    cut = tol * max(1.0, (s[0] if s.size else 0.0))
    rank = int(np.sum(s > cut))
    return vh[:rank]


def _gram_orthonormalize(rows: np.ndarray, gram: np.ndarray, tol: float) -> np.ndarray:
    """Modified Gram-Schmidt on row vectors under the given inner product."""
    out = []
    for v in rows:
        w = v.astype(float).copy()
        for u in out:
            w -= (u @ gram @ w) * u
        nrm = float(np.sqrt(max(w @ gram @ w, 0.0)))
        if nrm > tol:
            out.append(w / nrm)
    return np.array(out) if out else np.zeros((0, rows.shape[1]))


def center(alg: MetricLieAlgebra) -> Subspace:
    """The centre z = {X : [X, g] = 0}, as kernel of the stacked ad map."""
    n = alg.n
    K = alg.c.transpose(1, 2, 0).reshape(n * n, n)  # rows: constraint ad(X)[k,j] = 0
    rows = _null_space(K, alg.tau)
    if not np.allclose(alg.gram, np.eye(n)):
        rows = _gram_orthonormalize(rows, alg.gram, alg.tau)
    return Subspace(rows)


def derived_algebra(alg: MetricLieAlgebra) -> Subspace:
    """g' = span of all brackets of basis vectors."""
    n = alg.n
    rows = _row_space(alg.c.reshape(n * n, n), alg.tau)
    if not np.allclose(alg.gram, np.eye(n)):
        rows = _gram_orthonormalize(rows, alg.gram, alg.tau)
    return Subspace(rows)


def is_unimodular(alg: MetricLieAlgebra) -> bool:
    """Tr ad_X = 0 for all X (checked on the basis; the trace is linear)."""
    traces = np.einsum("ijj->i", alg.c.transpose(0, 2, 1))  # Tr ad(e_i) = sum_j c[i,j,j]
    return bool(np.max(np.abs(traces), initial=0.0) <= alg.tau)


def trace_form(alg: MetricLieAlgebra) -> np.ndarray:
    """The linear functional X -> Tr ad_X, as a coefficient vector."""
    return np.einsum("ijj->i", alg.c.transpose(0, 2, 1))


def is_biinvariant(alg: MetricLieAlgebra) -> bool:
    """True iff ad_X is skew-symmetric w.r.t. gram for every X."""
    for i in range(alg.n):
        M = ad(alg, alg.basis_vector(i))
        if np.max(np.abs(alg.gram @ M + M.T @ alg.gram)) > alg.tau:
            return False
    return True


def is_abelian(alg: MetricLieAlgebra) -> bool:
    return bool(np.max(np.abs(alg.c)) <= alg.tau)


@dataclass(frozen=True)
class ValidationReport:
    antisymmetry_residual: float
    jacobi_residual: float
    gram_symmetry_residual: float
    min_gram_eigenvalue: float
    tol: float

    @property
    def passed(self) -> bool:
        return (self.antisymmetry_residual <= self.tol
                and self.jacobi_residual <= self.tol
                and self.gram_symmetry_residual <= self.tol
                and self.min_gram_eigenvalue > self.tol)

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "antisymmetry_residual": self.antisymmetry_residual,
            "jacobi_residual": self.jacobi_residual,
            "gram_symmetry_residual": self.gram_symmetry_residual,
            "min_gram_eigenvalue": self.min_gram_eigenvalue,
            "tolerance": self.tol,
        }


def validate(alg: MetricLieAlgebra) -> ValidationReport:
    """Check antisymmetry, the Jacobi identity, and positive-definiteness of gram."""
    c = alg.c
    anti = float(np.max(np.abs(c + c.transpose(1, 0, 2)), initial=0.0))
    # [[e_i,e_j],e_k] has coefficients sum_m c[i,j,m] c[m,k,l]
    t = np.einsum("ijm,mkl->ijkl", c, c)
    jac = t + t.transpose(1, 2, 0, 3) + t.transpose(2, 0, 1, 3)
    jacres = float(np.max(np.abs(jac), initial=0.0))
    gsym = float(np.max(np.abs(alg.gram - alg.gram.T)))
    mineig = float(np.min(np.linalg.eigvalsh((alg.gram + alg.gram.T) / 2.0)))
    return ValidationReport(anti, jacres, gsym, mineig, alg.tau)


def orthonormalize(alg: MetricLieAlgebra) -> tuple[MetricLieAlgebra, np.ndarray]:
    """Re-express the algebra in a gram-orthonormal basis.

    Returns (new_algebra, P) where columns of P are the new basis vectors in
    old coordinates; the new algebra has identity gram.  Old coordinates X map
    to solve(P, X).
    """
    n = alg.n
    if np.allclose(alg.gram, np.eye(n), atol=alg.tau):
        return alg, np.eye(n)
    rows = _gram_orthonormalize(np.eye(n), alg.gram, alg.tau)
    if rows.shape[0] != n:
        raise ValueError("gram matrix is numerically singular")
    P = rows.T  # column i = new basis vector
    Pinv = rows @ alg.gram  # inverse of P since rows are gram-orthonormal
    cprime = np.einsum("ai,bj,abm,km->ijk", P, P, alg.c, Pinv)
    return MetricLieAlgebra(cprime, np.eye(n)), P


def conjugate(alg: MetricLieAlgebra, R: np.ndarray) -> MetricLieAlgebra:
    """Change of orthonormal basis by an orthogonal matrix R (identity gram only)."""
    if not np.allclose(alg.gram, np.eye(alg.n)):
        raise ValueError("conjugate expects an identity-gram algebra")
    cprime = np.einsum("ai,bj,abm,mk->ijk", R, R, alg.c, R)
    return MetricLieAlgebra(cprime, np.eye(alg.n))


# ---------------------------------------------------------------------------
# Algebra spec files (JSON)
# ---------------------------------------------------------------------------

def algebra_from_dict(data: dict) -> MetricLieAlgebra:
    """Parse the algebra spec format: {"dim", "gram"?, "brackets": [...]}.

    Bracket indices are 1-based with i < j; unspecified pairs are zero.
    """
    if not isinstance(data, dict) or "dim" not in data:
        raise SpecFormatError("spec must be an object with a 'dim' field")
    dim = data["dim"]
    if not isinstance(dim, int) or dim < 1:
        raise SpecFormatError(f"'dim' must be a positive integer, got {dim!r}")
    brackets = {}
    for idx, entry in enumerate(data.get("brackets", [])):
        try:
            i, j, coeffs = entry["i"], entry["j"], entry["coeffs"]
        except (TypeError, KeyError) as exc:
            raise SpecFormatError(f"brackets[{idx}]: missing field {exc}") from exc
        if not (isinstance(i, int) and isinstance(j, int)):
            raise SpecFormatError(f"brackets[{idx}]: indices must be integers")
        if not (1 <= i < j <= dim):
            raise SpecFormatError(
                f"brackets[{idx}]: need 1 <= i < j <= dim, got i={i}, j={j}")
        if len(coeffs) != dim:
            raise SpecFormatError(
                f"brackets[{idx}]: expected {dim} coefficients, got {len(coeffs)}")
        if (i - 1, j - 1) in brackets:
            raise SpecFormatError(f"brackets[{idx}]: duplicate pair ({i},{j})")
        brackets[(i - 1, j - 1)] = [float(v) for v in coeffs]
    gram = data.get("gram")
    if gram is not None:
        gram = np.asarray(gram, dtype=float)
        if gram.shape != (dim, dim):
            raise SpecFormatError(f"'gram' must be {dim}x{dim}")
    return MetricLieAlgebra.from_brackets(dim, brackets, gram)


def algebra_to_dict(alg: MetricLieAlgebra) -> dict:
    out: dict = {"dim": alg.n}
    if not np.array_equal(alg.gram, np.eye(alg.n)):
        out["gram"] = alg.gram.tolist()
    entries = []
    for i in range(alg.n):
        for j in range(i + 1, alg.n):
            if np.any(alg.c[i, j] != 0.0):
                entries.append({"i": i + 1, "j": j + 1, "coeffs": alg.c[i, j].tolist()})
    out["brackets"] = entries
    return out


def load_algebra(path: str) -> MetricLieAlgebra:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SpecFormatError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    return algebra_from_dict(data)


def save_algebra(alg: MetricLieAlgebra, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(algebra_to_dict(alg), fh, indent=2)
        fh.write("\n")
