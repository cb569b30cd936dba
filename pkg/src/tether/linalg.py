"""Dense real linear algebra and kernel functions.

Everything the predictors need from a matrix library, behind a small
contract: symmetric eigendecomposition (descending), eigenvalue-clipping
PSD repair, regularized solves of (K + δI)c = y with one reusable
factorization, and the polynomial / Gaussian / hyperbolic-tangent kernels.

Matrices are plain ``numpy`` float64 arrays.  Every public function is
pure and validates its inputs; outputs are always finite.

Thread Safety:
    No shared mutable state.  ``RlsSolver`` is immutable after
    construction and may be shared between LOOCV workers.

"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np
import scipy.linalg
from scipy.spatial.distance import cdist

from tether._errors import ConfigError, InputError, NumericError
from tether._types import DenseMatrix, RealVector


@dataclass(frozen=True, slots=True)
class Tolerances:
    """Numeric tolerances for the linalg contract.

    Attributes:
        symmetry: Max absolute asymmetry |m - mᵀ| accepted as symmetric,
            relative to max(1, max|m|).
        reconstruction: Relative Frobenius error bound for ΓΛΓᵀ.
        solve_residual: Relative residual bound for regularized solves.
        psd_floor: Eigenvalues above -psd_floor count as non-negative.

    """

    symmetry: float = 1e-9
    reconstruction: float = 1e-7
    solve_residual: float = 1e-8
    psd_floor: float = 1e-9


DEFAULT_TOLERANCES = Tolerances()


# ---------------------------------------------------------------------------
# Kernels
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class KernelSpec:
    """A kernel function and its parameters.

    Attributes:
        kind: ``polynomial`` (x·y+1)^d, ``gaussian`` exp(-‖x-y‖²/β),
            ``tanh`` tanh(h·x·y+c), or ``precomputed`` (the caller supplies K).
        degree: d for polynomial.
        bandwidth: β for gaussian.
        scale: h for tanh.
        offset: c for tanh.

    """

    kind: Literal["polynomial", "gaussian", "tanh", "precomputed"] = "polynomial"
    degree: int = 1
    bandwidth: float = 1.0
    scale: float = 1.0
    offset: float = 0.0

    def __post_init__(self) -> None:
        if self.kind == "gaussian" and not self.bandwidth > 0:
            msg = f"gaussian kernel bandwidth must be > 0, got {self.bandwidth}"
            raise ConfigError(msg)
        if self.kind == "polynomial" and self.degree < 1:
            msg = f"polynomial kernel degree must be >= 1, got {self.degree}"
            raise ConfigError(msg)


def kernel_eval(spec: KernelSpec, x: RealVector, y: RealVector) -> float:
    """Evaluate the kernel on two vectors of equal dimension."""
    x = np.asarray(x, dtype=np.float64).ravel()
    y = np.asarray(y, dtype=np.float64).ravel()
    if x.shape != y.shape:
        msg = f"kernel inputs differ in dimension: {x.shape[0]} vs {y.shape[0]}"
        raise InputError(msg)
    return float(kernel_matrix(spec, x[None, :], y[None, :])[0, 0])


def kernel_matrix(spec: KernelSpec, X: DenseMatrix, Y: DenseMatrix | None = None) -> DenseMatrix:
    """Gram matrix K[i, j] = κ(X[i], Y[j]); Y defaults to X."""
    if spec.kind == "precomputed":
        msg = "a precomputed kernel cannot be evaluated on feature vectors"
        raise ConfigError(msg)
    X = np.atleast_2d(np.asarray(X, dtype=np.float64))
    Y = X if Y is None else np.atleast_2d(np.asarray(Y, dtype=np.float64))
    if X.shape[1] != Y.shape[1]:
        msg = f"kernel inputs differ in dimension: {X.shape[1]} vs {Y.shape[1]}"
        raise InputError(msg)

    if spec.kind == "gaussian":
        return np.exp(-cdist(X, Y, metric="sqeuclidean") / spec.bandwidth)

    inner = X @ Y.T
    if spec.kind == "polynomial":
        return (inner + 1.0) ** spec.degree
    return np.tanh(spec.scale * inner + spec.offset)


# ---------------------------------------------------------------------------
# Eigendecomposition and PSD repair
# ---------------------------------------------------------------------------


def _check_symmetric(m: DenseMatrix, tol: Tolerances) -> DenseMatrix:
    m = np.asarray(m, dtype=np.float64)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        msg = f"expected a square matrix, got shape {m.shape}"
        raise InputError(msg)
    if not np.all(np.isfinite(m)):
        msg = "matrix contains NaN or Inf"
        raise NumericError(msg)
    scale = max(1.0, float(np.max(np.abs(m)))) if m.size else 1.0
    if m.size and float(np.max(np.abs(m - m.T))) > tol.symmetry * scale:
        msg = "matrix is not symmetric"
        raise InputError(msg)
    return m


def sym_eigen(
    m: DenseMatrix, *, tol: Tolerances = DEFAULT_TOLERANCES
) -> tuple[RealVector, DenseMatrix]:
    """Eigendecomposition of a symmetric matrix, eigenvalues descending.

    Returns ``(w, V)`` with ``m ≈ V @ diag(w) @ V.T`` and orthonormal
    columns in ``V``.

    """
    m = _check_symmetric(m, tol)
    if m.shape[0] == 0:
        return np.zeros(0), np.zeros((0, 0))
    # LAPACK syevr on the exactly symmetrized input
    w, v = scipy.linalg.eigh(0.5 * (m + m.T))
    return w[::-1].copy(), v[:, ::-1].copy()


def reconstruct(w: RealVector, v: DenseMatrix) -> DenseMatrix:
    """Return V diag(w) Vᵀ."""
    return (v * w) @ v.T


def psd_repair(m: DenseMatrix, *, tol: Tolerances = DEFAULT_TOLERANCES) -> DenseMatrix:
    """Project a symmetric matrix onto the PSD cone by clipping negative eigenvalues."""
    w, v = sym_eigen(m, tol=tol)
    out = reconstruct(np.maximum(w, 0.0), v)
    return 0.5 * (out + out.T)


def is_psd(m: DenseMatrix, *, tol: Tolerances = DEFAULT_TOLERANCES) -> bool:
    """True if every eigenvalue of *m* is >= -tol.psd_floor."""
    w, _ = sym_eigen(m, tol=tol)
    return bool(w.size == 0 or w[-1] >= -tol.psd_floor)


# ---------------------------------------------------------------------------
# Regularized solves
# ---------------------------------------------------------------------------


class RlsSolver:
    """One factorization of (K + δI), reused for any number of label vectors.

    Cholesky is tried first.  When it fails (K was not repaired and
    K + δI is indefinite) the solver falls back to an eigendecomposition
    pseudo-solve and sets ``used_fallback``.

    Args:
        k: Square symmetric kernel matrix.
        delta: Regularization weight δ > 0.

    """

    __slots__ = ("_chol", "_eig", "delta", "k", "used_fallback")

    def __init__(
        self, k: DenseMatrix, delta: float, *, tol: Tolerances = DEFAULT_TOLERANCES
    ) -> None:
        if not delta > 0:
            msg = f"regularization delta must be > 0, got {delta}"
            raise InputError(msg)
        self.k = _check_symmetric(k, tol)
        self.delta = float(delta)
        n = self.k.shape[0]
        system = self.k + self.delta * np.eye(n)
        self._chol: tuple[DenseMatrix, bool] | None = None
        self._eig: tuple[RealVector, DenseMatrix] | None = None
        self.used_fallback = False
        try:
            self._chol = scipy.linalg.cho_factor(system, lower=True, check_finite=False)
        except np.linalg.LinAlgError:
            w, v = sym_eigen(system, tol=tol)
            if np.any(np.abs(w) <= np.finfo(np.float64).eps * max(1.0, float(np.abs(w).max()))):
                msg = "K + delta*I is singular"
                raise NumericError(msg) from None
            self._eig = (w, v)
            self.used_fallback = True

    def solve(self, y: RealVector) -> RealVector:
        """Return c with (K + δI) c = y."""
        y = np.asarray(y, dtype=np.float64)
        if y.shape[0] != self.k.shape[0]:
            msg = f"label vector has length {y.shape[0]}, kernel is {self.k.shape[0]}x{self.k.shape[0]}"
            raise InputError(msg)
        if self._chol is not None:
            c = scipy.linalg.cho_solve(self._chol, y, check_finite=False)
        else:
            assert self._eig is not None
            w, v = self._eig
            c = v @ ((v.T @ y) / w)
        if not np.all(np.isfinite(c)):
            msg = "regularized solve produced non-finite coefficients"
            raise NumericError(msg)
        return c

    def predict(self, y: RealVector, k_hat: RealVector) -> float:
        """Return k̂ᵀ (K + δI)⁻¹ y."""
        return float(np.dot(np.asarray(k_hat, dtype=np.float64), self.solve(y)))

    def hat_row(self, j: int) -> RealVector:
        """Row j of the hat matrix K(K + δI)⁻¹, so that ŷ_j = hat_row(j) · y."""
        if not 0 <= j < self.k.shape[0]:
            msg = f"row {j} out of range for a {self.k.shape[0]}x{self.k.shape[0]} kernel"
            raise InputError(msg)
        return self.solve(self.k[j])


def regularized_solve(
    k: DenseMatrix, y: RealVector, delta: float, *, tol: Tolerances = DEFAULT_TOLERANCES
) -> RealVector:
    """Solve (K + δI) c = y for a symmetric PSD K and δ > 0."""
    return RlsSolver(k, delta, tol=tol).solve(y)
