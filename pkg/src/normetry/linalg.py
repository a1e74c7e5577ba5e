"""Dense complex matrix core.

Hermitian eigendecomposition, spectral function calculus, polar
decomposition, matrix absolute value, and the structural predicates
(Loewner order, normality, contraction/expansive) used by the checkers.

All functions are pure; matrices are plain complex ndarrays.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceFailure, DimensionMismatch, DomainError

HERMITIAN_DRIFT_TOL = 1e-12
EIG_RESIDUAL_TOL = 1e-10
NEG_EIG_CLAMP = 1e-8


def as_square(x) -> np.ndarray:
    """Coerce to a square complex matrix with finite entries."""
    m = np.asarray(x, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise DomainError("matrix has non-finite entries")
    return m


def opnorm(x) -> float:
    """Operator (spectral) norm, i.e. the largest singular value."""
    return float(np.linalg.norm(np.asarray(x, dtype=complex), 2))


def hermitian_part(x) -> np.ndarray:
    """(M + M*)/2."""
    m = as_square(x)
    return (m + m.conj().T) / 2


def hermitize(x, check: bool = True) -> np.ndarray:
    """Symmetrize to (M + M*)/2, optionally rejecting large asymmetry drift."""
    m = as_square(x)
    if check:
        drift = opnorm(m - m.conj().T)
        if drift > HERMITIAN_DRIFT_TOL * max(1.0, opnorm(m)):
            raise DomainError(f"matrix is not Hermitian (drift {drift:.3e})")
    return (m + m.conj().T) / 2


@dataclass(frozen=True)
class Spectrum:
    """Descending eigenvalues and the matching orthonormal eigenvector frame."""

    eigenvalues: np.ndarray  # real, descending
    frame: np.ndarray  # unitary, columns are eigenvectors

    def reconstruct(self) -> np.ndarray:
        v = self.frame
        return (v * self.eigenvalues) @ v.conj().T


@dataclass(frozen=True)
class PolarParts:
    """X = u @ abs with abs = |X| and abs_star = |X*| = u abs u* (X invertible)."""

    u: np.ndarray
    abs: np.ndarray
    abs_star: np.ndarray


def eigh(h) -> Spectrum:
    """Eigendecomposition of a Hermitian matrix, eigenvalues descending."""
    m = hermitize(h)
    try:
        w, v = np.linalg.eigh(m)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(str(exc)) from exc
    w = w[::-1]
    v = v[:, ::-1]
    residual = opnorm(m - (v * w) @ v.conj().T)
    if residual > EIG_RESIDUAL_TOL * max(1.0, opnorm(m)):
        raise ConvergenceFailure(f"eigendecomposition residual {residual:.3e}")
    return Spectrum(eigenvalues=np.ascontiguousarray(w), frame=np.ascontiguousarray(v))


def eigvalsh_desc(h) -> np.ndarray:
    """Descending eigenvalues of a Hermitian matrix (no frame)."""
    m = hermitize(h)
    try:
        w = np.linalg.eigvalsh(m)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(str(exc)) from exc
    return w[::-1]


def _clamp_spectrum(w: np.ndarray, require_positive: bool = False) -> np.ndarray:
    """Clamp roundoff-negative eigenvalues to 0; reject genuinely negative ones."""
    scale = max(1.0, float(np.max(np.abs(w))) if w.size else 0.0)
    floor = -NEG_EIG_CLAMP * scale
    if np.any(w < floor):
        raise DomainError(
            f"eigenvalue {float(np.min(w)):.3e} below the roundoff clamp window"
        )
    w = np.maximum(w, 0.0)
    if require_positive and np.any(w == 0.0):
        raise DomainError("zero eigenvalue for a function singular at 0")
    return w


def spectral_apply(f, a, require_positive: bool = False) -> np.ndarray:
    """Apply a scalar function on [0, inf) to a PSD-ish Hermitian matrix.

    Eigenvalues in [-1e-8*scale, 0) are treated as roundoff and clamped to 0;
    more negative eigenvalues raise DomainError.
    """
    spec = eigh(a)
    w = _clamp_spectrum(spec.eigenvalues, require_positive=require_positive)
    fw = np.asarray(f(w), dtype=float)
    v = spec.frame
    return hermitize((v * fw) @ v.conj().T, check=False)


def _svd(x):
    m = as_square(x)
    try:
        return np.linalg.svd(m)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(str(exc)) from exc


def matrix_abs(x) -> np.ndarray:
    """|X| = (X*X)^(1/2), computed from the SVD of X."""
    u, s, vh = _svd(x)
    v = vh.conj().T
    return hermitize((v * s) @ v.conj().T, check=False)


def polar(x) -> PolarParts:
    """Polar decomposition X = U|X|, with |X*| as well.

    For singular X the unitary factor is completed on the kernel from the
    (deterministic) SVD frames, so results are reproducible per input.
    """
    u, s, vh = _svd(x)
    v = vh.conj().T
    unitary = u @ vh
    abs_x = hermitize((v * s) @ v.conj().T, check=False)
    abs_xstar = hermitize((u * s) @ u.conj().T, check=False)
    return PolarParts(u=unitary, abs=abs_x, abs_star=abs_xstar)


def loewner_leq(x, y, tol: float = 1e-9) -> bool:
    """X <= Y in the Loewner order, up to a scaled tolerance."""
    mx, my = as_square(x), as_square(y)
    if mx.shape != my.shape:
        raise DimensionMismatch(f"{mx.shape} vs {my.shape}")
    d = hermitian_part(my - mx)
    w = eigvalsh_desc(d)
    lam_min = float(w[-1]) if w.size else 0.0
    return lam_min >= -tol * max(1.0, opnorm(d))


def is_psd(x, tol: float = 1e-9) -> bool:
    """Hermitian with eigenvalues >= -tol * max(1, ||X||_op)."""
    m = as_square(x)
    if opnorm(m - m.conj().T) > tol * max(1.0, opnorm(m)):
        return False
    w = eigvalsh_desc(hermitian_part(m))
    lam_min = float(w[-1]) if w.size else 0.0
    return lam_min >= -tol * max(1.0, opnorm(m))


def is_normal(x, tol: float = 1e-9) -> bool:
    m = as_square(x)
    comm = m @ m.conj().T - m.conj().T @ m
    return opnorm(comm) <= tol * max(1.0, opnorm(m) ** 2)


def is_contraction(x, tol: float = 1e-9) -> bool:
    m = as_square(x)
    w = eigvalsh_desc(m.conj().T @ m)
    lam_max = float(w[0]) if w.size else 0.0
    return lam_max <= 1.0 + tol


def is_expansive(x, tol: float = 1e-9) -> bool:
    m = as_square(x)
    w = eigvalsh_desc(m.conj().T @ m)
    lam_min = float(w[-1]) if w.size else 0.0
    return lam_min >= 1.0 - tol


def matrix_power(x, m: int) -> np.ndarray:
    return np.linalg.matrix_power(as_square(x), int(m))
