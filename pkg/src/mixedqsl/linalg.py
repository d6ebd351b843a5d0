"""Dense Hermitian linear algebra: eigendecomposition, PSD square root, propagators.

Everything here is a thin, validated layer over LAPACK's Hermitian solver
(``numpy.linalg.eigh``). Matrices are small (N <= 64) and dense.
"""
from __future__ import annotations

from typing import NamedTuple

import numpy as np

from . import numerics
from .errors import NotHermitian, NotPSD, NumericalFailure


class EigenDecomposition(NamedTuple):
    values: np.ndarray   # ascending, real
    vectors: np.ndarray  # unitary, eigenvectors in columns

    def reconstruct(self) -> np.ndarray:
        return (self.vectors * self.values) @ self.vectors.conj().T


def as_square(M) -> np.ndarray:
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] < 1:
        raise ValueError(f"expected a non-empty square matrix, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise ValueError("matrix has non-finite entries")
    return M


def hermiticity_residual(M) -> float:
    M = np.asarray(M)
    return float(np.max(np.abs(M - M.conj().T))) if M.size else 0.0


def check_hermitian(M, tol: float | None = None) -> np.ndarray:
    """Validate Hermiticity and return the exactly symmetrised matrix."""
    M = as_square(M)
    tol = numerics.get().hermitian_tol if tol is None else tol
    res = hermiticity_residual(M)
    if res > tol:
        raise NotHermitian(f"max |M - M^dag| = {res:.3e} exceeds {tol:.1e}")
    return 0.5 * (M + M.conj().T)


def hermitian_eig(M) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending.

    Raises:
        NotHermitian: if ``M`` deviates from Hermitian by more than the
            configured tolerance.
        NumericalFailure: if LAPACK does not converge.
    """
    H = check_hermitian(M)
    try:
        w, V = np.linalg.eigh(H)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK convergence failure
        raise NumericalFailure(f"Hermitian eigensolver failed: {exc}") from exc
    return EigenDecomposition(w, V)


def _clean_spectrum(w: np.ndarray, what: str) -> np.ndarray:
    cfg = numerics.get()
    scale = max(float(np.max(np.abs(w))), 1.0) if w.size else 1.0
    if w.size and w.min() < -cfg.psd_tol * scale:
        raise NotPSD(f"{what} has eigenvalue {w.min():.3e} < -{cfg.psd_tol:.0e}")
    w = np.where(np.abs(w) <= cfg.zero_eig_rtol * scale, 0.0, w)
    return np.clip(w, 0.0, None)


def psd_eigenvalues(M, what: str = "matrix") -> np.ndarray:
    """Eigenvalues of a PSD matrix with round-off negatives clipped to zero."""
    w = np.linalg.eigvalsh(check_hermitian(M))
    return _clean_spectrum(w, what)


def psd_sqrt(M) -> np.ndarray:
    """Principal square root of a Hermitian positive semidefinite matrix.

    Eigenvalues in ``[-psd_tol, 0)`` are treated as round-off and set to
    zero, as are eigenvalues within ``zero_eig_rtol`` of zero relative to
    the spectral radius (their square roots would otherwise inject ~1e-8
    noise).
    """
    w, V = hermitian_eig(M)
    w = _clean_spectrum(w, "matrix")
    return (V * np.sqrt(w)) @ V.conj().T


def propagators(eig: EigenDecomposition, times) -> np.ndarray:
    """Stack of ``exp(-i H t)`` for every t in ``times`` from one eigendecomposition."""
    w, V = eig
    times = np.atleast_1d(np.asarray(times, dtype=float))
    phases = np.exp(-1j * np.multiply.outer(times, w))
    return np.einsum("ij,tj,kj->tik", V, phases, V.conj())


def hermitian_propagator(H, t: float) -> np.ndarray:
    """``exp(-i H t)`` (natural units, hbar = 1) via the spectral decomposition."""
    return propagators(hermitian_eig(H), [t])[0]
