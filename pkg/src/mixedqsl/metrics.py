"""Distances between states: Bures angle, Bloch angle, purity-normalised angle.

``theta_angle`` and ``phi_angle`` are only distances on sets of states that
share a spectrum, so they refuse non iso-spectral pairs unless ``check`` is
switched off by a caller that already knows the pair is unitarily connected.

Angles are evaluated through half-angle ``atan2`` forms built from Frobenius
norms. They are algebraically identical to the ``arccos`` of the trace
ratios but keep full precision near 0 and pi, where ``arccos`` of a rounded
argument loses half the digits.
"""
from __future__ import annotations

import numpy as np

from . import numerics
from .errors import DimensionMismatch, MaximallyMixed, NotIsoSpectral, NotNormalized, NumericalFailure
from .linalg import psd_eigenvalues, psd_sqrt
from .states import as_matrix, iso_spectral, to_bloch


def _pair(rho, sigma) -> tuple[np.ndarray, np.ndarray]:
    a, b = as_matrix(rho), as_matrix(sigma)
    if a.shape != b.shape:
        raise DimensionMismatch(f"states have shapes {a.shape} and {b.shape}")
    return a, b


def _check_arg(raw: float, lo: float, hi: float, what: str) -> None:
    slack = numerics.get().arccos_slack
    if not (lo - slack <= raw <= hi + slack):
        raise NumericalFailure(f"{what} argument {raw:.9g} outside [{lo}, {hi}]")


def root_fidelity(rho, sigma) -> float:
    """Uhlmann root fidelity ``tr sqrt(sqrt(rho) sigma sqrt(rho))``, clamped to [0, 1]."""
    a, b = _pair(rho, sigma)
    if np.max(np.abs(a - b)) <= 1e-14:
        # coincident states: the sqrt round trip would leave ~1e-8 in the angle
        return 1.0
    s = psd_sqrt(a)
    w = psd_eigenvalues(s @ b @ s, "sqrt(rho) sigma sqrt(rho)")
    f = float(np.sqrt(w).sum())
    _check_arg(f, 0.0, 1.0, "root fidelity")
    return min(max(f, 0.0), 1.0)


def bures_angle(rho, sigma) -> float:
    return float(np.arccos(root_fidelity(rho, sigma)))


def _overlaps(a: np.ndarray, b: np.ndarray) -> tuple[float, float, float]:
    """(tr[rho sigma], purity averaged over the pair, ||rho - sigma||_F^2)."""
    overlap = float(np.vdot(a, b).real)
    p = 0.5 * (np.vdot(a, a).real + np.vdot(b, b).real)
    d = a - b
    return overlap, float(p), float(np.vdot(d, d).real)


def theta_angle(rho, sigma, *, check: bool = True) -> float:
    """Angle between the generalized Bloch vectors of two iso-spectral states.

    Computed basis-free from ``(tr[rho sigma] - 1/N) / (tr[rho^2] - 1/N)``.
    Result lies in [0, pi].

    Raises:
        NotIsoSpectral: if ``check`` and the spectra differ.
        MaximallyMixed: if rho is (numerically) the maximally mixed state.
    """
    a, b = _pair(rho, sigma)
    if check and not iso_spectral(a, b):
        raise NotIsoSpectral("Bloch angle is defined only between states with equal spectra")
    n = a.shape[0]
    eye = np.eye(n) / n
    da, db = a - eye, b - eye
    excess = 0.5 * (np.vdot(da, da).real + np.vdot(db, db).real)  # tr[rho^2] - 1/N
    if excess < numerics.get().mixed_tol:
        raise MaximallyMixed("Bloch vector of the maximally mixed state has no direction")
    overlap, _, _ = _overlaps(a, b)
    _check_arg((overlap - 1.0 / n) / excess, -1.0, 1.0, "Bloch angle")
    minus = np.linalg.norm(a - b)
    plus = np.linalg.norm(da + db)
    return float(2.0 * np.arctan2(minus, plus))


def theta_angle_bloch(rho, sigma) -> float:
    """Same angle, computed from explicit Bloch vectors in the Gell-Mann basis."""
    a, b = _pair(rho, sigma)
    r, s = to_bloch(a), to_bloch(b)
    if min(r.norm, s.norm) ** 2 < numerics.get().mixed_tol:
        raise MaximallyMixed("zero-length Bloch vector")
    ru, su = r.unit(), s.unit()
    return float(2.0 * np.arctan2(np.linalg.norm(ru - su), np.linalg.norm(ru + su)))


def phi_angle(rho, sigma, *, check: bool = True) -> float:
    """``arccos sqrt(tr[rho sigma] / tr[rho^2])``, in [0, pi/2].

    Reduces to the Fubini-Study distance for pure states.
    """
    a, b = _pair(rho, sigma)
    if check and not iso_spectral(a, b):
        raise NotIsoSpectral("phi angle is defined only between states with equal spectra")
    overlap, p, dist2 = _overlaps(a, b)
    _check_arg(np.sqrt(max(overlap, 0.0) / p), 0.0, 1.0, "phi angle")
    # iso-spectral: tr[rho^2] - tr[rho sigma] = ||rho - sigma||^2 / 2
    return float(np.arctan2(np.sqrt(0.5 * dist2), np.sqrt(max(overlap, 0.0))))


def fubini_study(psi, phi) -> float:
    """``arccos |<psi|phi>|`` for unit kets."""
    psi = np.asarray(psi, dtype=complex).ravel()
    phi = np.asarray(phi, dtype=complex).ravel()
    if psi.shape != phi.shape:
        raise DimensionMismatch(f"kets have lengths {psi.size} and {phi.size}")
    tol = numerics.get().unit_norm_tol
    for v in (psi, phi):
        if abs(np.linalg.norm(v) - 1.0) > tol:
            raise NotNormalized(f"ket norm {np.linalg.norm(v):.12g}")
    overlap = np.vdot(psi, phi)
    # sine from the component of phi orthogonal to psi, no cancellation near 0
    perp = np.linalg.norm(phi - overlap * psi)
    return float(np.arctan2(perp, abs(overlap)))
