"""Density matrices, spectra and the generalized Bloch representation.

A state of an N-level system is written as

    rho = (1/N) * (I + sqrt(N(N-1)/2) * r . A)

where ``A`` are the N^2 - 1 generalized Gell-Mann matrices normalised to
``tr(A_i A_j) = 2 delta_ij`` and ``r`` is the Bloch (coherence) vector,
with ``|r| = 1`` for pure states.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from . import numerics
from .errors import DimensionMismatch, InvalidDimension, NotAState
from .linalg import as_square, check_hermitian, psd_eigenvalues


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Validated density matrix: Hermitian, unit trace, positive semidefinite."""

    mat: np.ndarray

    def __post_init__(self):
        cfg = numerics.get()
        try:
            M = check_hermitian(self.mat)
        except ValueError as exc:
            raise NotAState(str(exc)) from exc
        tr = np.trace(M).real
        if abs(tr - 1.0) > cfg.trace_tol:
            raise NotAState(f"trace {tr:.12g} differs from 1 by more than {cfg.trace_tol:.0e}")
        try:
            psd_eigenvalues(M, "density matrix")
        except ValueError as exc:
            raise NotAState(str(exc)) from exc
        M.setflags(write=False)
        object.__setattr__(self, "mat", M)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    def __array__(self, dtype=None, copy=None):
        return self.mat if dtype is None else self.mat.astype(dtype)

    @classmethod
    def from_ket(cls, psi) -> "DensityMatrix":
        psi = np.asarray(psi, dtype=complex).ravel()
        psi = psi / np.linalg.norm(psi)
        return cls(np.outer(psi, psi.conj()))

    @classmethod
    def diagonal(cls, values) -> "DensityMatrix":
        return cls(np.diag(np.asarray(values, dtype=complex)))

    @classmethod
    def maximally_mixed(cls, n: int) -> "DensityMatrix":
        return cls(np.eye(n, dtype=complex) / n)


def as_matrix(state) -> np.ndarray:
    """Raw complex matrix behind a DensityMatrix or array-like."""
    if isinstance(state, DensityMatrix):
        return state.mat
    return as_square(state)


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues of a state, sorted descending and summing to one."""

    values: tuple

    def __post_init__(self):
        v = np.sort(np.asarray(self.values, dtype=float))[::-1]
        tol = numerics.get().trace_tol
        if v.size < 1 or np.any(v < -numerics.get().psd_tol) or np.any(v > 1 + tol):
            raise NotAState(f"spectrum entries must lie in [0, 1]: {v}")
        if abs(v.sum() - 1.0) > tol:
            raise NotAState(f"spectrum sums to {v.sum():.12g}, not 1")
        object.__setattr__(self, "values", tuple(float(x) for x in np.clip(v, 0.0, None)))

    @property
    def dim(self) -> int:
        return len(self.values)

    def array(self) -> np.ndarray:
        return np.array(self.values)

    @classmethod
    def of(cls, state) -> "Spectrum":
        return cls(tuple(psd_eigenvalues(as_matrix(state), "state")))


@dataclass(frozen=True, eq=False)
class GeneratorBasis:
    dim: int
    ops: np.ndarray  # shape (N^2 - 1, N, N)

    def __len__(self):
        return self.ops.shape[0]

    def __iter__(self):
        return iter(self.ops)


@dataclass(frozen=True, eq=False)
class BlochVector:
    dim: int
    coords: np.ndarray

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.coords))

    def unit(self) -> np.ndarray:
        return self.coords / self.norm


@functools.lru_cache(maxsize=None)
def _gell_mann(n: int) -> np.ndarray:
    ops = []
    pairs = [(j, k) for j in range(n) for k in range(j + 1, n)]
    for j, k in pairs:
        m = np.zeros((n, n), dtype=complex)
        m[j, k] = m[k, j] = 1.0
        ops.append(m)
    for j, k in pairs:
        m = np.zeros((n, n), dtype=complex)
        m[j, k] = -1j
        m[k, j] = 1j
        ops.append(m)
    for l in range(1, n):
        d = np.zeros(n)
        d[:l] = 1.0
        d[l] = -l
        ops.append(np.diag(np.sqrt(2.0 / (l * (l + 1))) * d).astype(complex))
    arr = np.array(ops)
    arr.setflags(write=False)
    return arr


def generator_basis(n: int) -> GeneratorBasis:
    """Generalized Gell-Mann matrices for SU(n), ``tr(A_i A_j) = 2 delta_ij``.

    Ordering: symmetric pairs (j < k, lexicographic), antisymmetric pairs in
    the same order, then the n - 1 diagonal generators. For n = 2 this is
    (X, Y, Z).
    """
    if int(n) != n or n < 2:
        raise InvalidDimension(f"need N >= 2, got {n}")
    return GeneratorBasis(int(n), _gell_mann(int(n)))


def _bloch_scale(n: int) -> float:
    return np.sqrt(n * (n - 1) / 2.0)


def to_bloch(state) -> BlochVector:
    rho = as_matrix(state)
    n = rho.shape[0]
    ops = generator_basis(n).ops
    proj = np.einsum("kij,ji->k", ops, rho).real
    return BlochVector(n, proj * n / (2.0 * _bloch_scale(n)))


def from_bloch(r) -> DensityMatrix:
    """Rebuild the state for a Bloch vector; positivity is checked, not assumed."""
    coords = np.asarray(r.coords if isinstance(r, BlochVector) else r, dtype=float)
    n = int(round(np.sqrt(coords.size + 1)))
    if n * n - 1 != coords.size or n < 2:
        raise InvalidDimension(f"{coords.size} coordinates is not N^2 - 1 for any N >= 2")
    ops = generator_basis(n).ops
    mat = (np.eye(n) + _bloch_scale(n) * np.tensordot(coords, ops, axes=1)) / n
    return DensityMatrix(mat)


def purity(state) -> float:
    rho = as_matrix(state)
    return float(np.vdot(rho, rho).real)


def spectrum_values(state) -> np.ndarray:
    """Eigenvalues, ascending."""
    return np.linalg.eigvalsh(check_hermitian(as_matrix(state)))


def iso_spectral(rho, sigma, tol: float | None = None) -> bool:
    """True when the sorted spectra agree entrywise within ``tol`` (default 1e-8)."""
    a, b = as_matrix(rho), as_matrix(sigma)
    if a.shape != b.shape:
        raise DimensionMismatch(f"{a.shape} vs {b.shape}")
    tol = numerics.get().isospectral_tol if tol is None else tol
    return bool(np.max(np.abs(spectrum_values(a) - spectrum_values(b))) <= tol)


def conjugate(state, U) -> np.ndarray:
    rho = as_matrix(state)
    return U @ rho @ U.conj().T
