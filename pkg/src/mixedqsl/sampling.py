"""Seeded random unitaries, Hamiltonians and density matrices.

Every sampler takes either an :class:`RngStream` or a ``numpy.random.Generator``.
Streams with the same ``(seed, stream_id)`` replay the same sequence, and
different stream ids are statistically independent (numpy ``SeedSequence``
spawn keys), so parallel workers each own one stream.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .errors import InvalidDimension
from .linalg import check_hermitian
from .states import DensityMatrix, Spectrum


@dataclass
class RngStream:
    seed: int
    stream_id: int = 0
    generator: np.random.Generator = field(init=False, repr=False)

    def __post_init__(self):
        ss = np.random.SeedSequence(entropy=int(self.seed) & (2**64 - 1), spawn_key=(int(self.stream_id),))
        self.generator = np.random.Generator(np.random.PCG64(ss))

    def substream(self, stream_id: int) -> "RngStream":
        return RngStream(self.seed, stream_id)


def _gen(rng) -> np.random.Generator:
    if isinstance(rng, RngStream):
        return rng.generator
    if isinstance(rng, np.random.Generator):
        return rng
    raise TypeError(f"expected RngStream or numpy Generator, got {type(rng).__name__}")


def _check_dim(n: int) -> int:
    if int(n) != n or n < 2:
        raise InvalidDimension(f"need N >= 2, got {n}")
    return int(n)


def ginibre(n: int, rng, cols: int | None = None) -> np.ndarray:
    """Complex Ginibre matrix, entries with E|z|^2 = 1."""
    g = _gen(rng)
    shape = (n, n if cols is None else cols)
    return (g.standard_normal(shape) + 1j * g.standard_normal(shape)) / np.sqrt(2.0)


def haar_unitary(n: int, rng) -> np.ndarray:
    """Haar-distributed unitary: QR of a Ginibre matrix with R's diagonal made positive."""
    n = _check_dim(n)
    q, r = np.linalg.qr(ginibre(n, rng))
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_hamiltonian(n: int, rng, norm: float | None = None) -> np.ndarray:
    """GUE matrix, optionally rescaled so its largest |eigenvalue| equals ``norm``."""
    n = _check_dim(n)
    g = ginibre(n, rng)
    H = 0.5 * (g + g.conj().T)
    if norm is not None:
        H = H * (norm / np.max(np.abs(np.linalg.eigvalsh(H))))
    return H


def random_state_hs(n: int, rng) -> DensityMatrix:
    """Mixed state from the Hilbert-Schmidt measure: G G^dag / tr(G G^dag)."""
    n = _check_dim(n)
    g = ginibre(n, rng)
    rho = g @ g.conj().T
    rho = check_hermitian(rho / np.trace(rho).real)
    return DensityMatrix(rho)


def random_pure_state(n: int, rng) -> DensityMatrix:
    n = _check_dim(n)
    return DensityMatrix.from_ket(haar_unitary(n, rng)[:, 0])


def random_state_fixed_spectrum(spectrum, rng) -> DensityMatrix:
    """``U diag(spectrum) U^dag`` with Haar ``U``."""
    lam = spectrum.array() if isinstance(spectrum, Spectrum) else Spectrum(tuple(spectrum)).array()
    U = haar_unitary(lam.size, rng)
    return DensityMatrix(check_hermitian((U * lam) @ U.conj().T))


def spectrum_with_purity(lam: np.ndarray, target: float) -> np.ndarray:
    """Move a probability vector along a straight line until its purity is ``target``.

    Lower purities mix toward the uniform vector; higher purities sharpen
    toward the vertex of the largest component. Both paths change the purity
    monotonically, so the step is the root of a quadratic.
    """
    lam = np.asarray(lam, dtype=float)
    n = lam.size
    p0 = float(lam @ lam)
    if not 1.0 / n - 1e-12 <= target <= 1.0 + 1e-12:
        raise ValueError(f"purity {target} outside [1/N, 1]")
    if abs(p0 - target) < 1e-15:
        return lam
    if target < p0:
        # purity(s) - 1/N = (1 - s)^2 (p0 - 1/N)
        scale = np.sqrt(max(target - 1.0 / n, 0.0) / (p0 - 1.0 / n))
        out = 1.0 / n + scale * (lam - 1.0 / n)
    else:
        vertex = np.zeros(n)
        vertex[np.argmax(lam)] = 1.0
        d = vertex - lam
        a, b, c = d @ d, 2.0 * lam @ d, p0 - target
        s = (-b + np.sqrt(max(b * b - 4 * a * c, 0.0))) / (2 * a)
        out = lam + min(s, 1.0) * d
    out = np.clip(out, 0.0, None)
    return out / out.sum()


def purity_stratified_states(n: int, count: int, rng) -> list[DensityMatrix]:
    """States whose purities are uniform on [1/N, 1].

    Per draw: target purity ~ U(1/N, 1), Dirichlet(1, ..., 1) spectrum moved
    to that purity with :func:`spectrum_with_purity`, then a Haar rotation.
    """
    n = _check_dim(n)
    g = _gen(rng)
    out = []
    for _ in range(int(count)):
        target = g.uniform(1.0 / n, 1.0)
        lam = spectrum_with_purity(g.dirichlet(np.ones(n)), target)
        U = haar_unitary(n, g)
        out.append(DensityMatrix(check_hermitian((U * lam) @ U.conj().T)))
    return out


class SimplexPoint(NamedTuple):
    lambdas: tuple  # (l1, l2, l3), l3 = 1 - l1 - l2
    i: int
    j: int
    resolution: int

    @property
    def edge(self) -> str:
        """Which boundary of the region the point lies on, if any."""
        i, j, r = self.i, self.j, self.resolution
        if i == 0 and j == 0:
            return "pure-vertex"
        if i == r and j == 0:
            return "half-vertex"
        if i == 0:
            return "l1=l2"
        if i + j == r:
            return "l1=l3"
        if j == 0:
            return "l2=0"
        return "interior"


def qutrit_region1_grid(resolution: int) -> list[SimplexPoint]:
    """Uniform triangular grid on the qutrit spectral region with vertices
    (0, 0, 1), (1/2, 0, 1/2) and (1/3, 1/3, 1/3).

    Point (i, j) is ``A + (i/R)(B - A) + (j/R)(C - A)``. The maximally mixed
    vertex C is excluded. The two edges through C carry a degenerate pair of
    eigenvalues (l1 = l2 and l1 = l3); the edge l2 = 0 does not.
    """
    r = int(resolution)
    if r < 2:
        raise ValueError("resolution must be at least 2")
    pts = []
    for i in range(r + 1):
        for j in range(r + 1 - i):
            if i == 0 and j == r:
                continue
            # exact rationals so edge points are exactly degenerate
            l1 = Fraction(i, 2 * r) + Fraction(j, 3 * r)
            l2 = Fraction(j, 3 * r)
            l3 = 1 - l1 - l2
            pts.append(SimplexPoint((float(l1), float(l2), float(l3)), i, j, r))
    return pts
