"""Unitary propagation, speed functionals and the speed-limit bounds.

For a path rho_t = U_t rho U_t^dag generated by H_t the instantaneous speeds are

    q_theta = sqrt(2 X / (tr[rho_t^2] - 1/N))
    q_phi   = sqrt(X / tr[rho_t^2])
    delta_e = sqrt(tr[rho_t H^2] - tr[rho_t H]^2)
    mean_e  = tr[rho_t H] - (ground energy of H)

with X = tr[rho_t^2 H^2 - (rho_t H)^2] = ||[rho_t, H]||_F^2 / 2. Bounds divide a
distance by the time average of the matching speed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator, NamedTuple, Sequence

import numpy as np

from . import numerics
from .errors import DimensionMismatch, DomainError, MaximallyMixed, NotIsoSpectral
from .linalg import EigenDecomposition, check_hermitian, hermitian_eig, propagators
from .metrics import bures_angle, phi_angle, theta_angle
from .states import DensityMatrix, as_matrix, iso_spectral

DENOMINATOR_STD = "std"  # Mandelstam-Tamm: Delta E
DENOMINATOR_MIN = "min"  # min(E, Delta E)
DEFAULT_GRID_POINTS = 257


@dataclass(frozen=True, eq=False)
class Segment:
    duration: float
    H: np.ndarray
    eig: EigenDecomposition = field(repr=False)

    @property
    def ground_energy(self) -> float:
        return float(self.eig.values[0])


@dataclass(frozen=True, eq=False)
class HamiltonianSchedule:
    """Piecewise-constant Hamiltonian; a constant schedule has one segment."""

    segments: tuple

    def __post_init__(self):
        if not self.segments:
            raise ValueError("schedule needs at least one segment")
        dims = {s.H.shape[0] for s in self.segments}
        if len(dims) != 1:
            raise DimensionMismatch(f"segments have different dimensions {sorted(dims)}")

    @classmethod
    def constant(cls, H, duration: float) -> "HamiltonianSchedule":
        return cls.piecewise([(duration, H)])

    @classmethod
    def piecewise(cls, pieces: Sequence) -> "HamiltonianSchedule":
        segs = []
        for duration, H in pieces:
            duration = float(duration)
            if not duration > 0 or not math.isfinite(duration):
                raise ValueError(f"segment duration must be positive, got {duration}")
            H = check_hermitian(H)
            segs.append(Segment(duration, H, hermitian_eig(H)))
        return cls(tuple(segs))

    @property
    def dim(self) -> int:
        return self.segments[0].H.shape[0]

    @property
    def kind(self) -> str:
        return "constant" if len(self.segments) == 1 else "piecewise-constant"

    @property
    def total_duration(self) -> float:
        return float(sum(s.duration for s in self.segments))


@dataclass(frozen=True, eq=False)
class EvolutionPath:
    """Grid trajectory. Adjacent segments share their boundary grid index."""

    times: np.ndarray
    states: np.ndarray
    unitaries: np.ndarray
    segment_ranges: tuple  # (start, stop) index ranges, stop exclusive

    def __len__(self):
        return self.times.size

    def state(self, k: int) -> DensityMatrix:
        return DensityMatrix(self.states[k])

    @property
    def final_state(self) -> np.ndarray:
        return self.states[-1]


def evolve(rho0, sched: HamiltonianSchedule, grid_points: int = DEFAULT_GRID_POINTS) -> EvolutionPath:
    """Propagate ``rho0`` exactly through each segment on a uniform grid.

    ``grid_points`` counts the points per segment, endpoints included.
    """
    rho = as_matrix(rho0)
    if rho.shape[0] != sched.dim:
        raise DimensionMismatch(f"state is {rho.shape[0]}-dimensional, Hamiltonian {sched.dim}")
    if grid_points < 2:
        raise ValueError("grid_points must be at least 2")
    times, unitaries, ranges = [], [], []
    U0 = np.eye(sched.dim, dtype=complex)
    t0 = 0.0
    start = 0
    for i, seg in enumerate(sched.segments):
        local = np.linspace(0.0, seg.duration, grid_points)
        Us = propagators(seg.eig, local) @ U0
        if i == 0:
            times.append(t0 + local)
            unitaries.append(Us)
        else:
            times.append(t0 + local[1:])
            unitaries.append(Us[1:])
        ranges.append((start, start + grid_points))
        start += grid_points - 1
        t0 += seg.duration
        U0 = Us[-1]
    Us = np.concatenate(unitaries)
    states = Us @ rho @ np.conj(np.swapaxes(Us, 1, 2))
    return EvolutionPath(np.concatenate(times), states, Us, tuple(ranges))


class SpeedSample(NamedTuple):
    t: float
    q_theta: float
    q_phi: float
    delta_e: float
    mean_e: float
    segment: int


@dataclass(frozen=True, eq=False)
class SpeedSamples:
    times: np.ndarray
    segment: np.ndarray
    q_theta: np.ndarray
    q_phi: np.ndarray
    delta_e: np.ndarray
    mean_e: np.ndarray

    def __len__(self):
        return self.times.size

    def __iter__(self) -> Iterator[SpeedSample]:
        for row in zip(self.times, self.q_theta, self.q_phi, self.delta_e, self.mean_e, self.segment):
            yield SpeedSample(*(float(x) for x in row[:5]), int(row[5]))


def speed_terms(states: np.ndarray, H: np.ndarray, ground_energy: float):
    """Vectorised integrands for a stack of states under one Hamiltonian.

    Returns (q_theta, q_phi, delta_e, mean_e) arrays; q_theta is NaN where a
    state is maximally mixed.
    """
    states = np.asarray(states)
    single = states.ndim == 2
    if single:
        states = states[None]
    n = H.shape[0]
    comm = states @ H - H @ states
    x = 0.5 * np.einsum("kij,kij->k", comm, comm.conj()).real
    pur = np.einsum("kij,kij->k", states, states.conj()).real
    eye = np.eye(n) / n
    excess = np.einsum("kij,kij->k", states - eye, (states - eye).conj()).real
    e1 = np.einsum("kij,ji->k", states, H).real
    e2 = np.einsum("kij,ji->k", states, H @ H).real
    with np.errstate(divide="ignore", invalid="ignore"):
        q_theta = np.where(excess >= numerics.get().mixed_tol, np.sqrt(2.0 * x / excess), np.nan)
    q_phi = np.sqrt(x / pur)
    delta_e = np.sqrt(np.clip(e2 - e1 ** 2, 0.0, None))
    mean_e = e1 - ground_energy
    out = (q_theta, q_phi, delta_e, mean_e)
    return tuple(float(v[0]) for v in out) if single else out


def speed_samples(path: EvolutionPath, sched: HamiltonianSchedule) -> SpeedSamples:
    """Evaluate all four integrands at every grid point of every segment.

    Raises:
        MaximallyMixed: if some state on the path is maximally mixed.
    """
    if len(path.segment_ranges) != len(sched.segments):
        raise DimensionMismatch("path and schedule have different segment counts")
    cols = {k: [] for k in ("times", "segment", "q_theta", "q_phi", "delta_e", "mean_e")}
    for i, ((a, b), seg) in enumerate(zip(path.segment_ranges, sched.segments)):
        qt, qp, de, me = speed_terms(path.states[a:b], seg.H, seg.ground_energy)
        if np.any(np.isnan(qt)):
            raise MaximallyMixed("q_theta undefined: the state is maximally mixed")
        cols["times"].append(path.times[a:b])
        cols["segment"].append(np.full(b - a, i))
        for k, v in zip(("q_theta", "q_phi", "delta_e", "mean_e"), (qt, qp, de, me)):
            cols[k].append(v)
    return SpeedSamples(**{k: np.concatenate(v) for k, v in cols.items()})


class TimeAverages(NamedTuple):
    q_theta: float
    q_phi: float
    delta_e: float
    mean_e: float


def _trapezoid(y: np.ndarray, t: np.ndarray) -> float:
    return float(np.sum(0.5 * (y[1:] + y[:-1]) * np.diff(t)))


def time_average(samples: SpeedSamples, sched: HamiltonianSchedule) -> TimeAverages:
    """Composite trapezoid per segment, summed and divided by the total duration."""
    if len(samples) < 2:
        raise ValueError("need at least two samples to integrate")
    total = sched.total_duration
    sums = []
    for name in TimeAverages._fields:
        y = getattr(samples, name)
        acc = 0.0
        for i in range(len(sched.segments)):
            m = samples.segment == i
            acc += _trapezoid(y[m], samples.times[m])
        sums.append(acc / total)
    return TimeAverages(*sums)


@dataclass(frozen=True)
class BoundReport:
    n: int
    actual_t: float
    L: float
    Theta: float | None
    Phi: float | None
    q_theta: float
    q_phi: float
    delta_e: float
    mean_e: float
    q_l_denom: float
    t_l: float
    t_theta: float | None
    t_phi: float | None
    t_unified: float
    denominator: str = DENOMINATOR_STD
    unbounded: tuple = ()
    reached_target: bool | None = None

    CSV_COLUMNS = ("N", "T", "L", "Theta", "Phi", "Q_L_denom", "Q_Theta", "Q_Phi",
                   "tL", "tTheta", "tPhi", "tUnified")

    @property
    def isospectral(self) -> bool:
        return self.Theta is not None

    def to_dict(self) -> dict:
        def val(x):
            return None if x is None or not math.isfinite(x) else float(x)
        return {
            "N": self.n, "T": val(self.actual_t),
            "L": val(self.L), "Theta": val(self.Theta), "Phi": val(self.Phi),
            "Q_L_denom": val(self.q_l_denom), "Q_Theta": val(self.q_theta), "Q_Phi": val(self.q_phi),
            "deltaE": val(self.delta_e), "meanE": val(self.mean_e),
            "tL": val(self.t_l), "tTheta": val(self.t_theta), "tPhi": val(self.t_phi),
            "tUnified": val(self.t_unified),
            "denominator": self.denominator,
            "unbounded": list(self.unbounded),
            "reachedTarget": self.reached_target,
        }

    def csv_row(self) -> list:
        d = self.to_dict()
        return [d[c] for c in self.CSV_COLUMNS]


def _ratio(distance: float, speed: float, name: str, unbounded: list) -> float:
    if distance == 0.0:
        return 0.0
    if speed < numerics.get().denominator_tol:
        unbounded.append(name)
        return math.inf
    return distance / speed


def bures_denominator(avg: TimeAverages, denominator: str = DENOMINATOR_STD) -> float:
    if denominator == DENOMINATOR_STD:
        return avg.delta_e
    if denominator == DENOMINATOR_MIN:
        return min(avg.mean_e, avg.delta_e)
    raise ValueError(f"unknown denominator policy {denominator!r}")


def bounds(rho, sigma, sched: HamiltonianSchedule, grid_points: int = DEFAULT_GRID_POINTS, *,
           denominator: str = DENOMINATOR_STD, require_isospectral: bool = True) -> BoundReport:
    """Bures, Bloch-angle and phi-angle speed limits for going from rho to sigma.

    Args:
        rho, sigma: initial and target states.
        sched: Hamiltonian driving the evolution; speeds are time averages
            over its whole duration.
        grid_points: quadrature points per schedule segment.
        denominator: ``"std"`` divides the Bures angle by the averaged energy
            standard deviation (Mandelstam-Tamm); ``"min"`` uses
            ``min(E, Delta E)``. The ``E`` branch is not a valid lower bound for
            targets short of orthogonal, so ``"std"`` is the default.
        require_isospectral: when False, a pair with different spectra yields
            a report with only the Bures part instead of raising.

    Raises:
        NotIsoSpectral: pair not unitarily connected and ``require_isospectral``.
        MaximallyMixed: rho is the maximally mixed state.
    """
    a, b = as_matrix(rho), as_matrix(sigma)
    if a.shape != b.shape:
        raise DimensionMismatch(f"states have shapes {a.shape} and {b.shape}")
    iso = iso_spectral(a, b)
    if not iso and require_isospectral:
        raise NotIsoSpectral("rho and sigma have different spectra")
    path = evolve(a, sched, grid_points)
    avg = time_average(speed_samples(path, sched), sched)
    unbounded: list = []
    L = bures_angle(a, b)
    q_l = bures_denominator(avg, denominator)
    t_l = _ratio(L, q_l, "tL", unbounded)
    Theta = Phi = t_theta = t_phi = None
    if iso:
        Theta = theta_angle(a, b, check=False)
        Phi = phi_angle(a, b, check=False)
        t_theta = _ratio(Theta, avg.q_theta, "tTheta", unbounded)
        t_phi = _ratio(Phi, avg.q_phi, "tPhi", unbounded)
    t_unified = max(t for t in (t_l, t_theta, t_phi) if t is not None)
    reached = bool(np.linalg.norm(path.final_state - b) <= 1e-8)
    return BoundReport(
        n=a.shape[0], actual_t=sched.total_duration, L=L, Theta=Theta, Phi=Phi,
        q_theta=avg.q_theta, q_phi=avg.q_phi, delta_e=avg.delta_e, mean_e=avg.mean_e,
        q_l_denom=q_l, t_l=t_l, t_theta=t_theta, t_phi=t_phi, t_unified=t_unified,
        denominator=denominator, unbounded=tuple(unbounded), reached_target=reached,
    )


# --- analytic qubit family -------------------------------------------------

def _qubit_k(lam: float) -> float:
    if not 0.0 <= lam <= 1.0:
        raise DomainError(f"eigenvalue must lie in [0, 1], got {lam}")
    k = 1.0 - 2.0 * lam
    if abs(k) < 1e-12:
        raise DomainError("lambda = 1/2 is the maximally mixed qubit")
    return k


def qubit_hamiltonian(phase: float = 0.0) -> np.ndarray:
    """``e^{i phase} |r1><r2| + h.c.`` in the eigenbasis (r1, r2) of rho."""
    z = np.exp(1j * phase)
    return np.array([[0.0, z], [np.conj(z), 0.0]])


def qubit_instance(theta: float, lam: float, phase: float = 0.0):
    """(rho, sigma, schedule) for the qubit family at Fubini-Study angle ``theta``.

    rho = diag(lam, 1 - lam); sigma is rho evolved for time theta under
    :func:`qubit_hamiltonian`. For theta = 0 the schedule runs one full period
    (t = pi) so it still ends on sigma = rho.
    """
    if not 0.0 <= theta <= math.pi / 2 + 1e-12:
        raise DomainError(f"theta must lie in [0, pi/2], got {theta}")
    rho = DensityMatrix.diagonal([lam, 1.0 - lam])
    H = qubit_hamiltonian(phase)
    T = theta if theta > 0 else math.pi
    sched = HamiltonianSchedule.constant(H, T)
    U = propagators(sched.segments[0].eig, [theta])[0]
    sigma = DensityMatrix(U @ rho.mat @ U.conj().T)
    return rho, sigma, sched


def qubit_analytic_bounds(theta: float, lam: float) -> tuple[float, float, float]:
    """Closed-form (tTheta, tPhi, tL) for the qubit family.

    tTheta = theta; tPhi = Phi / Q_Phi with
    cos^2 Phi = (1 + k^2 cos 2theta) / (1 + k^2) and Q_Phi = sqrt(2k^2 / (1 + k^2));
    tL = arccos(F+ + F-) where
    F+- = sqrt(1 + k^2 cos 2theta +- 2k cos theta sqrt(1 - k^2 sin^2 theta)) / 2,
    k = 1 - 2 lam. Both energy denominators equal 1 for this Hamiltonian.
    """
    k = _qubit_k(lam)
    if theta == 0.0:
        return 0.0, 0.0, 0.0
    k2 = k * k
    c2, c, s = math.cos(2 * theta), math.cos(theta), math.sin(theta)
    q_phi = math.sqrt(2 * k2 / (1 + k2))
    phi = math.atan2(q_phi * s, math.sqrt(max((1 + k2 * c2) / (1 + k2), 0.0)))
    root = math.sqrt(max(1 - k2 * s * s, 0.0))
    f_plus = 0.5 * math.sqrt(max(1 + k2 * c2 + 2 * k * c * root, 0.0))
    f_minus = 0.5 * math.sqrt(max(1 + k2 * c2 - 2 * k * c * root, 0.0))
    t_l = math.acos(min(f_plus + f_minus, 1.0))
    return theta, phi / q_phi, t_l


def qubit_tphi_printed(theta: float, lam: float) -> float:
    """The tPhi expression with (1 - k^2) in place of (1 + k^2).

    Kept to show that this variant disagrees with direct evaluation of the
    phi-angle bound; NaN where its arccos argument exceeds 1.
    """
    k = _qubit_k(lam)
    k2 = k * k
    if k2 >= 1.0:
        return math.nan
    arg = (1 + k2 * math.cos(2 * theta)) / (1 - k2)
    if arg < 0 or arg > 1 + 1e-12:
        return math.nan
    return math.acos(min(math.sqrt(arg), 1.0)) * math.sqrt((1 - k2) / (2 * k2))
