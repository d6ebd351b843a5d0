"""Timing of the Bures angle against the trace-form Bloch angle."""
from __future__ import annotations

import statistics
import time
from dataclasses import asdict, dataclass

import numpy as np

from ..metrics import bures_angle, theta_angle
from ..sampling import RngStream, haar_unitary, random_state_hs

COLUMNS = ("N", "C_L", "C_Theta", "eta", "rel_se_L", "rel_se_Theta", "batches")


@dataclass
class BenchResult:
    n: int
    c_l: float        # mean seconds per Bures angle
    c_theta: float    # mean seconds per Bloch angle
    eta: float
    rel_se_l: float
    rel_se_theta: float
    batches: int

    def to_dict(self) -> dict:
        return asdict(self)


def _pairs(n: int, count: int, seed: int):
    rng = RngStream(seed, n)
    out = []
    for _ in range(count):
        rho = random_state_hs(n, rng).mat
        U = haar_unitary(n, rng)
        out.append((rho, U @ rho @ U.conj().T))
    return out


def _batch_means(fn, pairs, reps: int, batches: int) -> np.ndarray:
    means = np.empty(batches)
    m = len(pairs)
    clock = time.perf_counter_ns
    for b in range(batches):
        t0 = clock()
        for k in range(reps):
            a, s = pairs[k % m]
            fn(a, s)
        means[b] = (clock() - t0) * 1e-9 / reps
    return means


def median_of_means(samples: np.ndarray, groups: int = 5) -> float:
    parts = np.array_split(np.asarray(samples), min(groups, len(samples)))
    return float(statistics.median(float(p.mean()) for p in parts))


def relative_se(samples: np.ndarray) -> float:
    return float(np.std(samples, ddof=1) / np.sqrt(len(samples)) / np.mean(samples))


def _theta_unchecked(a, b):
    # pairs are iso-spectral by construction; the spectrum check would add an eigensolve
    return theta_angle(a, b, check=False)


def bench_dimension(n: int, seed: int = 0, reps: int = 50, batches: int = 20,
                    max_batches: int = 640, target_rel_se: float = 1e-2, warmup: int = 20) -> BenchResult:
    pairs = _pairs(n, 16, seed)
    for a, s in pairs[:warmup]:
        bures_angle(a, s)
        _theta_unchecked(a, s)
    while True:
        # interleave so drifts in machine load hit both sides alike
        t_l = _batch_means(bures_angle, pairs, reps, batches)
        t_t = _batch_means(_theta_unchecked, pairs, reps, batches)
        se_l, se_t = relative_se(t_l), relative_se(t_t)
        if max(se_l, se_t) <= target_rel_se or batches >= max_batches:
            break
        batches *= 2
    c_l, c_t = median_of_means(t_l), median_of_means(t_t)
    return BenchResult(n, c_l, c_t, c_l / c_t, se_l, se_t, batches)


def exp_complexity_bench(n_list, seed: int = 0, reps: int = 50) -> list[BenchResult]:
    """Cost ratio eta(N) = C(Bures) / C(Bloch angle) on random iso-spectral pairs."""
    return [bench_dimension(int(n), seed, reps) for n in n_list]


def eta_slope(results: list[BenchResult]) -> float:
    """Least-squares slope of eta against N."""
    n = np.array([r.n for r in results], dtype=float)
    eta = np.array([r.eta for r in results])
    return float(np.polyfit(n, eta, 1)[0])
