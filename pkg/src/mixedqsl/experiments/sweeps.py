"""Monte Carlo studies: tightness over random mixed states and its purity dependence."""
from __future__ import annotations

import time

import numpy as np

from ..dynamics import DEFAULT_GRID_POINTS, HamiltonianSchedule, bounds
from ..linalg import hermitian_propagator
from ..sampling import (RngStream, purity_stratified_states, random_hamiltonian,
                        random_pure_state, random_state_hs)
from ..states import purity
from .common import ExperimentRecord, chunks, pearson, run_streams, summarize

TIGHTNESS_COLUMNS = ("N", "sample", "purity", "tL", "tTheta", "tPhi", "tightness", "violation")
PURITY_COLUMNS = ("N", "sample", "purity", "mixedness", "tL", "tTheta", "tPhi", "tightness")

CHUNK = 250          # samples per RNG stream
EVOLUTION_TIME = 1.0
HAMILTONIAN_NORM = 1.0


def _stream_id(n: int, chunk: int, family: int = 0) -> int:
    return family * 10**9 + n * 10**6 + chunk


def _record(experiment: str, n: int, index: int, rho, H, grid_points: int, extra=None) -> ExperimentRecord:
    sched = HamiltonianSchedule.constant(H, EVOLUTION_TIME)
    U = hermitian_propagator(sched.segments[0].H, EVOLUTION_TIME)
    sigma = U @ rho.mat @ U.conj().T
    rep = bounds(rho, sigma, sched, grid_points)
    return ExperimentRecord(experiment, n, {"sample": index}, purity(rho),
                            rep.t_l, rep.t_theta, rep.t_phi, dict(extra or {}))


def _tightness_chunk(task) -> list[ExperimentRecord]:
    seed, n, c, start, stop, grid_points = task
    rng = RngStream(seed, _stream_id(n, c))
    out = []
    for i in range(start, stop):
        rho = random_state_hs(n, rng)
        H = random_hamiltonian(n, rng, norm=HAMILTONIAN_NORM)
        out.append(_record("tightness-sweep", n, i, rho, H, grid_points))
    return out


def _pure_control(seed: int, n: int, count: int, grid_points: int) -> list[ExperimentRecord]:
    rng = RngStream(seed, _stream_id(n, 0, family=1))
    out = []
    for i in range(count):
        rho = random_pure_state(n, rng)
        H = random_hamiltonian(n, rng, norm=HAMILTONIAN_NORM)
        out.append(_record("pure-control", n, i, rho, H, grid_points))
    return out


def exp_tightness_sweep(n_range, samples_per_n: int, seed: int, threads: int = 1,
                        grid_points: int = DEFAULT_GRID_POINTS, pure_control: int = 200):
    """Hilbert-Schmidt states, GUE Hamiltonians of unit norm, evolution time 1.

    Returns (records, summaries) with one summary per N. Each summary also
    carries the median relative gap 1 - tL/tPhi over ``pure_control`` Haar
    pure states, which vanishes when both reduce to the Mandelstam-Tamm bound.
    """
    if samples_per_n < 100:
        raise ValueError("need at least 100 samples per dimension")
    records, summaries = [], []
    for n in n_range:
        t0 = time.perf_counter()
        tasks = [(seed, n, c, a, b, grid_points) for c, (a, b) in enumerate(chunks(samples_per_n, CHUNK))]
        recs = [r for part in run_streams(_tightness_chunk, tasks, threads) for r in part]
        summary = summarize(recs, n)
        if pure_control:
            ctrl = _pure_control(seed, n, pure_control, grid_points)
            summary.pure_control_median_gap = float(np.median([1.0 - r.t_l / r.t_phi for r in ctrl]))
        summary.runtime_s = time.perf_counter() - t0
        records.extend(recs)
        summaries.append(summary)
    return records, summaries


def _purity_chunk(task) -> list[ExperimentRecord]:
    seed, n, c, start, stop, grid_points = task
    rng = RngStream(seed, _stream_id(n, c, family=2))
    states = purity_stratified_states(n, stop - start, rng)
    out = []
    for i, rho in zip(range(start, stop), states):
        H = random_hamiltonian(n, rng, norm=HAMILTONIAN_NORM)
        rec = _record("purity-correlation", n, i, rho, H, grid_points)
        rec.extra["mixedness"] = 1.0 - rec.purity
        out.append(rec)
    return out


def exp_purity_correlation(n: int, samples: int, seed: int, threads: int = 1,
                           grid_points: int = DEFAULT_GRID_POINTS, bins: int = 10):
    """Tightness against purity for purity-stratified states.

    The summary holds the Pearson coefficient of tightness against
    mixedness (1 - purity) and the mean tightness in ``bins`` equal purity
    bins over [1/N, 1], lowest purity first.
    """
    t0 = time.perf_counter()
    tasks = [(seed, n, c, a, b, grid_points) for c, (a, b) in enumerate(chunks(samples, CHUNK))]
    recs = [r for part in run_streams(_purity_chunk, tasks, threads) for r in part]
    summary = summarize(recs, n)
    mix = np.array([r.extra["mixedness"] for r in recs])
    tight = np.array([r.tightness for r in recs])
    summary.pearson_r = pearson(mix, tight)
    edges = np.linspace(1.0 / n, 1.0, bins + 1)
    pur = 1.0 - mix
    idx = np.clip(np.searchsorted(edges, pur, side="right") - 1, 0, bins - 1)
    summary.bin_edges = [float(e) for e in edges]
    summary.bin_mean_tightness = [float(tight[idx == k].mean()) if np.any(idx == k) else None
                                  for k in range(bins)]
    summary.runtime_s = time.perf_counter() - t0
    return recs, summary
