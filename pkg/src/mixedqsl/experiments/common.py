"""Records, summaries and the stream-parallel map shared by all experiments."""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Sequence

import numpy as np

from ..errors import DegenerateData

VIOLATION_TOL = 1e-9
REGIONS = ("L", "Theta", "Phi")


@dataclass
class ExperimentRecord:
    experiment: str
    n: int
    params: dict
    purity: float
    t_l: float
    t_theta: float
    t_phi: float
    extra: dict = field(default_factory=dict)

    @property
    def best_new(self) -> float:
        return max(self.t_theta, self.t_phi)

    @property
    def tightness(self) -> float:
        """1 - tL / max(tTheta, tPhi); NaN when both new bounds vanish."""
        m = self.best_new
        return 1.0 - self.t_l / m if m > 0 else math.nan

    @property
    def violation(self) -> bool:
        return self.t_l - self.best_new > VIOLATION_TOL

    @property
    def region(self) -> str:
        """Largest bound; a tie with tL goes to the new bound."""
        if self.violation:
            return "L"
        return "Theta" if self.t_theta >= self.t_phi else "Phi"

    def flat(self) -> dict:
        out = {"experiment": self.experiment, "N": self.n, "purity": self.purity,
               "tL": self.t_l, "tTheta": self.t_theta, "tPhi": self.t_phi,
               "tightness": self.tightness, "violation": self.violation, "region": self.region}
        out.update(self.params)
        out.update(self.extra)
        return out


@dataclass
class SweepSummary:
    n: int
    samples: int
    violations: int
    violation_fraction: float
    max_relative_excess: float
    mean_tightness: float
    median_tightness: float
    pearson_r: float | None = None
    bin_edges: list | None = None
    bin_mean_tightness: list | None = None
    pure_control_median_gap: float | None = None
    runtime_s: float | None = None

    def to_dict(self) -> dict:
        return asdict(self)


def summarize(records: Sequence[ExperimentRecord], n: int, runtime_s: float | None = None) -> SweepSummary:
    tight = np.array([r.tightness for r in records], dtype=float)
    excess = [r.t_l / r.best_new - 1.0 for r in records if r.violation]
    return SweepSummary(
        n=n,
        samples=len(records),
        violations=len(excess),
        violation_fraction=len(excess) / len(records) if records else 0.0,
        max_relative_excess=max(excess, default=0.0),
        mean_tightness=float(np.nanmean(tight)),
        median_tightness=float(np.nanmedian(tight)),
        runtime_s=runtime_s,
    )


def pearson(xs, ys) -> float:
    """Sample Pearson correlation coefficient.

    Raises:
        DegenerateData: lengths differ, fewer than two points, or a variance is zero.
    """
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    if x.shape != y.shape or x.ndim != 1 or x.size < 2:
        raise DegenerateData("need two equal-length sequences of at least two values")
    dx, dy = x - x.mean(), y - y.mean()
    sx, sy = math.sqrt(dx @ dx), math.sqrt(dy @ dy)
    if sx == 0.0 or sy == 0.0:
        raise DegenerateData("zero variance")
    return float(np.clip((dx @ dy) / (sx * sy), -1.0, 1.0))


def run_streams(worker: Callable, tasks: Sequence, threads: int = 1) -> list:
    """Map ``worker`` over ``tasks`` and return results in task order.

    Each task carries its own stream id, so the output does not depend on
    the number of workers.
    """
    if threads <= 1 or len(tasks) <= 1:
        return [worker(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(worker, tasks))


def chunks(total: int, size: int) -> list[tuple[int, int]]:
    return [(start, min(start + size, total)) for start in range(0, total, size)]
