"""Experiment runs: configuration, CSV/JSON/SVG outputs, replay from a sidecar."""
from __future__ import annotations

import csv
import dataclasses
import hashlib
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__, numerics
from .experiments import bench, qubit, qutrit, sweeps
from .experiments.common import REGIONS
from .errors import ParseError
from .matrix_io import load_matrix, matrix_to_json

EXPERIMENTS = ("qubit-curves", "qutrit-simplex", "tightness-sweep", "purity-correlation",
               "complexity-bench")
DEFAULT_N = {
    "tightness-sweep": [3, 4, 5, 6],
    "purity-correlation": [3],
    "complexity-bench": list(range(4, 41, 4)),
}
# fields that do not influence file contents
_NON_REPRODUCIBLE = {"out", "threads", "plot"}


@dataclass
class RunConfig:
    experiment: str
    seed: int = 0
    grid_points: int = 257
    samples: int = 10000
    n: list | None = None
    lambdas: int = 19
    thetas: int = 16
    phase: float = 0.0
    resolution: int = 30
    reps: int = 50
    hamiltonian: str | None = None   # qutrit-simplex: matrix file, default from DEFAULT_SETUP_SEED
    frame: str | None = None         # qutrit-simplex: eigenvector frame file
    tol: float | None = None
    threads: int = 1
    out: str = "results"
    plot: bool = False

    def validate(self) -> "RunConfig":
        if self.experiment not in EXPERIMENTS:
            raise ValueError(f"unknown experiment {self.experiment!r}; choose from {', '.join(EXPERIMENTS)}")
        if self.n is None:
            self.n = list(DEFAULT_N.get(self.experiment, []))
        self.n = [int(x) for x in self.n]
        if any(x < 2 for x in self.n):
            raise ValueError("dimensions must be at least 2")
        checks = [
            (self.grid_points >= 2, "grid points must be at least 2"),
            (self.samples >= 100 or self.experiment not in ("tightness-sweep", "purity-correlation"),
             "need at least 100 samples"),
            (self.lambdas >= 2 and self.thetas >= 1, "grid sizes too small"),
            (self.resolution >= 2, "resolution must be at least 2"),
            (self.reps >= 1 and self.threads >= 1, "reps and threads must be positive"),
            (self.tol is None or self.tol > 0, "tolerance must be positive"),
        ]
        for ok, msg in checks:
            if not ok:
                raise ValueError(msg)
        return self

    def reproducible(self) -> dict:
        d = dataclasses.asdict(self)
        return {k: v for k, v in d.items() if k not in _NON_REPRODUCIBLE}

    def config_hash(self) -> str:
        blob = json.dumps(self.reproducible(), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:16]


@dataclass
class RunResult:
    config: RunConfig
    files: dict
    summary: object
    records: list = field(default_factory=list, repr=False)


def format_value(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        v = float(v)
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return f"{v:.12g}"
    return str(v)


def _banner(cfg: RunConfig) -> str:
    return f"# mixedqsl {__version__} experiment={cfg.experiment} seed={cfg.seed} config_hash={cfg.config_hash()}"


def write_csv(path: Path, columns, rows, cfg: RunConfig) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(_banner(cfg) + "\n")
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(columns)
        for row in rows:
            w.writerow([format_value(row.get(c)) for c in columns])


def read_csv(path) -> list[dict]:
    with open(path) as fh:
        lines = [ln for ln in fh if not ln.startswith("#")]
    return list(csv.DictReader(lines))


def _json_default(o):
    if isinstance(o, (np.floating, np.integer)):
        return o.item()
    if isinstance(o, np.bool_):
        return bool(o)
    raise TypeError(type(o).__name__)


def _clean(obj):
    """Make NaN/inf JSON-safe (null)."""
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (float, np.floating)) and not math.isfinite(float(obj)):
        return None
    return obj


def _qubit(cfg):
    lam = qubit.default_lambda_grid(cfg.lambdas)
    th = qubit.default_theta_grid(cfg.thetas)
    recs = qubit.exp_qubit_curves(lam, th, cfg.phase, cfg.grid_points)
    summary = {
        "records": len(recs),
        "all_agree": all(r.extra["agree"] for r in recs),
        "max_abs_diff": max(r.extra["max_abs_diff"] for r in recs),
        "symmetry_defect": qubit.symmetry_defect(recs),
        "hierarchy_holds": all(r.t_theta >= r.t_phi >= r.t_l - 1e-9 for r in recs),
        "max_theta_error": max(abs(r.t_theta - r.params["theta"]) for r in recs),
    }
    rows = [r.flat() for r in recs]
    return recs, rows, qubit.COLUMNS, summary


def _qutrit(cfg):
    frame, H = qutrit.default_setup()
    if cfg.frame:
        frame = load_matrix(cfg.frame)
    if cfg.hamiltonian:
        H = load_matrix(cfg.hamiltonian)
    recs = qutrit.exp_qutrit_simplex(frame, H, cfg.resolution, cfg.grid_points)
    pure = next(r for r in recs if r.extra["edge"] == "pure-vertex")
    summary = {
        "records": len(recs),
        "frame": matrix_to_json(frame),
        "hamiltonian": matrix_to_json(H),
        "violations": sum(r.violation for r in recs),
        "pure_vertex_tPhi_minus_tL": pure.t_phi - pure.t_l,
        "edge_spread_tTheta": {e: qutrit.edge_spread(recs, e) for e in ("l1=l2", "l1=l3", "l2=0")},
        "region_counts": {k: sum(r.region == k for r in recs) for k in REGIONS},
    }
    return recs, [r.flat() for r in recs], qutrit.COLUMNS, summary


def _tightness(cfg):
    recs, summaries = sweeps.exp_tightness_sweep(cfg.n, cfg.samples, cfg.seed, cfg.threads, cfg.grid_points)
    return recs, [r.flat() for r in recs], sweeps.TIGHTNESS_COLUMNS, [s.to_dict() for s in summaries]


def _purity(cfg):
    if len(cfg.n) != 1:
        raise ValueError("purity-correlation takes a single dimension")
    recs, summary = sweeps.exp_purity_correlation(cfg.n[0], cfg.samples, cfg.seed, cfg.threads, cfg.grid_points)
    return recs, [r.flat() for r in recs], sweeps.PURITY_COLUMNS, summary.to_dict()


def _bench(cfg):
    results = bench.exp_complexity_bench(cfg.n, cfg.seed, cfg.reps)
    rows = [{"N": r.n, "C_L": r.c_l, "C_Theta": r.c_theta, "eta": r.eta, "rel_se_L": r.rel_se_l,
             "rel_se_Theta": r.rel_se_theta, "batches": r.batches} for r in results]
    summary = {"results": [r.to_dict() for r in results],
               "eta_slope": bench.eta_slope(results) if len(results) > 1 else None,
               "eta_min": min(r.eta for r in results)}
    return results, rows, bench.COLUMNS, summary


_RUNNERS = {
    "qubit-curves": _qubit,
    "qutrit-simplex": _qutrit,
    "tightness-sweep": _tightness,
    "purity-correlation": _purity,
    "complexity-bench": _bench,
}


def run_experiment(cfg: RunConfig) -> RunResult:
    """Run one experiment and write ``<name>.csv``, ``<name>.json`` and, with plotting, ``<name>.svg``."""
    cfg.validate()
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    stem = cfg.experiment.replace("-", "_")
    ctx = numerics.override(isospectral_tol=cfg.tol) if cfg.tol else numerics.override()
    with ctx:
        recs, rows, columns, summary = _RUNNERS[cfg.experiment](cfg)
    files = {"csv": str(out / f"{stem}.csv"), "sidecar": str(out / f"{stem}.json")}
    write_csv(Path(files["csv"]), columns, rows, cfg)
    if cfg.plot:
        from . import plotting
        files["svg"] = str(out / f"{stem}.svg")
        getattr(plotting, stem)(recs, files["svg"], _banner(cfg)[2:])
    sidecar = {
        "tool": "mixedqsl", "version": __version__, "experiment": cfg.experiment, "seed": cfg.seed,
        "config": cfg.reproducible(), "config_hash": cfg.config_hash(),
        "files": {k: Path(v).name for k, v in files.items()},
        "summary": _clean(summary),
    }
    Path(files["sidecar"]).write_text(json.dumps(sidecar, indent=2, default=_json_default) + "\n")
    return RunResult(cfg, files, summary, recs)


def config_from_sidecar(path, out: str | None = None) -> RunConfig:
    try:
        data = json.loads(Path(path).read_text())
        cfg = RunConfig(**data["config"])
    except OSError as exc:
        raise ParseError(f"cannot read sidecar {path}: {exc.strerror}") from exc
    except (ValueError, KeyError, TypeError) as exc:
        raise ParseError(f"{path} is not a run sidecar: {exc}") from exc
    cfg.out = out if out is not None else str(Path(path).parent)
    return cfg
