"""Reproductions of the qubit, qutrit, Monte Carlo and timing studies."""
from .bench import BenchResult, eta_slope, exp_complexity_bench
from .common import ExperimentRecord, SweepSummary, pearson, summarize
from .qubit import exp_qubit_curves, symmetry_defect
from .qutrit import exp_qutrit_simplex
from .sweeps import exp_purity_correlation, exp_tightness_sweep

__all__ = [
    "BenchResult", "ExperimentRecord", "SweepSummary", "eta_slope", "exp_complexity_bench",
    "exp_purity_correlation", "exp_qubit_curves", "exp_qutrit_simplex", "exp_tightness_sweep",
    "pearson", "summarize", "symmetry_defect",
]
