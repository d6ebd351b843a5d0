"""Qubit family: analytic bounds against the numerical pipeline."""
from __future__ import annotations

import math

import numpy as np

from ..dynamics import DEFAULT_GRID_POINTS, bounds, qubit_analytic_bounds, qubit_instance
from ..errors import DomainError
from ..states import purity
from .common import ExperimentRecord

AGREE_TOL = 1e-8
COLUMNS = ("lambda", "theta", "tL", "tTheta", "tPhi", "tTheta_analytic", "tPhi_analytic",
           "tL_analytic", "agree")


def default_lambda_grid(count: int = 19) -> np.ndarray:
    """``count`` points evenly spread over [0.05, 0.95], with 1/2 dropped."""
    grid = np.linspace(0.05, 0.95, count)
    return grid[np.abs(grid - 0.5) > 1e-12]


def default_theta_grid(count: int = 16) -> np.ndarray:
    return np.linspace(0.1, math.pi / 2, count)


def qubit_record(lam: float, theta: float, phase: float = 0.0,
                 grid_points: int = DEFAULT_GRID_POINTS) -> ExperimentRecord:
    rho, sigma, sched = qubit_instance(theta, lam, phase)
    rep = bounds(rho, sigma, sched, grid_points)
    a_theta, a_phi, a_l = qubit_analytic_bounds(theta, lam)
    diff = max(abs(rep.t_theta - a_theta), abs(rep.t_phi - a_phi), abs(rep.t_l - a_l))
    return ExperimentRecord(
        experiment="qubit-curves", n=2, params={"lambda": float(lam), "theta": float(theta)},
        purity=purity(rho), t_l=rep.t_l, t_theta=rep.t_theta, t_phi=rep.t_phi,
        extra={"tTheta_analytic": a_theta, "tPhi_analytic": a_phi, "tL_analytic": a_l,
               "agree": bool(diff <= AGREE_TOL), "max_abs_diff": diff,
               "T": rep.actual_t, "reached": rep.reached_target},
    )


def exp_qubit_curves(lambda_grid, theta_grid, phase: float = 0.0,
                     grid_points: int = DEFAULT_GRID_POINTS) -> list[ExperimentRecord]:
    """Analytic and numeric bounds on every (lambda, theta) grid point.

    Raises:
        DomainError: a lambda equal to 1/2 or outside (0, 1), or theta outside [0, pi/2].
    """
    lambdas = [float(x) for x in lambda_grid]
    for lam in lambdas:
        if not 0.0 < lam < 1.0 or abs(lam - 0.5) < 1e-12:
            raise DomainError(f"lambda must lie in (0, 1) without 1/2, got {lam}")
    return [qubit_record(lam, float(th), phase, grid_points) for lam in lambdas for th in theta_grid]


def symmetry_defect(records: list[ExperimentRecord]) -> float:
    """Largest change of any bound under lambda -> 1 - lambda (pairs present in the grid)."""
    table = {(round(r.params["lambda"], 12), round(r.params["theta"], 12)): r for r in records}
    worst = 0.0
    for (lam, th), r in table.items():
        mirror = table.get((round(1.0 - lam, 12), th))
        if mirror is None:
            continue
        worst = max(worst, abs(r.t_l - mirror.t_l), abs(r.t_theta - mirror.t_theta),
                    abs(r.t_phi - mirror.t_phi))
    return worst
