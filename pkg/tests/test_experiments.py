import math

import numpy as np
import pytest

from mixedqsl.errors import DegenerateData, DomainError
from mixedqsl.experiments import (ExperimentRecord, eta_slope, exp_complexity_bench, exp_purity_correlation,
                                  exp_qubit_curves, exp_qutrit_simplex, exp_tightness_sweep, pearson,
                                  summarize, symmetry_defect)
from mixedqsl.experiments.bench import BenchResult, median_of_means
from mixedqsl.experiments.qubit import default_lambda_grid, default_theta_grid
from mixedqsl.experiments.qutrit import default_setup, edge_spread


def _rec(t_l, t_theta, t_phi):
    return ExperimentRecord("x", 3, {}, 0.5, t_l, t_theta, t_phi)


def test_pearson_examples():
    xs = np.arange(10.0)
    assert pearson(xs, 2 * xs + 1) == pytest.approx(1.0)
    assert pearson(xs, -xs) == pytest.approx(-1.0)
    assert pearson((1, 2, 3), (1, 3, 2)) == pytest.approx(0.5)


def test_pearson_degenerate():
    with pytest.raises(DegenerateData):
        pearson((1, 1, 1), (1, 2, 3))
    with pytest.raises(DegenerateData):
        pearson((1,), (2,))
    with pytest.raises(DegenerateData):
        pearson((1, 2), (1, 2, 3))


def test_record_tightness_and_region():
    r = _rec(0.5, 1.0, 0.8)
    assert r.tightness == pytest.approx(0.5)
    assert r.region == "Theta" and not r.violation
    assert _rec(0.5, 0.6, 0.8).region == "Phi"
    assert _rec(0.9, 0.6, 0.8).region == "L"
    assert _rec(0.9, 0.6, 0.8).violation
    # round-off ties are not violations
    assert _rec(0.8 + 1e-12, 0.6, 0.8).region == "Phi"
    assert math.isnan(_rec(0.0, 0.0, 0.0).tightness)


def test_summarize_counts():
    recs = [_rec(0.5, 1.0, 0.8), _rec(1.02, 1.0, 0.8), _rec(0.1, 0.2, 0.3), _rec(0.3, 0.2, 0.25)]
    s = summarize(recs, 3)
    assert s.samples == 4 and s.violations == 2
    assert s.violation_fraction == 0.5
    assert s.max_relative_excess == pytest.approx(0.2)
    assert 0 <= s.violation_fraction <= 1


def test_qubit_grid_excludes_half():
    lam = default_lambda_grid(19)
    assert len(lam) == 18 and not np.any(np.isclose(lam, 0.5))
    assert default_theta_grid(16)[-1] == pytest.approx(math.pi / 2)


def test_qubit_curves_small():
    lam = [0.1, 0.3, 0.7, 0.9]
    recs = exp_qubit_curves(lam, [0.2, 0.9, math.pi / 2])
    assert len(recs) == 12
    assert all(r.extra["agree"] for r in recs)
    assert symmetry_defect(recs) <= 1e-9
    for r in recs:
        assert r.t_theta >= r.t_phi >= r.t_l - 1e-9
        if r.params["theta"] == math.pi / 2:
            assert r.t_theta == pytest.approx(math.pi / 2, abs=1e-9)


def test_qubit_curves_domain():
    with pytest.raises(DomainError):
        exp_qubit_curves([0.5], [0.3])


def test_qutrit_small_grid():
    frame, H = default_setup()
    recs = exp_qutrit_simplex(frame, H, resolution=6)
    assert len(recs) == 7 * 8 // 2 - 1
    assert all(r.best_new >= r.t_l - 1e-9 for r in recs)
    pure = next(r for r in recs if r.extra["edge"] == "pure-vertex")
    assert abs(pure.t_phi - pure.t_l) <= 1e-8
    assert pure.region == "Phi"
    for edge in ("l1=l2", "l1=l3"):
        assert edge_spread(recs, edge) <= 1e-8
    assert {r.region for r in recs} <= {"L", "Theta", "Phi"}


def test_qutrit_rejects_non_unitary_frame():
    _, H = default_setup()
    with pytest.raises(ValueError):
        exp_qutrit_simplex(np.ones((3, 3)), H, resolution=4)


def test_tightness_sweep_small_and_deterministic():
    recs, summaries = exp_tightness_sweep([3], 300, seed=11, pure_control=20)
    assert len(recs) == 300 and len(summaries) == 1
    s = summaries[0]
    assert 0 <= s.violation_fraction <= 1
    assert s.pure_control_median_gap <= 1e-6
    again, _ = exp_tightness_sweep([3], 300, seed=11, pure_control=0)
    assert [r.t_l for r in recs] == [r.t_l for r in again]
    for r in recs:
        assert max(r.t_l, r.t_theta, r.t_phi) <= 1.0 + 1e-6


def test_tightness_sweep_independent_of_workers():
    a, _ = exp_tightness_sweep([3], 500, seed=2, threads=1, pure_control=0)
    b, _ = exp_tightness_sweep([3], 500, seed=2, threads=2, pure_control=0)
    assert [(r.t_l, r.t_theta, r.t_phi) for r in a] == [(r.t_l, r.t_theta, r.t_phi) for r in b]


def test_tightness_sweep_minimum_samples():
    with pytest.raises(ValueError):
        exp_tightness_sweep([3], 50, seed=0)


def test_purity_correlation_small():
    recs, s = exp_purity_correlation(3, 600, seed=4)
    assert len(recs) == 600
    assert -1 <= s.pearson_r <= 1 and s.pearson_r > 0
    assert len(s.bin_mean_tightness) == 10


def test_bench_small():
    res = exp_complexity_bench([4, 8], seed=0, reps=10)
    assert [r.n for r in res] == [4, 8]
    for r in res:
        assert r.c_l > 0 and r.c_theta > 0
        assert r.eta == pytest.approx(r.c_l / r.c_theta)


def test_eta_slope_and_median_of_means():
    res = [BenchResult(n, 1.0, 1.0, 1.0 + 0.1 * n, 0, 0, 1) for n in (4, 8, 12)]
    assert eta_slope(res) == pytest.approx(0.1)
    assert median_of_means(np.array([1.0, 1.0, 5.0, 1.0, 1.0])) == 1.0
