import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mixedqsl.errors import InvalidDimension
from mixedqsl.sampling import (RngStream, haar_unitary, purity_stratified_states, qutrit_region1_grid,
                               random_hamiltonian, random_pure_state, random_state_fixed_spectrum,
                               random_state_hs, spectrum_with_purity)
from mixedqsl.states import Spectrum, iso_spectral, purity


def test_same_seed_and_stream_bit_identical():
    a = haar_unitary(4, RngStream(5, 3))
    b = haar_unitary(4, RngStream(5, 3))
    assert np.array_equal(a, b)
    assert not np.array_equal(a, haar_unitary(4, RngStream(5, 4)))
    assert not np.array_equal(a, haar_unitary(4, RngStream(6, 3)))


def test_substream_matches_direct_construction():
    assert np.array_equal(random_hamiltonian(3, RngStream(1).substream(9)),
                          random_hamiltonian(3, RngStream(1, 9)))


def test_rejects_plain_ints():
    with pytest.raises(TypeError):
        haar_unitary(3, 42)


def test_rejects_small_dimension(rng):
    with pytest.raises(InvalidDimension):
        random_state_hs(1, rng)


def test_haar_unitarity(rng):
    for n in (2, 3, 7):
        U = haar_unitary(n, rng)
        assert np.allclose(U.conj().T @ U, np.eye(n), atol=1e-12)


def test_haar_first_moment(rng):
    # |U_00|^2 ~ Beta(1, n - 1), mean 1/n
    n, m = 4, 4000
    vals = np.array([abs(haar_unitary(n, rng)[0, 0]) ** 2 for _ in range(m)])
    se = np.sqrt((n - 1) / (n * n * (n + 1)) / m)
    assert abs(vals.mean() - 1 / n) < 5 * se


def test_hamiltonian_properties(rng):
    H = random_hamiltonian(5, rng)
    assert np.max(np.abs(H - H.conj().T)) <= 1e-12
    Hn = random_hamiltonian(5, rng, norm=2.5)
    assert np.max(np.abs(np.linalg.eigvalsh(Hn))) == pytest.approx(2.5, abs=1e-9)


def test_hamiltonian_mean_eigenvalue_near_zero(rng):
    means = [np.linalg.eigvalsh(random_hamiltonian(4, rng)).mean() for _ in range(2000)]
    assert abs(np.mean(means)) < 0.05


def test_hs_states_are_states(rng):
    for n in (2, 3, 6):
        purities = []
        for _ in range(300):
            rho = random_state_hs(n, rng)
            assert abs(np.trace(rho.mat).real - 1) <= 1e-12
            assert np.linalg.eigvalsh(rho.mat).min() >= -1e-12
            p = purity(rho)
            assert 1 / n < p < 1
            purities.append(p)
        # Hilbert-Schmidt mean purity 2N / (N^2 + 1)
        assert np.mean(purities) == pytest.approx(2 * n / (n * n + 1), rel=0.05)


def test_fixed_spectrum_preserved(rng):
    target = Spectrum((0.5, 0.3, 0.2))
    for _ in range(100):
        rho = random_state_fixed_spectrum(target, rng)
        assert np.max(np.abs(np.sort(np.linalg.eigvalsh(rho.mat))[::-1] - target.array())) <= 1e-10
    a, b = random_state_fixed_spectrum(target, rng), random_state_fixed_spectrum(target, rng)
    assert iso_spectral(a, b)


def test_pure_spectrum_gives_pure_state(rng):
    rho = random_state_fixed_spectrum((1.0, 0.0, 0.0, 0.0), rng)
    assert purity(rho) == pytest.approx(1.0)
    assert purity(random_pure_state(4, rng)) == pytest.approx(1.0)


@settings(max_examples=200, deadline=None)
@given(st.integers(2, 8), st.floats(0.0, 1.0), st.integers(0, 2**32 - 1))
def test_spectrum_with_purity_hits_target(n, u, seed):
    lam = np.random.default_rng(seed).dirichlet(np.ones(n))
    target = 1 / n + u * (1 - 1 / n)
    out = spectrum_with_purity(lam, target)
    assert out.min() >= 0 and abs(out.sum() - 1) < 1e-12
    assert abs(out @ out - target) <= 1e-6


def test_spectrum_with_purity_domain():
    with pytest.raises(ValueError):
        spectrum_with_purity(np.array([0.5, 0.5]), 0.2)


def test_purity_stratified_histogram(rng):
    n, m, bins = 3, 5000, 10
    p = np.array([purity(s) for s in purity_stratified_states(n, m, rng)])
    assert p.min() >= 1 / n - 1e-9 and p.max() <= 1 + 1e-9
    counts, _ = np.histogram(p, bins=np.linspace(1 / n, 1, bins + 1))
    chi2 = ((counts - m / bins) ** 2 / (m / bins)).sum()
    assert chi2 < 27.9  # 99.9% quantile, 9 degrees of freedom


def test_purity_stratified_states_valid(rng):
    for rho in purity_stratified_states(4, 200, rng):
        assert np.linalg.eigvalsh(rho.mat).min() >= -1e-12


def test_region_grid_vertices_and_count():
    pts = qutrit_region1_grid(30)
    assert len(pts) == 31 * 32 // 2 - 1
    lams = {p.lambdas for p in pts}
    assert (0.0, 0.0, 1.0) in lams
    assert (0.5, 0.0, 0.5) in lams
    assert all(abs(a - 1 / 3) > 1e-12 or abs(b - 1 / 3) > 1e-12 for a, b, _ in lams)


def test_region_grid_constraints():
    for p in qutrit_region1_grid(20):
        l1, l2, l3 = p.lambdas
        assert abs(l1 + l2 + l3 - 1) < 1e-12
        assert 0 <= l1 <= 0.5 + 1e-12
        assert l2 <= l1 + 1e-12 and l1 <= l3 + 1e-12


def test_region_grid_quadratic_growth():
    sizes = [len(qutrit_region1_grid(r)) for r in (10, 20, 40)]
    assert sizes == [(r + 1) * (r + 2) // 2 - 1 for r in (10, 20, 40)]


def test_region_grid_edges_are_exactly_degenerate():
    for p in qutrit_region1_grid(30):
        l1, l2, l3 = p.lambdas
        if p.edge == "l1=l2":
            assert l1 == l2
        elif p.edge == "l1=l3":
            assert l1 == l3
        elif p.edge == "l2=0":
            assert l2 == 0.0
