import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mixedqsl.errors import DimensionMismatch, MaximallyMixed, NotIsoSpectral, NotNormalized
from mixedqsl.metrics import (bures_angle, fubini_study, phi_angle, root_fidelity, theta_angle,
                              theta_angle_bloch)
from mixedqsl.sampling import (RngStream, haar_unitary, random_pure_state, random_state_fixed_spectrum,
                               random_state_hs)
from mixedqsl.states import DensityMatrix

A = DensityMatrix.diagonal([0.25, 0.75])
B = DensityMatrix.diagonal([0.75, 0.25])
UP = DensityMatrix.diagonal([1.0, 0.0])
DOWN = DensityMatrix.diagonal([0.0, 1.0])


def test_root_fidelity_examples():
    assert root_fidelity(A, A) == 1.0
    assert root_fidelity(UP, DOWN) == pytest.approx(0.0, abs=1e-12)
    assert root_fidelity(A, B) == pytest.approx(0.866025, abs=1e-6)
    assert root_fidelity(A, B) == pytest.approx(2 * math.sqrt(0.25 * 0.75), abs=1e-14)


def test_root_fidelity_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        root_fidelity(A, np.eye(3) / 3)


def test_bures_examples(rng):
    rho = random_state_hs(4, rng)
    assert bures_angle(rho, rho) == 0.0
    assert bures_angle(UP, DOWN) == pytest.approx(math.pi / 2)
    assert bures_angle(A, B) == pytest.approx(math.pi / 6, abs=1e-12)
    assert bures_angle(A, B) == pytest.approx(0.523599, abs=1e-6)


def test_bures_commuting_formula(rng):
    g = rng.generator
    for _ in range(20):
        p, q = g.dirichlet(np.ones(4)), g.dirichlet(np.ones(4))
        expected = math.acos(min(1.0, np.sqrt(p * q).sum()))
        assert bures_angle(np.diag(p), np.diag(q)) == pytest.approx(expected, abs=1e-7)


def test_theta_examples(rng):
    rho = random_state_hs(3, rng)
    assert theta_angle(rho, rho) == 0.0
    assert theta_angle(A, B) == pytest.approx(math.pi, abs=1e-14)


def test_theta_pure_qubits_doubles_fubini_study(rng):
    for _ in range(100):
        U = haar_unitary(2, rng)
        psi, phi = U[:, 0], haar_unitary(2, rng)[:, 0]
        rho, sigma = np.outer(psi, psi.conj()), np.outer(phi, phi.conj())
        assert theta_angle(rho, sigma) == pytest.approx(2 * fubini_study(psi, phi), abs=1e-10)


def test_theta_rejects_different_spectra():
    with pytest.raises(NotIsoSpectral):
        theta_angle(A, DensityMatrix.diagonal([0.2, 0.8]))


def test_theta_rejects_maximally_mixed():
    with pytest.raises(MaximallyMixed):
        theta_angle(np.eye(3) / 3, np.eye(3) / 3)


def test_theta_two_routes_agree(rng):
    for k in range(300):
        n = 2 + k % 5
        rho = random_state_hs(n, rng)
        U = haar_unitary(n, rng)
        sigma = U @ rho.mat @ U.conj().T
        assert theta_angle(rho, sigma) == pytest.approx(theta_angle_bloch(rho, sigma), abs=1e-8)


def test_phi_examples(rng):
    rho = random_state_hs(3, rng)
    assert phi_angle(rho, rho) == 0.0
    assert phi_angle(UP, DOWN) == pytest.approx(math.pi / 2)
    assert phi_angle(A, B) == pytest.approx(0.684719, abs=1e-6)
    assert phi_angle(A, B) == pytest.approx(math.acos(math.sqrt(0.375 / 0.625)), abs=1e-14)


def test_phi_rejects_different_spectra():
    with pytest.raises(NotIsoSpectral):
        phi_angle(A, DensityMatrix.diagonal([0.2, 0.8]))


def test_phi_is_fubini_study_for_pure(rng):
    for _ in range(100):
        a, b = random_pure_state(4, rng), random_pure_state(4, rng)
        psi = np.linalg.eigh(a.mat)[1][:, -1]
        phi = np.linalg.eigh(b.mat)[1][:, -1]
        assert phi_angle(a, b) == pytest.approx(fubini_study(psi, phi), abs=1e-10)


def test_fubini_study_examples():
    zero, one = np.array([1, 0]), np.array([0, 1])
    assert fubini_study(zero, zero) == 0.0
    assert fubini_study(zero, one) == pytest.approx(math.pi / 2)
    tilted = np.array([math.cos(math.pi / 8), math.sin(math.pi / 8)])
    assert fubini_study(zero, tilted) == pytest.approx(math.pi / 8, abs=1e-15)


def test_fubini_study_rejects_unnormalised():
    with pytest.raises(NotNormalized):
        fubini_study([1, 1], [1, 0])


def test_small_angles_keep_precision():
    # 1e-9 rad apart: arccos of the rounded cosine would return 0 or ~2e-8
    eps = 1e-9
    psi = np.array([1.0, 0.0])
    phi = np.array([math.cos(eps), math.sin(eps)])
    assert fubini_study(psi, phi) == pytest.approx(eps, rel=1e-6)
    rho, sigma = np.outer(psi, psi), np.outer(phi, phi)
    assert theta_angle(rho, sigma) == pytest.approx(2 * eps, rel=1e-6)
    assert phi_angle(rho, sigma) == pytest.approx(eps, rel=1e-6)


@pytest.mark.parametrize("fn", [bures_angle, theta_angle, phi_angle])
def test_unitary_invariance(fn, rng):
    for k in range(100):
        n = 2 + k % 4
        rho = random_state_hs(n, rng)
        V, W = haar_unitary(n, rng), haar_unitary(n, rng)
        sigma = V @ rho.mat @ V.conj().T
        before = fn(rho, sigma)
        after = fn(W @ rho.mat @ W.conj().T, W @ sigma @ W.conj().T)
        assert after == pytest.approx(before, abs=1e-9)


def test_bures_below_new_angles_for_qubits(rng):
    # L <= Phi on iso-spectral qubit pairs
    for _ in range(200):
        rho = random_state_hs(2, rng)
        V = haar_unitary(2, rng)
        sigma = V @ rho.mat @ V.conj().T
        assert bures_angle(rho, sigma) <= phi_angle(rho, sigma) + 1e-9


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 6), st.integers(0, 2**32 - 1))
def test_angles_in_range(n, seed):
    rng = RngStream(seed, 0)
    lam = rng.generator.dirichlet(np.ones(n))
    rho = random_state_fixed_spectrum(lam, rng)
    sigma = random_state_fixed_spectrum(lam, rng)
    assert 0.0 <= bures_angle(rho, sigma) <= math.pi / 2
    assert 0.0 <= phi_angle(rho, sigma) <= math.pi / 2
    assert 0.0 <= theta_angle(rho, sigma) <= math.pi
