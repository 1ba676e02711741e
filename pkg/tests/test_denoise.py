"""Eigendecomposition, top-K projection, the MSE metric, and the pipeline."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from harmoniq.channel import build_window, identity_window
from harmoniq.dataset import generate
from harmoniq.denoise import (VARIANT_HARMONIQ, VARIANT_NOISY, VARIANT_PROJECTED,
                              PipelineConfig, eigendecompose, mse, project_topk,
                              run_pipeline)
from harmoniq.linalg import random_density_matrix, random_state


def test_eigendecompose_maximally_mixed():
    d = 8
    dec = eigendecompose(np.eye(d) / d)
    np.testing.assert_allclose(dec.eigenvalues, np.full(d, 1.0 / d), atol=1e-12)


def test_eigendecompose_rank_one():
    rng = np.random.default_rng(0)
    psi = random_state(8, rng)
    dec = eigendecompose(np.outer(psi, psi.conj()))
    assert abs(dec.eigenvalues[0] - 1.0) < 1e-12
    assert np.all(np.abs(dec.eigenvalues[1:]) < 1e-12)
    assert abs(abs(np.vdot(dec.eigenvectors[:, 0], psi)) - 1.0) < 1e-10


def test_eigendecompose_reconstruction():
    rng = np.random.default_rng(1)
    rho = random_density_matrix(16, rng)
    dec = eigendecompose(rho)
    recon = (dec.eigenvectors * dec.eigenvalues) @ dec.eigenvectors.conj().T
    np.testing.assert_allclose(recon, rho, atol=1e-10)
    gram = dec.eigenvectors.conj().T @ dec.eigenvectors
    assert np.max(np.abs(gram - np.eye(16))) < 1e-10


def test_eigendecompose_descending():
    rng = np.random.default_rng(2)
    dec = eigendecompose(random_density_matrix(12, rng))
    assert np.all(np.diff(dec.eigenvalues) <= 1e-15)


def test_eigendecompose_rejects_non_hermitian():
    bad = np.array([[1.0, 1.0], [0.0, 1.0]], dtype=complex)
    with pytest.raises(ValueError):
        eigendecompose(bad)


def test_eigendecompose_deterministic_and_phase_fixed():
    rng = np.random.default_rng(3)
    rho = random_density_matrix(8, rng)
    a = eigendecompose(rho)
    b = eigendecompose(rho.copy())
    np.testing.assert_array_equal(a.eigenvalues, b.eigenvalues)
    np.testing.assert_array_equal(a.eigenvectors, b.eigenvectors)
    for j in range(8):
        col = a.eigenvectors[:, j]
        lead = col[np.argmax(np.abs(col))]
        assert lead.real > 0 and abs(lead.imag) < 1e-12


def test_project_full_space_identity():
    rng = np.random.default_rng(4)
    rho = random_density_matrix(8, rng)
    dec = eigendecompose(rho)
    psi = random_state(8, rng)
    np.testing.assert_allclose(project_topk(dec, psi, 8), psi, atol=1e-10)


def test_project_leading_eigenvector_fixed_point():
    rng = np.random.default_rng(5)
    dec = eigendecompose(random_density_matrix(8, rng))
    v1 = dec.eigenvectors[:, 0]
    np.testing.assert_allclose(project_topk(dec, v1, 1), v1, atol=1e-10)


def test_project_orthogonal_gives_zero_and_flags():
    dec = eigendecompose(np.diag([0.7, 0.3, 0.0, 0.0]).astype(complex))
    psi = np.array([0, 0, 1.0, 0], dtype=complex)
    raw = project_topk(dec, psi, 2, renormalize=False)
    assert np.max(np.abs(raw)) < 1e-12
    renorm = project_topk(dec, psi, 2, renormalize=True)
    assert np.max(np.abs(renorm)) == 0.0
    report = mse(renorm[None, :], psi[None, :], flagged=(0,))
    assert report.flagged == (0,)


def test_projection_idempotent_raw():
    rng = np.random.default_rng(6)
    dec = eigendecompose(random_density_matrix(16, rng))
    psi = random_state(16, rng)
    once = project_topk(dec, psi, 5, renormalize=False)
    twice = project_topk(dec, once, 5, renormalize=False)
    np.testing.assert_allclose(once, twice, atol=1e-12)


def test_projection_pythagoras():
    rng = np.random.default_rng(7)
    dec = eigendecompose(random_density_matrix(16, rng))
    psi = random_state(16, rng)
    raw = project_topk(dec, psi, 4, renormalize=False)
    resid = psi - raw
    total = np.linalg.norm(raw) ** 2 + np.linalg.norm(resid) ** 2
    assert abs(total - 1.0) < 1e-10


def test_project_k_range():
    dec = eigendecompose(np.eye(4) / 4)
    psi = np.array([1.0, 0, 0, 0], dtype=complex)
    with pytest.raises(ValueError):
        project_topk(dec, psi, 0)
    with pytest.raises(ValueError):
        project_topk(dec, psi, 5)


# -- metric ---------------------------------------------------------------------

def test_mse_identical():
    v = np.eye(4, dtype=complex)[:2]
    assert mse(v, v).mse == 0.0


def test_mse_orthogonal_saturation():
    a = np.array([[1.0, 0.0]], dtype=complex)
    b = np.array([[0.0, 1.0]], dtype=complex)
    report = mse(a, b)
    assert abs(report.per_sample[0] - 2.0) < 1e-15


def test_mse_antipodal():
    a = np.array([[1.0, 0.0]], dtype=complex)
    report = mse(a, -a)
    assert abs(report.mse - 4.0) < 1e-15


def test_mse_length_mismatch():
    with pytest.raises(ValueError):
        mse(np.eye(3, dtype=complex), np.eye(4, dtype=complex))


def test_report_mean_consistency():
    rng = np.random.default_rng(8)
    a = np.stack([random_state(8, rng) for _ in range(5)])
    b = np.stack([random_state(8, rng) for _ in range(5)])
    report = mse(a, b)
    assert abs(report.mse - report.per_sample.mean()) < 1e-12
    assert 0.0 <= report.mse <= 4.0


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 10_000))
def test_mse_overlap_identity(seed):
    rng = np.random.default_rng(seed)
    a, b = random_state(8, rng), random_state(8, rng)
    report = mse(a[None, :], b[None, :])
    identity = 2.0 - 2.0 * np.real(np.vdot(a, b).conjugate())
    # <a, b> ordering does not matter for the real part
    assert abs(report.per_sample[0] - identity) < 1e-12


# -- pipeline ---------------------------------------------------------------------

def test_pipeline_zero_noise_full_rank_projection():
    # rank of the centered clean density matrix is m - 1 = 3 = K
    ds = generate(64, 4, 0.0, seed=20)
    result = run_pipeline(ds, identity_window(64), k=3)
    assert result.noisy.mse < 1e-20
    assert result.projected.mse < 1e-12
    assert result.harmoniq.mse < 1e-12


def test_pipeline_variant_labels_and_flags():
    ds = generate(64, 6, 0.1, seed=21)
    result = run_pipeline(ds, build_window(6), k=3)
    assert result.noisy.variant == VARIANT_NOISY
    assert result.projected.variant == VARIANT_PROJECTED
    assert result.harmoniq.variant == VARIANT_HARMONIQ
    assert result.projected.flagged == ()
    assert all(r.per_sample.shape == (6,) for r in result.reports())


def test_pipeline_without_window():
    ds = generate(64, 4, 0.1, seed=22)
    result = run_pipeline(ds, None, k=2)
    assert result.harmoniq is None
    assert len(result.reports()) == 2


def test_pipeline_global_phase_robust():
    ds = generate(64, 5, 0.2, seed=23)
    base = run_pipeline(ds, build_window(6), k=3)
    phase = np.exp(0.37j)
    rotated = type(ds)(ds.d, ds.m, ds.sigma, ds.atoms, ds.atom_points, ds.coefficients,
                       phase * ds.clean, phase * ds.noisy, ds.seed)
    rot = run_pipeline(rotated, build_window(6), k=3)
    for r0, r1 in zip(base.reports(), rot.reports()):
        assert abs(r0.mse - r1.mse) < 1e-10


def test_pipeline_stochastic_backend():
    ds = generate(64, 5, 0.1, seed=24)
    cfg = PipelineConfig(backend="stochastic", shots=2000)
    rng = np.random.default_rng(25)
    result = run_pipeline(ds, build_window(6), k=3, cfg=cfg, rng=rng)
    assert result.harmoniq.mse >= 0.0
    with pytest.raises(ValueError):
        run_pipeline(ds, build_window(6), k=3, cfg=cfg, rng=None)


def test_pipeline_renormalize_off():
    ds = generate(64, 5, 0.3, seed=26)
    cfg = PipelineConfig(renormalize=False)
    result = run_pipeline(ds, build_window(6), k=3, cfg=cfg)
    # raw projections of unit vectors cannot exceed unit norm, so error <= 4
    assert 0.0 <= result.projected.mse <= 4.0
