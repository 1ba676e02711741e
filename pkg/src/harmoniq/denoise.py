"""Spectral truncation denoising: eigenbasis projection and its MSE metric.

This is the classical dense stand-in for the downstream spectral
subroutine: diagonalize the (augmented) data density matrix, project each
encoded sample onto the span of the K leading eigenvectors, and score
against reference states with the mean squared l2 distance.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from . import channel as channel_mod
from . import dataset as dataset_mod

VARIANT_NOISY = "Noisy"
VARIANT_PROJECTED = "Projected"
VARIANT_HARMONIQ = "Harmoniq"

ZERO_PROJECTION_NORM = 1e-14
HERMITICITY_INPUT_TOL = 1e-8


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues sorted descending; eigenvectors as matching columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dim(self) -> int:
        return self.eigenvectors.shape[0]


@dataclass(frozen=True)
class DenoiseReport:
    variant: str
    k: int
    per_sample: np.ndarray
    flagged: tuple[int, ...] = field(default_factory=tuple)

    @property
    def mse(self) -> float:
        return float(self.per_sample.mean())


class PipelineResult(NamedTuple):
    noisy: DenoiseReport
    projected: DenoiseReport
    harmoniq: Optional[DenoiseReport]

    def reports(self) -> tuple[DenoiseReport, ...]:
        return tuple(r for r in self if r is not None)


@dataclass(frozen=True)
class PipelineConfig:
    center: bool = True
    renormalize: bool = True
    backend: str = "dense"        # "dense" | "stochastic"
    shots: int = 20000

    def __post_init__(self):
        if self.backend not in ("dense", "stochastic"):
            raise ValueError(f"unknown channel backend {self.backend!r}")


def eigendecompose(rho: np.ndarray) -> SpectralDecomposition:
    """Full Hermitian eigendecomposition with deterministic phase fixing.

    Each eigenvector is oriented so its largest-magnitude entry is real and
    positive, which pins the output inside degenerate blocks as well.
    """
    asym = float(np.max(np.abs(rho - rho.conj().T)))
    if asym > HERMITICITY_INPUT_TOL:
        raise ValueError(f"input is not Hermitian (defect {asym:.2e})")
    evals, vecs = np.linalg.eigh(0.5 * (rho + rho.conj().T))
    evals = evals[::-1].copy()
    vecs = vecs[:, ::-1].copy()
    for j in range(vecs.shape[1]):
        col = vecs[:, j]
        lead = int(np.argmax(np.abs(col)))
        pivot = col[lead]
        if abs(pivot) > 0:
            vecs[:, j] = col * (pivot.conjugate() / abs(pivot))
    return SpectralDecomposition(evals, vecs)


def project_topk(dec: SpectralDecomposition, psi: np.ndarray, k: int,
                 renormalize: bool = True) -> np.ndarray:
    """Orthogonal projection onto the K leading eigenvectors.

    Accepts a single state or a row-stacked batch. With ``renormalize`` the
    result is scaled back to unit norm; a projection that vanishes is
    returned as the zero vector (the caller flags such samples).
    """
    if not 1 <= k <= dec.dim:
        raise ValueError(f"k must lie in [1, {dec.dim}], got {k}")
    vk = dec.eigenvectors[:, :k]
    single = psi.ndim == 1
    rows = psi[None, :] if single else psi
    proj = (rows @ vk.conj()) @ vk.T
    if renormalize:
        norms = np.linalg.norm(proj, axis=1)
        safe = np.where(norms > ZERO_PROJECTION_NORM, norms, 1.0)
        proj = proj / safe[:, None]
        proj[norms <= ZERO_PROJECTION_NORM] = 0.0
    return proj[0] if single else proj


def mse(denoised: np.ndarray, reference: np.ndarray, variant: str = VARIANT_PROJECTED,
        k: int = 0, flagged: tuple[int, ...] = ()) -> DenoiseReport:
    """Mean squared l2 distance between paired rows.

    For unit-norm pairs the per-sample error equals 2 - 2 Re<a, b> and is
    bounded by 4 (antipodal states).
    """
    a = np.atleast_2d(denoised)
    b = np.atleast_2d(reference)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")
    per = np.sum(np.abs(a - b) ** 2, axis=1)
    return DenoiseReport(variant, k, per, flagged)


def _zero_rows(rows: np.ndarray) -> tuple[int, ...]:
    return tuple(int(i) for i in np.flatnonzero(np.linalg.norm(rows, axis=1) <= ZERO_PROJECTION_NORM))


def run_pipeline(ds, window, k: int = 3, cfg: PipelineConfig = PipelineConfig(),
                 rng: np.random.Generator | None = None) -> PipelineResult:
    """Score the three variants of one dataset realization.

    Noisy: encoded noisy states against the encoded clean references.
    Projected: noisy states projected onto the top-K eigenvectors of the
    noisy-data density matrix. Harmoniq: same projection, but after pushing
    the density matrix through the augmentation window (dense channel by
    default, the sampled estimator when cfg.backend == "stochastic").
    ``window=None`` skips the augmented variant.
    """
    enc_noisy = dataset_mod.encode(ds.noisy, center=cfg.center)
    enc_clean = dataset_mod.encode(ds.clean, center=cfg.center)
    if not np.array_equal(enc_noisy.indices, enc_clean.indices):
        raise ValueError("clean/noisy encodings dropped different samples; cannot pair them")
    refs = enc_clean.states
    states = enc_noisy.states

    noisy_report = mse(states, refs, VARIANT_NOISY, k)

    rho = dataset_mod.ensemble_density(enc_noisy)
    dec = eigendecompose(rho)
    projected = project_topk(dec, states, k, cfg.renormalize)
    projected_report = mse(projected, refs, VARIANT_PROJECTED, k, _zero_rows(projected))

    harmoniq_report = None
    if window is not None:
        if cfg.backend == "dense":
            rho_aug = channel_mod.apply_channel_dense(window, rho)
        else:
            if rng is None:
                raise ValueError("stochastic backend needs an rng")
            rho_aug = channel_mod.apply_channel_stochastic(window, enc_noisy, cfg.shots, rng)
        dec_aug = eigendecompose(rho_aug)
        augmented = project_topk(dec_aug, states, k, cfg.renormalize)
        harmoniq_report = mse(augmented, refs, VARIANT_HARMONIQ, k, _zero_rows(augmented))

    return PipelineResult(noisy_report, projected_report, harmoniq_report)
