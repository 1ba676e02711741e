"""Synthetic time-frequency signal data and amplitude encoding.

Signals live in C^d and are synthesized from 12 "atoms": displaced copies
of one discretized Gaussian window, arranged as three well-separated
clusters of four in the (shift, clock) phase plane. Each sample mixes the
atoms with i.i.d. standard-normal real coefficients; additive complex
Gaussian noise with per-entry variance sigma^2 (split evenly between real
and imaginary parts) masks the structure.

Amplitude encoding turns a (centered) vector collection into unit-norm
states with probabilities proportional to squared norms, the ensemble
whose mixture is the trace-normalized data covariance.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import EncodingError
from .weyl import PhasePoint, build_weyl, check_dimension

NUM_ATOMS = 12
DROP_NORM = 1e-14


@dataclass(frozen=True)
class SignalDataset:
    d: int
    m: int
    sigma: float
    atoms: np.ndarray            # (12, d) unit-norm complex rows
    atom_points: tuple[PhasePoint, ...]
    coefficients: np.ndarray     # (m, 12) real
    clean: np.ndarray            # (m, d) complex
    noisy: np.ndarray            # (m, d) complex
    seed: int | None = None


@dataclass(frozen=True)
class EncodedEnsemble:
    """Unit-norm states with probabilities summing to one.

    ``indices`` records which input rows survived the near-zero-norm drop.
    """

    states: np.ndarray   # (k, d) complex rows
    probs: np.ndarray    # (k,)
    indices: np.ndarray  # (k,) positions in the source collection


def gaussian_window(d: int, width: float | None = None) -> np.ndarray:
    """l2-normalized real Gaussian centered at d/2.

    The default width sqrt(d / 2 pi) balances the time spread against the
    frequency spread d / (2 pi width), so unit shifts along either phase
    axis perturb an atom by the same amount at every d. This keeps the
    clusters equally tight in both directions as the dimension grows.
    """
    check_dimension(d)
    if d < 16:
        raise ValueError(f"window needs d >= 16, got {d}")
    if width is None:
        width = float(np.sqrt(d / (2.0 * np.pi)))
    t = np.arange(d)
    g = np.exp(-((t - d / 2.0) ** 2) / (2.0 * width * width))
    return g / np.linalg.norm(g)


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def cluster_centers(d: int) -> tuple[PhasePoint, PhasePoint, PhasePoint]:
    return (
        PhasePoint(_ceil_div(d, 6), _ceil_div(d, 6)),
        PhasePoint(_ceil_div(d, 2), _ceil_div(2 * d, 3)),
        PhasePoint(_ceil_div(5 * d, 6), _ceil_div(d, 3)),
    )


def make_atoms(d: int, width: float | None = None) -> tuple[np.ndarray, tuple[PhasePoint, ...]]:
    """Twelve displaced window copies: three clusters of four atoms each.

    Within a cluster the four atoms sit one unit apart in shift and clock;
    a fixed offset keeps each cluster near rank one at every dimension, so
    a rank-3 truncation can represent the clean signals.
    """
    if d < 64:
        raise ValueError(f"atom clusters need d >= 64 to stay separated, got {d}")
    g = gaussian_window(d, width)
    delta = 1
    offsets = ((0, 0), (delta, 0), (0, delta), (delta, delta))
    points = []
    for cx, cz in cluster_centers(d):
        for ox, oz in offsets:
            points.append(PhasePoint((cx + ox) % d, (cz + oz) % d))
    atoms = np.stack([build_weyl(d, p) @ g for p in points])
    return atoms, tuple(points)


def make_clean(d: int, m: int, rng: np.random.Generator,
               width: float | None = None):
    """Clean samples: rows coefficients @ atoms with N(0,1) coefficients."""
    if m < 2:
        raise ValueError(f"need m >= 2 samples, got {m}")
    atoms, points = make_atoms(d, width)
    coeffs = rng.standard_normal((m, NUM_ATOMS))
    return coeffs @ atoms, coeffs, atoms, points


def add_noise(clean: np.ndarray, sigma: float, rng: np.random.Generator,
              convention: str = "complex") -> np.ndarray:
    """Additive Gaussian noise per entry.

    "complex": total per-entry variance sigma^2, split evenly between the
    real and imaginary parts (so E||eps||^2 = d sigma^2). "real": N(0,
    sigma) added to the real part only, for ablation.
    """
    if sigma == 0:
        return clean.copy()
    if convention == "complex":
        scale = sigma / np.sqrt(2.0)
        eps = rng.normal(0.0, scale, clean.shape) + 1j * rng.normal(0.0, scale, clean.shape)
    elif convention == "real":
        eps = rng.normal(0.0, sigma, clean.shape).astype(np.complex128)
    else:
        raise ValueError(f"unknown noise convention {convention!r}")
    return clean + eps


def generate(d: int, m: int, sigma: float, seed: int,
             noise: str = "complex", width: float | None = None) -> SignalDataset:
    """Deterministic dataset from one integer seed.

    Coefficients and noise use independent child streams, so the clean
    samples for a seed do not depend on sigma or the noise convention.
    """
    coeff_ss, noise_ss = np.random.SeedSequence(seed).spawn(2)
    clean, coeffs, atoms, points = make_clean(d, m, np.random.default_rng(coeff_ss), width)
    noisy = add_noise(clean, sigma, np.random.default_rng(noise_ss), noise)
    return SignalDataset(d, m, sigma, atoms, points, coeffs, clean, noisy, seed)


def encode(vectors: np.ndarray, center: bool = True) -> EncodedEnsemble:
    """Amplitude-encode rows: psi_i = v_i / ||v_i||, p_i proportional to ||v_i||^2.

    With ``center`` the empirical mean is subtracted first. Rows with norm
    below 1e-14 are dropped together with their (zero) weight.
    """
    a = np.asarray(vectors, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] < 2:
        raise EncodingError("need a 2-D collection with at least two vectors")
    if center:
        a = a - a.mean(axis=0)
    norms = np.linalg.norm(a, axis=1)
    keep = np.flatnonzero(norms > DROP_NORM)
    if keep.size == 0:
        raise EncodingError("all vectors vanish after centering; nothing to encode")
    a = a[keep]
    norms = norms[keep]
    sq = norms ** 2
    return EncodedEnsemble(a / norms[:, None], sq / sq.sum(), keep)


def ensemble_density(ensemble: EncodedEnsemble) -> np.ndarray:
    """Mixture sum_i p_i |psi_i><psi_i| as a dense matrix."""
    s = ensemble.states
    return s.T @ (ensemble.probs[:, None] * s.conj())


def sample_states(ensemble: EncodedEnsemble, count: int,
                  rng: np.random.Generator) -> np.ndarray:
    """Draw ensemble states by index with probability p_i (rows of output)."""
    idx = rng.choice(ensemble.states.shape[0], size=count, p=ensemble.probs)
    return ensemble.states[idx]


# -- persistence --------------------------------------------------------------

def _format_row(row: np.ndarray) -> str:
    return " ".join(f"{float(v.real)!r},{float(v.imag)!r}" for v in row)


def save_signals(path, dataset: SignalDataset, which: str) -> None:
    """Textual signal table: header `D .. M .. SIGMA .. SEED ..`, one row per sample."""
    data = getattr(dataset, which)
    seed = "none" if dataset.seed is None else dataset.seed
    lines = [f"D {dataset.d} M {dataset.m} SIGMA {float(dataset.sigma)!r} SEED {seed}"]
    lines.extend(_format_row(row) for row in data)
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def load_signals(path):
    """Returns (array of shape (m, d), header dict)."""
    with open(path) as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    head = lines[0].split()
    if len(head) != 8 or head[0::2] != ["D", "M", "SIGMA", "SEED"]:
        raise ValueError(f"bad signal header in {path}: {lines[0]!r}")
    header = {
        "d": int(head[1]),
        "m": int(head[3]),
        "sigma": float(head[5]),
        "seed": None if head[7] == "none" else int(head[7]),
    }
    rows = []
    for ln in lines[1:]:
        entries = [tuple(map(float, pair.split(","))) for pair in ln.split()]
        rows.append([complex(re, im) for re, im in entries])
    data = np.array(rows, dtype=np.complex128)
    if data.shape != (header["m"], header["d"]):
        raise ValueError(f"signal table shape {data.shape} does not match header {header}")
    return data, header
