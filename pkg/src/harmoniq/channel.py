"""The localized displacement-mixture channel and its stochastic estimator.

A window is a small set Omega of phase points near the origin together
with a normalized weight per point; the channel acts on density matrices
as ``rho -> sum_p lambda_p W_p rho W_p†``. Conjugation by a displacement
is monomial, so the dense application runs in O(|Omega| d^2) via index
rolls and phase masks; tests pin it entrywise against explicit dense
matrix conjugation.

The stochastic realization draws (state, displacement) pairs and averages
outer products; with the circuit backend each displaced state is produced
by the compiled circuit instead of the dense operator.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circuits import apply_circuit, compile_weyl
from .exceptions import DimensionError, WindowError
from .weyl import PhasePoint, check_dimension, num_qubits, weyl_apply

WEIGHT_SUM_TOL = 1e-12


@dataclass(frozen=True)
class AugmentationWindow:
    """Phase points Omega with probability weights, on dimension d.

    ``variance`` records the Gaussian weight parameter v used at
    construction (0.0 for windows not built from a Gaussian profile).
    """

    d: int
    points: tuple[PhasePoint, ...]
    weights: np.ndarray
    variance: float = 0.0

    def __post_init__(self):
        check_dimension(self.d)
        pts = tuple(p.reduce(self.d) for p in self.points)
        object.__setattr__(self, "points", pts)
        w = np.asarray(self.weights, dtype=float)
        object.__setattr__(self, "weights", w)
        if len(pts) != w.size:
            raise WindowError("points and weights differ in length")
        if len(set(pts)) != len(pts):
            raise WindowError("window points collide after mod-d reduction")
        if w.size == 0:
            raise WindowError("empty window")
        if np.any(w < 0):
            raise WindowError("negative weight")
        if abs(float(w.sum()) - 1.0) > WEIGHT_SUM_TOL:
            raise WindowError(f"weights sum to {w.sum()!r}, expected 1")

    def __len__(self) -> int:
        return len(self.points)


def grid_side(n: int) -> int:
    """Side length of the centered window grid: n for odd n, n-1 for even."""
    if n < 2:
        raise WindowError(f"window needs n >= 2 qubits, got {n}")
    return n if n % 2 else n - 1


def build_window(n: int, variance: float | None = None) -> AugmentationWindow:
    """Centered s x s grid of displacements with Gaussian weights.

    s = n for odd n and n-1 for even n, so the grid is symmetric about the
    origin. Weights are exp(-(x^2+z^2)/(2v)) evaluated at the signed grid
    offsets before mod-d reduction, then normalized; the default variance
    follows sqrt(v) = floor(|Omega| / 2).
    """
    s = grid_side(n)
    d = 1 << n
    if variance is None:
        variance = float((s * s // 2) ** 2)
    half = (s - 1) // 2
    offsets = [(x, z) for x in range(-half, half + 1) for z in range(-half, half + 1)]
    if variance > 0:
        raw = np.array([np.exp(-(x * x + z * z) / (2.0 * variance)) for x, z in offsets])
    else:
        if len(offsets) > 1:
            raise WindowError("zero variance is only valid for the single-point grid")
        raw = np.ones(1)
    points = tuple(PhasePoint(x % d, z % d) for x, z in offsets)
    return AugmentationWindow(d, points, raw / raw.sum(), variance)


def uniform_window(d: int) -> AugmentationWindow:
    """Uniform weights over all d^2 displacements (the full twirl)."""
    check_dimension(d)
    points = tuple(PhasePoint(x, z) for x in range(d) for z in range(d))
    return AugmentationWindow(d, points, np.full(d * d, 1.0 / (d * d)))


def identity_window(d: int) -> AugmentationWindow:
    return AugmentationWindow(d, (PhasePoint(0, 0),), np.array([1.0]))


def apply_channel_dense(window: AugmentationWindow, rho: np.ndarray) -> np.ndarray:
    """Exact weighted sum of displacement conjugations.

    Uses the closed form (W rho W†)[j, k] = w^{z(j-k)} rho[j-x, k-x]
    (indices mod d); the scalar prefactor of W cancels under conjugation.
    Window points are accumulated in their stored order.
    """
    d = window.d
    if rho.shape != (d, d):
        raise DimensionError(f"density matrix shape {rho.shape} does not match d={d}")
    j = np.arange(d)
    out = np.zeros((d, d), dtype=np.complex128)
    for (x, z), lam in zip(window.points, window.weights):
        phase = np.exp(2j * np.pi * z * j / d)
        shifted = np.roll(rho, (x, x), axis=(0, 1))
        out += lam * (phase[:, None] * shifted * phase.conj()[None, :])
    return out


def sample_displacement(window: AugmentationWindow, rng: np.random.Generator) -> PhasePoint:
    """One phase point drawn with probability equal to its weight."""
    return window.points[int(rng.choice(len(window), p=window.weights))]


def _displaced_state_dense(d, point, psi):
    return weyl_apply(d, point, psi)


class _CircuitBackend:
    """Per-window cache of compiled displacement circuits."""

    def __init__(self, n: int):
        self.n = n
        self._cache: dict[PhasePoint, object] = {}

    def apply(self, point: PhasePoint, psi: np.ndarray) -> np.ndarray:
        circ = self._cache.get(point)
        if circ is None:
            circ = compile_weyl(self.n, point)
            self._cache[point] = circ
        return apply_circuit(circ, psi)


def apply_channel_stochastic(window: AugmentationWindow, ensemble, samples: int,
                             rng: np.random.Generator,
                             backend: str = "dense") -> np.ndarray:
    """Monte-Carlo estimate of the channel output on an encoded ensemble.

    Per shot: draw a state index by ensemble probability and a displacement
    by window weight, displace the pure state, and accumulate its outer
    product. Only the running sum of outer products is stored. All draws
    come from ``rng`` in a fixed order (all state indices, then all
    displacement indices), so dense and circuit backends consume identical
    streams.
    """
    if samples < 1:
        raise ValueError(f"need at least one sample, got {samples}")
    if backend not in ("dense", "circuit"):
        raise ValueError(f"unknown backend {backend!r}")
    d = window.d
    states = np.asarray(ensemble.states)
    if states.shape[1] != d:
        raise DimensionError(f"ensemble dimension {states.shape[1]} != window dimension {d}")
    state_idx = rng.choice(states.shape[0], size=samples, p=ensemble.probs)
    disp_idx = rng.choice(len(window), size=samples, p=window.weights)

    circuit_backend = _CircuitBackend(num_qubits(d)) if backend == "circuit" else None
    acc = np.zeros((d, d), dtype=np.complex128)
    chunk = 4096
    buf = np.empty((min(chunk, samples), d), dtype=np.complex128)
    filled = 0
    for i, pi in zip(state_idx, disp_idx):
        point = window.points[pi]
        psi = states[i]
        if circuit_backend is None:
            phi = _displaced_state_dense(d, point, psi)
        else:
            phi = circuit_backend.apply(point, psi)
        buf[filled] = phi
        filled += 1
        if filled == buf.shape[0]:
            acc += buf[:filled].T @ buf[:filled].conj()
            filled = 0
    if filled:
        acc += buf[:filled].T @ buf[:filled].conj()
    return acc / samples


# -- window persistence ------------------------------------------------------

def save_window(path, window: AugmentationWindow) -> None:
    """Plain-text table for reproducibility audits: header, then `x z weight`."""
    lines = [f"D {window.d} V {float(window.variance)!r}"]
    for (x, z), w in zip(window.points, window.weights):
        lines.append(f"{x} {z} {float(w)!r}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def load_window(path) -> AugmentationWindow:
    with open(path) as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    head = lines[0].split()
    if len(head) != 4 or head[0] != "D" or head[2] != "V":
        raise WindowError(f"bad window header in {path}: {lines[0]!r}")
    d, variance = int(head[1]), float(head[3])
    points, weights = [], []
    for ln in lines[1:]:
        x, z, w = ln.split()
        points.append(PhasePoint(int(x), int(z)))
        weights.append(float(w))
    return AugmentationWindow(d, tuple(points), np.array(weights), variance)
