"""Small dense linear-algebra helpers used throughout the package.

All operators are plain ``numpy`` arrays of ``complex128``; these helpers
implement the handful of metrics and predicates the rest of the code keeps
reaching for.
"""

from __future__ import annotations

import numpy as np


def projective_fidelity(u: np.ndarray, v: np.ndarray) -> float:
    """|tr(U† V)| / d — equals 1 iff U and V agree up to a global phase."""
    d = u.shape[0]
    return abs(np.trace(u.conj().T @ v)) / d


def trace_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Half the sum of absolute eigenvalues of the Hermitian difference."""
    diff = a - b
    diff = 0.5 * (diff + diff.conj().T)
    return 0.5 * float(np.sum(np.abs(np.linalg.eigvalsh(diff))))


def unitarity_defect(u: np.ndarray) -> float:
    """max |(U†U - I)_jk|."""
    d = u.shape[0]
    return float(np.max(np.abs(u.conj().T @ u - np.eye(d))))


def is_unitary(u: np.ndarray, tol: float = 1e-12) -> bool:
    return unitarity_defect(u) < tol


def hermiticity_defect(a: np.ndarray) -> float:
    return float(np.max(np.abs(a - a.conj().T)))


def is_hermitian(a: np.ndarray, tol: float = 1e-12) -> bool:
    return hermiticity_defect(a) < tol


def density_defects(rho: np.ndarray) -> tuple[float, float, float]:
    """Return (hermiticity defect, |trace - 1|, most negative eigenvalue).

    The third entry is 0.0 when the matrix is PSD; otherwise the magnitude
    of the most negative eigenvalue.
    """
    herm = hermiticity_defect(rho)
    tr = abs(float(np.trace(rho).real) - 1.0) + abs(float(np.trace(rho).imag))
    evals = np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))
    neg = float(max(0.0, -evals.min()))
    return herm, tr, neg


def is_density_matrix(rho: np.ndarray, herm_tol: float = 1e-12,
                      trace_tol: float = 1e-12, psd_tol: float = 1e-10) -> bool:
    herm, tr, neg = density_defects(rho)
    return herm < herm_tol and tr < trace_tol and neg < psd_tol


def random_state(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-ish random unit vector (normalized complex Gaussian)."""
    v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return v / np.linalg.norm(v)


def random_density_matrix(d: int, rng: np.random.Generator, rank: int | None = None) -> np.ndarray:
    """Random full-rank (or fixed-rank) density matrix via a Wishart draw."""
    r = d if rank is None else rank
    a = rng.standard_normal((d, r)) + 1j * rng.standard_normal((d, r))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real
