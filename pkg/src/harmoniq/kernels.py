"""Statevector gate kernels: numba-jitted hot loops with a numpy fallback.

Kernels act in place on a C-contiguous complex128 array of shape (d, b):
axis 0 is the amplitude index of an n-qubit register (little-endian, qubit
j = bit j), axis 1 is a batch of b independent columns. Batch-of-one covers
single statevectors; batch-of-d applied to the identity extracts a full
unitary.

Backend selection: the environment variable HARMONIQ_KERNELS may be set to
"numba", "numpy", or "auto" (default). "auto" uses numba when importable
and falls back to numpy otherwise. Both implementations are always
importable for side-by-side testing and benchmarking.
"""

from __future__ import annotations

import os

import numpy as np

_ENV_VAR = "HARMONIQ_KERNELS"
_INV_SQRT2 = 1.0 / np.sqrt(2.0)


# -- numpy reference implementations --------------------------------------

def hadamard_numpy(state, target):
    tk = 1 << target
    v = state.reshape(-1, 2, tk, state.shape[1])
    lo = v[:, 0].copy()
    hi = v[:, 1]
    v[:, 0] = (lo + hi) * _INV_SQRT2
    v[:, 1] = (lo - hi) * _INV_SQRT2


def zrotation_numpy(state, target, theta):
    tk = 1 << target
    v = state.reshape(-1, 2, tk, state.shape[1])
    v[:, 0] *= np.exp(-0.5j * theta)
    v[:, 1] *= np.exp(0.5j * theta)


def cphase_numpy(state, qa, qb, theta):
    hi, lo = (qa, qb) if qa > qb else (qb, qa)
    th, tl = 1 << hi, 1 << lo
    v = state.reshape(-1, 2, th // (2 * tl), 2, tl, state.shape[1])
    v[:, 1, :, 1] *= np.exp(1j * theta)


# -- numba implementations --------------------------------------------------

def _build_numba_kernels():
    from numba import njit

    @njit(cache=True)
    def hadamard_numba(state, target):
        d, b = state.shape
        tk = 1 << target
        for g in range(d >> 1):
            i0 = ((g >> target) << (target + 1)) + (g & (tk - 1))
            i1 = i0 + tk
            for c in range(b):
                lo = state[i0, c]
                hi = state[i1, c]
                state[i0, c] = (lo + hi) * _INV_SQRT2
                state[i1, c] = (lo - hi) * _INV_SQRT2

    @njit(cache=True)
    def zrotation_numba(state, target, theta):
        d, b = state.shape
        p0 = np.exp(-0.5j * theta)
        p1 = np.exp(0.5j * theta)
        for i in range(d):
            p = p1 if (i >> target) & 1 else p0
            for c in range(b):
                state[i, c] *= p

    @njit(cache=True)
    def cphase_numba(state, qa, qb, theta):
        d, b = state.shape
        p = np.exp(1j * theta)
        for i in range(d):
            if (i >> qa) & 1 and (i >> qb) & 1:
                for c in range(b):
                    state[i, c] *= p

    return hadamard_numba, zrotation_numba, cphase_numba


def _select_backend() -> str:
    choice = os.environ.get(_ENV_VAR, "auto").strip().lower()
    if choice not in ("auto", "numba", "numpy"):
        raise ValueError(f"{_ENV_VAR} must be 'auto', 'numba' or 'numpy', got {choice!r}")
    if choice == "numpy":
        return "numpy"
    try:
        import numba  # noqa: F401
    except ImportError:
        if choice == "numba":
            raise
        return "numpy"
    return "numba"


ACTIVE_BACKEND = _select_backend()

if ACTIVE_BACKEND == "numba":
    hadamard, zrotation, cphase = _build_numba_kernels()
else:
    hadamard, zrotation, cphase = hadamard_numpy, zrotation_numpy, cphase_numpy


def active_backend() -> str:
    """Name of the kernel implementation selected at import time."""
    return ACTIVE_BACKEND
