"""Dense Weyl-Heisenberg (generalized Pauli) matrices on C^d, d = 2^n.

The two generators on the computational basis |0>, ..., |d-1> are

    clock  Z_d |k> = w^k |k>,          w = exp(2*pi*i/d)
    shift  X_d |k> = |k+1 mod d>

and the displacement labeled by a phase point (x, z) is

    W(x, z) = exp(-i*pi*x*z/d) * Z_d^z * X_d^x.

Powers are built from closed-form entries (w^{k z} phases, index shifts),
never by repeated matrix multiplication. Displacement coordinates may be
given as arbitrary integers; they are reduced mod d at construction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import AlgebraViolationError, DimensionError

COMPOSE_TOL = 1e-10


@dataclass(frozen=True)
class PhasePoint:
    """A pair (x, z) in Z_d x Z_d labeling one displacement.

    x is the cyclic shift index, z the clock (diagonal phase) index.
    """

    x: int
    z: int

    def reduce(self, d: int) -> "PhasePoint":
        return PhasePoint(self.x % d, self.z % d)

    def __iter__(self):
        return iter((self.x, self.z))


def check_dimension(d: int) -> None:
    if d < 2 or d & (d - 1):
        raise DimensionError(f"dimension must be a power of two >= 2, got {d}")


def as_phase_point(p, d: int) -> PhasePoint:
    """Coerce a PhasePoint or (x, z) pair to canonical form mod d."""
    check_dimension(d)
    if isinstance(p, PhasePoint):
        return p.reduce(d)
    x, z = p
    return PhasePoint(int(x) % d, int(z) % d)


def num_qubits(d: int) -> int:
    check_dimension(d)
    return d.bit_length() - 1


def build_clock(d: int, z: int = 1) -> np.ndarray:
    """Diagonal matrix with entries w^{k z} at (k, k)."""
    check_dimension(d)
    k = np.arange(d)
    return np.diag(np.exp(2j * np.pi * (z % d) * k / d)).astype(np.complex128)


def build_shift(d: int, x: int = 1) -> np.ndarray:
    """Permutation matrix sending |k> to |k + x mod d>."""
    check_dimension(d)
    cols = np.arange(d)
    m = np.zeros((d, d), dtype=np.complex128)
    m[(cols + x) % d, cols] = 1.0
    return m


def build_weyl(d: int, p) -> np.ndarray:
    """exp(-i*pi*x*z/d) * Z^z * X^x with (x, z) reduced mod d.

    Entry (j, k) is nonzero only for j = k + x mod d, where it equals
    exp(-i*pi*x*z/d) * w^{j z}; this is the closed form of the product.
    """
    p = as_phase_point(p, d)
    scalar = np.exp(-1j * np.pi * p.x * p.z / d)
    cols = np.arange(d)
    rows = (cols + p.x) % d
    w = np.zeros((d, d), dtype=np.complex128)
    w[rows, cols] = scalar * np.exp(2j * np.pi * p.z * rows / d)
    return w


def weyl_apply(d: int, p, psi: np.ndarray) -> np.ndarray:
    """W(x, z) @ psi in O(d) using the shift-then-phase structure."""
    p = as_phase_point(p, d)
    scalar = np.exp(-1j * np.pi * p.x * p.z / d)
    phases = scalar * np.exp(2j * np.pi * p.z * np.arange(d) / d)
    return phases * np.roll(psi, p.x)


def compose_weyl(d: int, p, q) -> tuple[PhasePoint, complex]:
    """Close the product of two displacements: W(p) W(q) = c * W(p+q).

    The unit-modulus scalar c is read off numerically from a nonzero entry
    of W(p+q). A mismatch beyond COMPOSE_TOL between the product and
    c * W(p+q) raises AlgebraViolationError.
    """
    p = as_phase_point(p, d)
    q = as_phase_point(q, d)
    r = PhasePoint((p.x + q.x) % d, (p.z + q.z) % d)
    prod = build_weyl(d, p) @ build_weyl(d, q)
    target = build_weyl(d, r)
    idx = np.unravel_index(np.argmax(np.abs(target)), target.shape)
    c = complex(prod[idx] / target[idx])
    if np.max(np.abs(prod - c * target)) > COMPOSE_TOL:
        raise AlgebraViolationError(
            f"W{tuple(p)} W{tuple(q)} does not match a scalar multiple of W{tuple(r)} at d={d}"
        )
    return r, c
