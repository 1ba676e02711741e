"""Gate-level compilation of clock/shift powers and displacement operators.

The gate set is Hadamard, z-rotation Rz(theta) = diag(e^{-i theta/2},
e^{i theta/2}), and the symmetric controlled phase CP(theta) =
diag(1, 1, 1, e^{i theta}). Qubits are little-endian: qubit 0 is the least
significant bit of the basis index k = sum_j b_j 2^j.

Construction overview, for d = 2^n:

* ``compile_clock_power(n, z)`` — Z^z acts on bit j as the relative phase
  exp(2*pi*i * z * b_j / 2^{n-j}), so one rotation per qubit with angle
  theta_j = 2*pi*z / 2^{n-j} realizes it up to a global phase.
* ``compile_qft(n)`` — swap-free; its unitary is R * F where F is the
  d-point Fourier matrix F[j, k] = w^{jk}/sqrt(d) and R the bit-reversal
  permutation. The missing swaps are compensated downstream.
* ``compile_shift_power(n, x)`` — X^x = F† Z^x F; with swap-free blocks
  this becomes (RF)† (R Z^x R) (RF), and R Z^x R is simply the rotation
  layer with the qubit-to-angle assignment reversed.
* ``compile_weyl(n, p)`` — shift circuit followed by clock circuit.

The compiler never synthesizes the displacement's scalar prefactor or the
Rz half-angle phases, so compiled circuits match the dense operators up to
a global phase only; verification is projective throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .exceptions import DimensionError, VerificationScaleError
from .weyl import as_phase_point

HADAMARD = "H"
ZROTATION = "RZ"
CPHASE = "CP"

VERIFICATION_CAP = 10


@dataclass(frozen=True)
class Gate:
    kind: str
    target: int
    control: int | None = None
    angle: float | None = None

    def __post_init__(self):
        if self.kind not in (HADAMARD, ZROTATION, CPHASE):
            raise ValueError(f"unknown gate kind {self.kind!r}")
        if self.target < 0:
            raise ValueError("negative qubit index")
        if self.kind == CPHASE:
            if self.control is None or self.control < 0:
                raise ValueError("controlled-phase needs a control qubit")
            if self.control == self.target:
                raise ValueError("control and target must differ")
        elif self.control is not None:
            raise ValueError(f"{self.kind} takes no control")
        if self.kind in (ZROTATION, CPHASE):
            if self.angle is None or not math.isfinite(self.angle):
                raise ValueError("rotation/phase gates need a finite angle")
        elif self.angle is not None:
            raise ValueError("Hadamard takes no angle")

    @property
    def qubits(self) -> tuple[int, ...]:
        if self.control is None:
            return (self.target,)
        return (self.control, self.target)

    def adjoint(self) -> "Gate":
        if self.kind == HADAMARD:
            return self
        return Gate(self.kind, self.target, self.control, -self.angle)


def h(q: int) -> Gate:
    return Gate(HADAMARD, q)


def rz(q: int, angle: float) -> Gate:
    return Gate(ZROTATION, q, angle=angle)


def cp(control: int, target: int, angle: float) -> Gate:
    return Gate(CPHASE, target, control=control, angle=angle)


@dataclass(frozen=True)
class Circuit:
    """Ordered gate list on ``qubits`` wires; gates[0] acts first."""

    qubits: int
    gates: tuple[Gate, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.qubits < 1:
            raise ValueError("need at least one qubit")
        object.__setattr__(self, "gates", tuple(self.gates))
        for g in self.gates:
            if any(q >= self.qubits for q in g.qubits):
                raise ValueError(f"gate {g} references qubit outside [0, {self.qubits})")

    @property
    def dim(self) -> int:
        return 1 << self.qubits

    def __len__(self) -> int:
        return len(self.gates)

    def __add__(self, other: "Circuit") -> "Circuit":
        if other.qubits != self.qubits:
            raise ValueError("qubit counts differ")
        return Circuit(self.qubits, self.gates + other.gates)

    def adjoint(self) -> "Circuit":
        return Circuit(self.qubits, tuple(g.adjoint() for g in reversed(self.gates)))

    def gate_counts(self) -> dict[str, int]:
        counts = {HADAMARD: 0, ZROTATION: 0, CPHASE: 0}
        for g in self.gates:
            counts[g.kind] += 1
        return counts

    def depth(self) -> int:
        """Greedy (ASAP) layering: gates sharing a qubit cannot share a layer."""
        frontier = [0] * self.qubits
        depth = 0
        for g in self.gates:
            layer = max(frontier[q] for q in g.qubits) + 1
            for q in g.qubits:
                frontier[q] = layer
            depth = max(depth, layer)
        return depth

    def to_text(self) -> str:
        lines = [f"QUBITS {self.qubits}"]
        for g in self.gates:
            if g.kind == HADAMARD:
                lines.append(f"H q{g.target}")
            elif g.kind == ZROTATION:
                lines.append(f"RZ q{g.target} {g.angle:.17g}")
            else:
                lines.append(f"CP q{g.control} q{g.target} {g.angle:.17g}")
        return "\n".join(lines) + "\n"


def compile_clock_power(n: int, z: int) -> Circuit:
    """Z_{2^n}^z as one z-rotation per qubit, angle 2*pi*z / 2^{n-j} on qubit j."""
    if n < 1:
        raise ValueError("need n >= 1")
    gates = [rz(j, 2.0 * np.pi * z / (1 << (n - j))) for j in range(n)]
    return Circuit(n, tuple(gates))


def _qft_gates(n: int) -> list[Gate]:
    gates = []
    for j in range(n - 1, -1, -1):
        gates.append(h(j))
        for r in range(1, j + 1):
            gates.append(cp(j - r, j, 2.0 * np.pi / (1 << (r + 1))))
    return gates


def compile_qft(n: int) -> Circuit:
    """Swap-free Fourier circuit: n Hadamards, n(n-1)/2 controlled phases.

    Output unitary is the bit-reversal permutation composed after the
    Fourier matrix |k> -> (1/sqrt(d)) sum_l w^{kl} |l>.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    return Circuit(n, tuple(_qft_gates(n)))


def compile_shift_power(n: int, x: int) -> Circuit:
    """X_{2^n}^x = QFT† . (reversed rotation layer) . QFT, swap-free."""
    if n < 1:
        raise ValueError("need n >= 1")
    qft = compile_qft(n)
    middle = tuple(rz(j, 2.0 * np.pi * x / (1 << (j + 1))) for j in range(n))
    return Circuit(n, qft.gates + middle + qft.adjoint().gates)


def compile_weyl(n: int, p) -> Circuit:
    """Displacement W(x, z): shift-power circuit followed by clock-power circuit."""
    p = as_phase_point(p, 1 << n)
    return compile_shift_power(n, p.x) + compile_clock_power(n, p.z)


def _apply_gates(mat: np.ndarray, gates) -> None:
    for g in gates:
        if g.kind == HADAMARD:
            kernels.hadamard(mat, g.target)
        elif g.kind == ZROTATION:
            kernels.zrotation(mat, g.target, g.angle)
        else:
            kernels.cphase(mat, g.control, g.target, g.angle)


def apply_circuit(circuit: Circuit, psi: np.ndarray) -> np.ndarray:
    """Gate-by-gate action on a statevector; returns a new array."""
    psi = np.asarray(psi)
    if psi.shape != (circuit.dim,):
        raise DimensionError(
            f"state has shape {psi.shape}, circuit acts on ({circuit.dim},)"
        )
    out = np.ascontiguousarray(psi, dtype=np.complex128).reshape(-1, 1).copy()
    _apply_gates(out, circuit.gates)
    return out.reshape(-1)


def circuit_unitary(circuit: Circuit, max_qubits: int = VERIFICATION_CAP) -> np.ndarray:
    """Dense matrix of the circuit, assembled by acting on all basis states."""
    if circuit.qubits > max_qubits:
        raise VerificationScaleError(
            f"dense extraction capped at {max_qubits} qubits, circuit has {circuit.qubits}"
        )
    mat = np.eye(circuit.dim, dtype=np.complex128)
    _apply_gates(mat, circuit.gates)
    return mat


def basis_state(n: int, k: int = 0) -> np.ndarray:
    psi = np.zeros(1 << n, dtype=np.complex128)
    psi[k] = 1.0
    return psi
