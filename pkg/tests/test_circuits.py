"""Compiled circuits against the dense operator module."""

import numpy as np
import pytest

from harmoniq.circuits import (CPHASE, HADAMARD, ZROTATION, Circuit, Gate, apply_circuit,
                               basis_state, circuit_unitary, compile_clock_power, compile_qft,
                               compile_shift_power, compile_weyl, cp, h)
from harmoniq.exceptions import DimensionError, VerificationScaleError
from harmoniq.linalg import projective_fidelity
from harmoniq.weyl import build_clock, build_shift, build_weyl

FID_TOL = 1e-10


def fourier_matrix(d):
    jk = np.outer(np.arange(d), np.arange(d))
    return np.exp(2j * np.pi * jk / d) / np.sqrt(d)


def bit_reversal(n):
    d = 1 << n
    perm = np.zeros((d, d))
    for k in range(d):
        rev = int(format(k, f"0{n}b")[::-1], 2)
        perm[rev, k] = 1
    return perm


# -- gate and circuit types ---------------------------------------------------

def test_gate_validation():
    with pytest.raises(ValueError):
        Gate("Q", 0)
    with pytest.raises(ValueError):
        Gate(CPHASE, 1, control=1, angle=0.5)
    with pytest.raises(ValueError):
        Gate(HADAMARD, 0, angle=1.0)
    with pytest.raises(ValueError):
        Gate(ZROTATION, 0, angle=float("nan"))
    with pytest.raises(ValueError):
        Circuit(2, (h(5),))


def test_depth_greedy_layering():
    c = Circuit(3, (h(0), h(1), cp(0, 1, 0.5), h(2), h(0)))
    # layers: {h0, h1, h2}, {cp01}, {h0}
    assert c.depth() == 3
    assert Circuit(3).depth() == 0


def test_gate_counts():
    c = compile_weyl(4, (3, 5))
    counts = c.gate_counts()
    assert counts[HADAMARD] == 8
    assert counts[ZROTATION] == 8
    assert counts[CPHASE] == 12


def test_text_export():
    text = compile_shift_power(1, 1).to_text()
    lines = text.strip().splitlines()
    assert lines[0] == "QUBITS 1"
    assert lines[1] == "H q0"
    assert lines[2].startswith("RZ q0 ")
    assert lines[3] == "H q0"
    cp_line = compile_qft(2).to_text().strip().splitlines()[2]
    assert cp_line.startswith("CP q0 q1 ")
    float(cp_line.split()[-1])


# -- clock compilation --------------------------------------------------------

def test_clock_single_qubit():
    c = compile_clock_power(1, 1)
    assert len(c) == 1 and c.gates[0].kind == ZROTATION
    assert abs(c.gates[0].angle - np.pi) < 1e-15
    u = circuit_unitary(c)
    assert abs(projective_fidelity(u, np.diag([1, -1])) - 1) < 1e-12


def test_clock_three_qubits_angles_and_fidelity():
    c = compile_clock_power(3, 1)
    angles = {g.target: g.angle for g in c.gates}
    assert angles == {0: 2 * np.pi / 8, 1: 2 * np.pi / 4, 2: 2 * np.pi / 2}
    f = projective_fidelity(circuit_unitary(c), build_clock(8, 1))
    assert abs(f - 1) < 1e-12

    c5 = compile_clock_power(3, 5)
    assert all(abs(g5.angle - 5 * g1.angle) < 1e-15 for g5, g1 in zip(c5.gates, c.gates))
    f5 = projective_fidelity(circuit_unitary(c5), build_clock(8, 5))
    assert abs(f5 - 1) < 1e-12


# -- QFT ----------------------------------------------------------------------

def test_qft_single_qubit_is_hadamard():
    c = compile_qft(1)
    assert len(c) == 1 and c.gates[0].kind == HADAMARD
    np.testing.assert_allclose(circuit_unitary(c), np.array([[1, 1], [1, -1]]) / np.sqrt(2),
                               atol=1e-12)


def test_qft2_matches_bit_reversed_dft():
    c = compile_qft(2)
    counts = c.gate_counts()
    assert counts[HADAMARD] == 2 and counts[CPHASE] == 1
    cp_gate = [g for g in c.gates if g.kind == CPHASE][0]
    assert abs(cp_gate.angle - np.pi / 2) < 1e-15
    oracle = bit_reversal(2) @ fourier_matrix(4)
    np.testing.assert_allclose(circuit_unitary(c), oracle, atol=1e-12)


def test_qft3_gate_counts():
    counts = compile_qft(3).gate_counts()
    assert counts[HADAMARD] == 3 and counts[CPHASE] == 3


def test_qft_matches_bit_reversed_dft_up_to_n4():
    for n in (1, 2, 3, 4):
        oracle = bit_reversal(n) @ fourier_matrix(1 << n)
        np.testing.assert_allclose(circuit_unitary(compile_qft(n)), oracle, atol=1e-11)


# -- shift compilation ----------------------------------------------------------

def test_shift_single_qubit_is_pauli_x():
    u = circuit_unitary(compile_shift_power(1, 1))
    f = projective_fidelity(u, np.array([[0, 1], [1, 0]], dtype=complex))
    assert abs(f - 1) < FID_TOL


def test_shift_basis_action():
    c = compile_shift_power(3, 1)
    for k in range(8):
        out = apply_circuit(c, basis_state(3, k))
        probs = np.abs(out) ** 2
        assert probs[(k + 1) % 8] > 1 - 1e-10
        assert abs(np.linalg.norm(out) - 1) < 1e-12


def test_shift_power5_fidelity():
    f = projective_fidelity(circuit_unitary(compile_shift_power(3, 5)), build_shift(8, 5))
    assert abs(f - 1) < FID_TOL


# -- displacement compilation ---------------------------------------------------

def test_weyl_identity_displacement():
    u = circuit_unitary(compile_weyl(2, (0, 0)))
    assert abs(projective_fidelity(u, np.eye(4)) - 1) < FID_TOL


def test_weyl_fidelity_examples():
    f = projective_fidelity(circuit_unitary(compile_weyl(2, (1, 1))), build_weyl(4, (1, 1)))
    assert abs(f - 1) < FID_TOL


def test_weyl_exhaustive_small_n():
    for n in (1, 2, 3):
        d = 1 << n
        for x in range(d):
            for z in range(d):
                u = circuit_unitary(compile_weyl(n, (x, z)))
                f = projective_fidelity(u, build_weyl(d, (x, z)))
                assert f >= 1 - FID_TOL, (n, x, z, f)


def test_weyl_gate_totals_scaling():
    for n in range(2, 9):
        counts = compile_weyl(n, (3, 1)).gate_counts()
        assert counts[HADAMARD] == 2 * n
        assert counts[ZROTATION] == 2 * n
        assert counts[CPHASE] == n * (n - 1)


def test_depth_quadratic_bound():
    d4 = compile_weyl(4, (1, 1)).depth()
    d8 = compile_weyl(8, (1, 1)).depth()
    assert d8 / d4 <= 4.5


# -- simulator ------------------------------------------------------------------

def test_apply_empty_circuit():
    psi = basis_state(2, 3)
    out = apply_circuit(Circuit(2), psi)
    np.testing.assert_allclose(out, psi, atol=0)


def test_apply_matches_dense_column():
    c = compile_weyl(3, (2, 3))
    out = apply_circuit(c, basis_state(3, 0))
    column = build_weyl(8, (2, 3))[:, 0]
    overlap = abs(np.vdot(column, out))
    assert abs(overlap - 1) < 1e-10


def test_apply_then_adjoint_roundtrip():
    rng = np.random.default_rng(2)
    psi = rng.standard_normal(8) + 1j * rng.standard_normal(8)
    psi /= np.linalg.norm(psi)
    c = compile_weyl(3, (5, 2))
    back = apply_circuit(c.adjoint(), apply_circuit(c, psi))
    np.testing.assert_allclose(back, psi, atol=1e-10)


def test_norm_preservation():
    rng = np.random.default_rng(4)
    psi = rng.standard_normal(16) + 1j * rng.standard_normal(16)
    psi /= np.linalg.norm(psi)
    out = apply_circuit(compile_weyl(4, (7, 11)), psi)
    assert abs(np.linalg.norm(out) - 1) < 1e-12


def test_apply_dimension_mismatch():
    with pytest.raises(DimensionError):
        apply_circuit(Circuit(2), basis_state(3, 0))


def test_unitary_empty_is_identity():
    np.testing.assert_allclose(circuit_unitary(Circuit(3)), np.eye(8), atol=0)


def test_unitary_cap():
    with pytest.raises(VerificationScaleError):
        circuit_unitary(Circuit(11))
    circuit_unitary(Circuit(11), max_qubits=11)


def test_negative_powers_compile():
    f = projective_fidelity(circuit_unitary(compile_weyl(3, (-1, -2))), build_weyl(8, (-1, -2)))
    assert abs(f - 1) < FID_TOL
