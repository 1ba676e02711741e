"""Self-check suite: circuit-vs-dense fidelity, twirl, composition law.

Each check returns a CheckResult so the CLI can print one line per check
and exit nonzero on any failure. The same helpers back the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import channel as channel_mod
from . import circuits, linalg, weyl

FIDELITY_TOL = 1e-10
TWIRL_TOL = 1e-10
COMPOSE_ENTRY_TOL = 1e-12


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def weyl_circuit_fidelity(n: int, p) -> float:
    """Projective fidelity between the compiled and the dense displacement."""
    d = 1 << n
    u_circ = circuits.circuit_unitary(circuits.compile_weyl(n, p))
    return linalg.projective_fidelity(u_circ, weyl.build_weyl(d, p))


def check_exhaustive_fidelity(n: int) -> CheckResult:
    d = 1 << n
    worst = 1.0
    for x in range(d):
        for z in range(d):
            worst = min(worst, weyl_circuit_fidelity(n, (x, z)))
    return CheckResult(
        f"circuit-vs-dense exhaustive n={n} ({d * d} pairs)",
        worst >= 1.0 - FIDELITY_TOL,
        f"worst fidelity {worst:.15f}",
    )


def check_random_fidelity(n: int, pairs: int, rng: np.random.Generator) -> CheckResult:
    d = 1 << n
    worst = 1.0
    for _ in range(pairs):
        p = (int(rng.integers(d)), int(rng.integers(d)))
        worst = min(worst, weyl_circuit_fidelity(n, p))
    return CheckResult(
        f"circuit-vs-dense random n={n} ({pairs} pairs)",
        worst >= 1.0 - FIDELITY_TOL,
        f"worst fidelity {worst:.15f}",
    )


def check_twirl(d: int, rhos: int, rng: np.random.Generator) -> CheckResult:
    window = channel_mod.uniform_window(d)
    target = np.eye(d) / d
    worst = 0.0
    for _ in range(rhos):
        rho = linalg.random_density_matrix(d, rng)
        out = channel_mod.apply_channel_dense(window, rho)
        worst = max(worst, linalg.trace_distance(out, target))
    return CheckResult(
        f"uniform twirl to maximally mixed d={d} ({rhos} states)",
        worst < TWIRL_TOL,
        f"worst trace distance {worst:.3e}",
    )


def check_composition(d: int, pairs: int, rng: np.random.Generator) -> CheckResult:
    worst = 0.0
    for _ in range(pairs):
        p = (int(rng.integers(d)), int(rng.integers(d)))
        q = (int(rng.integers(d)), int(rng.integers(d)))
        r, c = weyl.compose_weyl(d, p, q)
        prod = weyl.build_weyl(d, p) @ weyl.build_weyl(d, q)
        worst = max(worst, float(np.max(np.abs(prod - c * weyl.build_weyl(d, r)))))
    return CheckResult(
        f"composition law d={d} ({pairs} pairs)",
        worst < COMPOSE_ENTRY_TOL,
        f"worst entrywise deviation {worst:.3e}",
    )


def gate_count_report(n_values=range(2, 9)) -> list[str]:
    """Measured gate counts next to the 2n / 2n / n(n+2) reference figures."""
    lines = ["   n   H(meas)  RZ(meas)  CP(meas)   H(ref)  RZ(ref)  CP(ref)  depth"]
    for n in n_values:
        c = circuits.compile_weyl(n, (1, 1))
        counts = c.gate_counts()
        lines.append(
            f"{n:4d} {counts['H']:9d} {counts['RZ']:9d} {counts['CP']:9d}"
            f" {2 * n:8d} {2 * n:8d} {n * (n + 2):8d} {c.depth():6d}"
        )
    return lines


def run_all(seed: int = 0, random_pairs: int = 100) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    results = []
    for n in (1, 2, 3, 4):
        results.append(check_exhaustive_fidelity(n))
    for n in (5, 6):
        results.append(check_random_fidelity(n, random_pairs, rng))
    for d in (8, 16, 32):
        results.append(check_twirl(d, 10, rng))
    results.append(check_composition(8, 200, rng))
    return results
