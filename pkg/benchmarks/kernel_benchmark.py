"""Benchmark the statevector gate kernels: numba vs pure-numpy fallback.

Measures repeated application of a compiled displacement circuit to a
random statevector. Without HARMONIQ_KERNELS set, this script launches
itself once per backend in a subprocess (the kernel implementation is
chosen at import time) and prints a comparison table.
"""

from __future__ import annotations

import argparse
import os
import subprocess
import sys
import time

import numpy as np


def measure(n: int, reps: int) -> float:
    from harmoniq.circuits import apply_circuit, compile_weyl

    rng = np.random.default_rng(0)
    d = 1 << n
    psi = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    psi /= np.linalg.norm(psi)
    circuit = compile_weyl(n, (3, 5))
    apply_circuit(circuit, psi)  # warm-up (JIT compile / cache load)
    start = time.perf_counter()
    for _ in range(reps):
        apply_circuit(circuit, psi)
    return time.perf_counter() - start


def run_single(args) -> None:
    from harmoniq.kernels import active_backend

    for n in args.n:
        elapsed = measure(n, args.reps)
        rate = args.reps / elapsed
        print(f"RESULT backend={active_backend()} n={n} reps={args.reps} "
              f"elapsed={elapsed:.4f}s circuits_per_sec={rate:.1f}")


def run_comparison(args) -> None:
    rows: dict[str, list[str]] = {}
    for backend in ("numba", "numpy"):
        env = dict(os.environ, HARMONIQ_KERNELS=backend)
        cmd = [sys.executable, __file__, "--reps", str(args.reps)]
        for n in args.n:
            cmd += ["--n", str(n)]
        out = subprocess.run(cmd, env=env, capture_output=True, text=True, check=True)
        rows[backend] = [ln for ln in out.stdout.splitlines() if ln.startswith("RESULT")]
    print(f"{'n':>4} {'reps':>7} {'numba [s]':>12} {'numpy [s]':>12} {'speedup':>9}")
    for nb_line, np_line in zip(rows["numba"], rows["numpy"]):
        nb = dict(kv.split("=") for kv in nb_line.split()[1:])
        pure = dict(kv.split("=") for kv in np_line.split()[1:])
        t_nb = float(nb["elapsed"].rstrip("s"))
        t_np = float(pure["elapsed"].rstrip("s"))
        print(f"{nb['n']:>4} {nb['reps']:>7} {t_nb:12.4f} {t_np:12.4f} {t_np / t_nb:8.1f}x")


def main() -> None:
    parser = argparse.ArgumentParser(description="Gate-kernel throughput: numba vs numpy")
    parser.add_argument("--n", type=int, action="append",
                        help="qubit count (repeatable; default 6 8 10)")
    parser.add_argument("--reps", type=int, default=2000)
    args = parser.parse_args()
    if args.n is None:
        args.n = [6, 8, 10]
    if os.environ.get("HARMONIQ_KERNELS"):
        run_single(args)
    else:
        run_comparison(args)


if __name__ == "__main__":
    main()
