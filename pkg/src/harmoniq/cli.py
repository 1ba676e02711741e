"""Command-line interface.

Subcommands: verify, gen-data, compile, spectra, sweep-samples,
sweep-noise. Exit codes: 0 on success, 1 when a verification or run fails,
2 on usage errors.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import replace

import numpy as np

from . import channel as channel_mod
from . import dataset as dataset_mod
from . import sweeps, verify
from .circuits import compile_weyl
from .config import ExperimentConfig, load_config

COMPILE_CAP = 16


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", metavar="PATH", help="flat key-value config file")
    parser.add_argument("--seed", type=int, metavar="U64", help="master seed override")
    parser.add_argument("--out", metavar="DIR",
                        help="output directory (default: config `out`, else ./out)")
    parser.add_argument("--backend", choices=("dense", "stochastic"),
                        help="channel application backend")
    parser.add_argument("--shots", type=int, metavar="N",
                        help="samples for the stochastic backend")
    parser.add_argument("--no-center", action="store_true",
                        help="encode without subtracting the empirical mean")
    parser.add_argument("--no-renormalize", action="store_true",
                        help="keep raw projections instead of unit-norm ones")
    parser.add_argument("--normalize-report", action="store_true",
                        help="print Noisy-normalized means in the summary table")
    parser.add_argument("--workers", type=int, default=1, metavar="W",
                        help="worker processes for independent trials")


def _build_config(args, base: ExperimentConfig) -> ExperimentConfig:
    cfg = base
    if args.config:
        cfg = load_config(args.config, cfg)
    overrides = {}
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.backend is not None:
        overrides["backend"] = args.backend
    if args.shots is not None:
        overrides["shots"] = args.shots
    if args.no_center:
        overrides["center"] = False
    if args.no_renormalize:
        overrides["renormalize"] = False
    if args.normalize_report:
        overrides["normalize_report"] = True
    if args.out is not None:
        overrides["outdir"] = args.out
    return replace(cfg, **overrides) if overrides else cfg


def cmd_verify(args) -> int:
    results = verify.run_all(seed=args.seed if args.seed is not None else 0,
                             random_pairs=args.pairs)
    width = max(len(r.name) for r in results)
    failures = 0
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"{status}  {r.name:<{width}}  {r.detail}")
        failures += not r.passed
    print()
    print("compiled displacement gate counts (measured vs reference claim):")
    for line in verify.gate_count_report():
        print(f"  {line}")
    if failures:
        print(f"\n{failures} check(s) failed")
        return 1
    print("\nall checks passed")
    return 0


def cmd_gen_data(args) -> int:
    d = 1 << args.n
    ds = dataset_mod.generate(d, args.m, args.sigma,
                              args.seed if args.seed is not None else 0,
                              noise=args.noise)
    os.makedirs(args.out, exist_ok=True)
    clean_path = os.path.join(args.out, "data_clean.txt")
    noisy_path = os.path.join(args.out, "data_noisy.txt")
    dataset_mod.save_signals(clean_path, ds, "clean")
    dataset_mod.save_signals(noisy_path, ds, "noisy")
    print(f"wrote {clean_path}")
    print(f"wrote {noisy_path}")
    return 0


def cmd_compile(args) -> int:
    if not 1 <= args.n <= COMPILE_CAP:
        print(f"error: n must lie in [1, {COMPILE_CAP}]", file=sys.stderr)
        return 2
    circuit = compile_weyl(args.n, (args.x, args.z))
    with open(args.outfile, "w") as fh:
        fh.write(circuit.to_text())
    counts = circuit.gate_counts()
    print(f"wrote {args.outfile}")
    print(f"qubits {args.n}  H {counts['H']}  RZ {counts['RZ']}  CP {counts['CP']}"
          f"  depth {circuit.depth()}")
    return 0


def cmd_spectra(args) -> int:
    base = ExperimentConfig(n_list=(8,), m_list=(100,), sigma_list=(0.1,))
    cfg = _build_config(args, base)
    out = cfg.outdir
    n, m, sigma = cfg.n_list[0], cfg.m_list[0], cfg.sigma_list[0]
    d = 1 << n
    ds = dataset_mod.generate(d, m, sigma, cfg.seed, noise=cfg.noise)
    window = channel_mod.build_window(n, cfg.window_variance)

    rho_noisy = dataset_mod.ensemble_density(dataset_mod.encode(ds.noisy, cfg.center))
    rho_clean = dataset_mod.ensemble_density(dataset_mod.encode(ds.clean, cfg.center))
    rho_aug = channel_mod.apply_channel_dense(window, rho_noisy)
    spectra = [
        ("clean", np.sort(np.linalg.eigvalsh(rho_clean))[::-1]),
        ("noisy", np.sort(np.linalg.eigvalsh(rho_noisy))[::-1]),
        ("augmented", np.sort(np.linalg.eigvalsh(rho_aug))[::-1]),
    ]

    os.makedirs(out, exist_ok=True)
    csv_path = os.path.join(out, "spectra.csv")
    lines = [f"# harmoniq eigenvalue spectra (n={n}, m={m})"]
    lines.extend(f"# {ln}" for ln in cfg.header_lines())
    lines.append("source,index,eigenvalue")
    for label, evals in spectra:
        for i, v in enumerate(evals):
            lines.append(f"{label},{i},{float(v)!r}")
    with open(csv_path, "w") as fh:
        fh.write("\n".join(lines) + "\n")

    from . import plotting

    svg_path = os.path.join(out, "spectra.svg")
    floor = 1e-16
    series = [(label, np.arange(1, d + 1), np.log10(np.maximum(evals, floor)))
              for label, evals in spectra]
    plotting.line_plot(svg_path, series, title=f"eigenvalue spectra n={n}",
                       xlabel="index", ylabel="log10 eigenvalue",
                       header_lines=["# harmoniq spectra plot"] + [f"# {ln}" for ln in cfg.header_lines()])
    window_path = os.path.join(out, f"window_n{n}.txt")
    channel_mod.save_window(window_path, window)
    for p in (csv_path, svg_path, window_path):
        print(f"wrote {p}")
    return 0


def _run_sweep_command(args, base: ExperimentConfig, prefix: str, xaxis: str) -> int:
    cfg = _build_config(args, base)
    result = sweeps.run_sweep(cfg, workers=args.workers)
    paths = sweeps.write_outputs(cfg.outdir, prefix, result, xaxis)
    print(sweeps.format_summary_table(result))
    for p in paths:
        print(f"wrote {p}")
    return 0


def cmd_sweep_samples(args) -> int:
    base = ExperimentConfig()
    return _run_sweep_command(args, base, "sweep_samples", "m")


def cmd_sweep_noise(args) -> int:
    base = ExperimentConfig(m_list=(100,), sigma_list=(0.1, 0.3, 0.5, 1.0, 1.5))
    return _run_sweep_command(args, base, "sweep_noise", "sigma")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="harmoniq",
        description="Weyl-Heisenberg data augmentation: verification, circuit export, "
                    "synthetic data and denoising sweeps.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run the projective fidelity / twirl / composition suite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--pairs", type=int, default=100, help="random pairs per n in {5,6}")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen-data", help="write a synthetic dataset (clean and noisy files)")
    p.add_argument("--n", type=int, required=True, help="qubit count (d = 2^n)")
    p.add_argument("--m", type=int, required=True, help="sample count")
    p.add_argument("--sigma", type=float, required=True, help="noise level")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--noise", choices=("complex", "real"), default="complex")
    p.add_argument("--out", default="out")
    p.set_defaults(func=cmd_gen_data)

    p = sub.add_parser("compile", help="compile a displacement circuit to a text file")
    p.add_argument("n", type=int, help="qubit count")
    p.add_argument("x", type=int, help="shift power")
    p.add_argument("z", type=int, help="clock power")
    p.add_argument("outfile", help="destination path")
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("spectra", help="eigenvalue spectra of clean / noisy / augmented states")
    _add_common(p)
    p.set_defaults(func=cmd_spectra)

    p = sub.add_parser("sweep-samples", help="MSE vs sample count at fixed noise")
    _add_common(p)
    p.set_defaults(func=cmd_sweep_samples)

    p = sub.add_parser("sweep-noise", help="MSE vs noise level at fixed sample count")
    _add_common(p)
    p.set_defaults(func=cmd_sweep_noise)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except OSError as exc:
        path = getattr(exc, "filename", None)
        where = f" ({path})" if path else ""
        print(f"error: {exc}{where}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
