"""Seeded experiment sweeps over (n, m, sigma) grids.

Each trial is one (data batch, noise realization) pair: a fresh synthetic
dataset pushed through the three-variant denoising pipeline. All
randomness is derived from the master seed and the trial's grid
coordinates, never from execution order, so results are identical for any
worker count; workers only shard the trial list, and the reduction is
keyed by trial index.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import channel as channel_mod
from . import dataset as dataset_mod
from . import denoise as denoise_mod
from . import plotting
from .config import ExperimentConfig

VARIANTS = (denoise_mod.VARIANT_NOISY, denoise_mod.VARIANT_PROJECTED,
            denoise_mod.VARIANT_HARMONIQ)

_CLEAN_TAG, _NOISE_TAG, _CHANNEL_TAG = 1, 2, 3


@dataclass(frozen=True)
class TrialRow:
    n: int
    d: int
    m: int
    sigma: float
    k: int
    variant: str
    trial: int
    mse: float


@dataclass(frozen=True)
class SummaryRow:
    n: int
    d: int
    m: int
    sigma: float
    k: int
    variant: str
    trials: int
    mean_mse: float
    stderr: float
    mean_normalized: float


@dataclass(frozen=True)
class SweepResult:
    config: ExperimentConfig
    trial_rows: tuple[TrialRow, ...]
    summary_rows: tuple[SummaryRow, ...]

    def mean(self, n: int, m: int, sigma: float, variant: str) -> float:
        for row in self.summary_rows:
            if (row.n, row.m, row.sigma, row.variant) == (n, m, sigma, variant):
                return row.mean_mse
        raise KeyError((n, m, sigma, variant))

    def stderr(self, n: int, m: int, sigma: float, variant: str) -> float:
        for row in self.summary_rows:
            if (row.n, row.m, row.sigma, row.variant) == (n, m, sigma, variant):
                return row.stderr
        raise KeyError((n, m, sigma, variant))


def _trial_rng(seed: int, tag: int, key: tuple[int, ...]) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(tag, *key)))


def run_trial(cfg: ExperimentConfig, ni: int, mi: int, si: int,
              batch: int, rep: int) -> tuple[float, float, float]:
    """One (batch, noise-realization) pipeline run; returns the three MSEs.

    The clean data stream depends on the grid point and batch only, so all
    noise realizations of a batch share its clean samples.
    """
    n, m, sigma = cfg.n_list[ni], cfg.m_list[mi], cfg.sigma_list[si]
    d = 1 << n
    clean_rng = _trial_rng(cfg.seed, _CLEAN_TAG, (ni, mi, si, batch))
    noise_rng = _trial_rng(cfg.seed, _NOISE_TAG, (ni, mi, si, batch, rep))
    clean, coeffs, atoms, points = dataset_mod.make_clean(d, m, clean_rng)
    noisy = dataset_mod.add_noise(clean, sigma, noise_rng, cfg.noise)
    ds = dataset_mod.SignalDataset(d, m, sigma, atoms, points, coeffs, clean, noisy)

    window = channel_mod.build_window(n, cfg.window_variance)
    pipe_cfg = denoise_mod.PipelineConfig(center=cfg.center, renormalize=cfg.renormalize,
                                          backend=cfg.backend, shots=cfg.shots)
    channel_rng = None
    if cfg.backend == "stochastic":
        channel_rng = _trial_rng(cfg.seed, _CHANNEL_TAG, (ni, mi, si, batch, rep))
    result = denoise_mod.run_pipeline(ds, window, cfg.k, pipe_cfg, channel_rng)
    return result.noisy.mse, result.projected.mse, result.harmoniq.mse


def _run_trial_args(args):
    return run_trial(*args)


def run_sweep(cfg: ExperimentConfig, workers: int = 1) -> SweepResult:
    grid = [
        (ni, mi, si, batch, rep)
        for ni in range(len(cfg.n_list))
        for mi in range(len(cfg.m_list))
        for si in range(len(cfg.sigma_list))
        for batch in range(cfg.batches)
        for rep in range(cfg.noise_reps)
    ]
    tasks = [(cfg, *point) for point in grid]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_run_trial_args, tasks, chunksize=8))
    else:
        outcomes = [run_trial(*t) for t in tasks]

    trial_rows = []
    for (ni, mi, si, batch, rep), mses in zip(grid, outcomes):
        n, m, sigma = cfg.n_list[ni], cfg.m_list[mi], cfg.sigma_list[si]
        trial = batch * cfg.noise_reps + rep
        for variant, value in zip(VARIANTS, mses):
            trial_rows.append(TrialRow(n, 1 << n, m, sigma, cfg.k, variant, trial, value))

    summary_rows = []
    for ni, n in enumerate(cfg.n_list):
        for mi, m in enumerate(cfg.m_list):
            for si, sigma in enumerate(cfg.sigma_list):
                per_variant = {
                    v: np.array([r.mse for r in trial_rows
                                 if (r.n, r.m, r.sigma, r.variant) == (n, m, sigma, v)])
                    for v in VARIANTS
                }
                noisy_mean = float(per_variant[denoise_mod.VARIANT_NOISY].mean())
                for variant in VARIANTS:
                    vals = per_variant[variant]
                    mean = float(vals.mean())
                    stderr = float(vals.std(ddof=1) / np.sqrt(vals.size)) if vals.size > 1 else 0.0
                    norm = mean / noisy_mean if noisy_mean > 0 else float("nan")
                    summary_rows.append(SummaryRow(n, 1 << n, m, sigma, cfg.k, variant,
                                                   vals.size, mean, stderr, norm))
    trial_rows.sort(key=lambda r: (r.n, r.m, r.sigma, r.variant, r.trial))
    summary_rows.sort(key=lambda r: (r.n, r.m, r.sigma, r.variant))
    return SweepResult(cfg, tuple(trial_rows), tuple(summary_rows))


# -- output files --------------------------------------------------------------

def _header(cfg: ExperimentConfig, what: str) -> list[str]:
    lines = [f"# harmoniq {what}"]
    lines.extend(f"# {ln}" for ln in cfg.header_lines())
    return lines


def write_trials_csv(path, result: SweepResult) -> None:
    lines = _header(result.config, "per-trial results")
    lines.append("n,d,m,sigma,K,variant,trial,mse")
    for r in result.trial_rows:
        lines.append(f"{r.n},{r.d},{r.m},{r.sigma!r},{r.k},{r.variant},{r.trial},{r.mse!r}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def write_summary_csv(path, result: SweepResult) -> None:
    lines = _header(result.config, "aggregated results")
    lines.append("n,d,m,sigma,K,variant,trials,mean_mse,stderr,mean_normalized")
    for r in result.summary_rows:
        lines.append(
            f"{r.n},{r.d},{r.m},{r.sigma!r},{r.k},{r.variant},{r.trials},"
            f"{r.mean_mse!r},{r.stderr!r},{r.mean_normalized!r}"
        )
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def write_inset_csv(path, result: SweepResult) -> None:
    """Absolute improvement over the Noisy baseline per grid point."""
    cfg = result.config
    lines = _header(cfg, "absolute improvement over baseline")
    lines.append("n,d,m,sigma,K,improvement_projected,improvement_harmoniq")
    for n in cfg.n_list:
        for m in cfg.m_list:
            for sigma in cfg.sigma_list:
                noisy = result.mean(n, m, sigma, denoise_mod.VARIANT_NOISY)
                proj = result.mean(n, m, sigma, denoise_mod.VARIANT_PROJECTED)
                harm = result.mean(n, m, sigma, denoise_mod.VARIANT_HARMONIQ)
                lines.append(
                    f"{n},{1 << n},{m},{sigma!r},{cfg.k},{noisy - proj!r},{noisy - harm!r}"
                )
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def _series(result: SweepResult, xaxis: str, normalized: bool):
    cfg = result.config
    series = []
    for variant in VARIANTS:
        for n in cfg.n_list:
            if xaxis == "m":
                fixed = [(m, cfg.sigma_list[0]) for m in cfg.m_list]
                xs = [m for m, _ in fixed]
            else:
                fixed = [(cfg.m_list[0], s) for s in cfg.sigma_list]
                xs = [s for _, s in fixed]
            ys = []
            for m, sigma in fixed:
                mean = result.mean(n, m, sigma, variant)
                if normalized:
                    mean /= result.mean(n, m, sigma, denoise_mod.VARIANT_NOISY)
                ys.append(mean)
            series.append((f"{variant} n={n}", xs, ys))
    return series


def write_plots(outdir, prefix: str, result: SweepResult, xaxis: str) -> list[str]:
    cfg = result.config
    xlabel = "samples m" if xaxis == "m" else "noise level sigma"
    logx = xaxis == "m"
    paths = []
    for normalized in (False, True):
        tag = "normalized" if normalized else "raw"
        path = os.path.join(outdir, f"{prefix}_{tag}.svg")
        plotting.line_plot(
            path,
            _series(result, xaxis, normalized),
            title=f"MSE vs {xlabel}" + (" (Noisy-normalized)" if normalized else ""),
            xlabel=xlabel,
            ylabel="normalized MSE" if normalized else "MSE",
            logx=logx,
            header_lines=_header(cfg, f"{prefix} {tag} plot"),
        )
        paths.append(path)
    return paths


def write_outputs(outdir, prefix: str, result: SweepResult, xaxis: str) -> list[str]:
    os.makedirs(outdir, exist_ok=True)
    cfg = result.config
    paths = []
    for name, writer in (("trials", write_trials_csv), ("summary", write_summary_csv),
                         ("inset", write_inset_csv)):
        path = os.path.join(outdir, f"{prefix}_{name}.csv")
        writer(path, result)
        paths.append(path)
    paths.extend(write_plots(outdir, prefix, result, xaxis))
    for n in cfg.n_list:
        path = os.path.join(outdir, f"window_n{n}.txt")
        channel_mod.save_window(path, channel_mod.build_window(n, cfg.window_variance))
        paths.append(path)
    return paths


def format_summary_table(result: SweepResult) -> str:
    cfg = result.config
    normalize = cfg.normalize_report
    head = "      n      m   sigma  variant      mean"
    head += "-norm" if normalize else "     "
    head += "        se  trials"
    lines = [head]
    for r in result.summary_rows:
        value = r.mean_normalized if normalize else r.mean_mse
        lines.append(
            f"{r.n:7d} {r.m:6d} {r.sigma:7.3g}  {r.variant:<10s} {value:10.5f}"
            f" {r.stderr:9.2e} {r.trials:7d}"
        )
    return "\n".join(lines)
