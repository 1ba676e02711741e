"""Experiment configuration: defaults, flat key-value config files, overrides.

The config file format is deliberately plain so runs diff cleanly:

    # comment
    seed = 1234
    n = 6 8
    m = 5 10 20 50 100
    sigma = 0.1
    k = 3
    batches = 10
    noise_reps = 10
    backend = dense

Lists are whitespace-separated values; booleans are true/false.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

DEFAULT_SEED = 1234


@dataclass(frozen=True)
class ExperimentConfig:
    n_list: tuple[int, ...] = (6, 8)
    m_list: tuple[int, ...] = (5, 10, 20, 50, 100)
    sigma_list: tuple[float, ...] = (0.1,)
    k: int = 3
    batches: int = 10          # independent data batches
    noise_reps: int = 10       # noise realizations per batch
    seed: int = DEFAULT_SEED
    center: bool = True
    renormalize: bool = True
    noise: str = "complex"
    backend: str = "dense"
    shots: int = 20000
    normalize_report: bool = False
    window_variance: float | None = None
    outdir: str = "out"

    def __post_init__(self):
        if not self.n_list or not self.m_list or not self.sigma_list:
            raise ValueError("n, m and sigma lists must be nonempty")
        if self.batches < 1 or self.noise_reps < 1:
            raise ValueError("need at least one batch and one noise realization")
        if self.backend not in ("dense", "stochastic"):
            raise ValueError(f"unknown backend {self.backend!r}")
        if self.noise not in ("complex", "real"):
            raise ValueError(f"unknown noise convention {self.noise!r}")

    @property
    def trials(self) -> int:
        return self.batches * self.noise_reps

    def header_lines(self) -> list[str]:
        """Config echo embedded in every output file."""
        return [
            f"seed = {self.seed}",
            f"n = {' '.join(map(str, self.n_list))}",
            f"m = {' '.join(map(str, self.m_list))}",
            f"sigma = {' '.join(repr(s) for s in self.sigma_list)}",
            f"k = {self.k}",
            f"batches = {self.batches}",
            f"noise_reps = {self.noise_reps}",
            f"center = {str(self.center).lower()}",
            f"renormalize = {str(self.renormalize).lower()}",
            f"noise = {self.noise}",
            f"backend = {self.backend}",
            f"shots = {self.shots}",
            f"normalize_report = {str(self.normalize_report).lower()}",
            f"window_variance = {'default' if self.window_variance is None else repr(self.window_variance)}",
        ]


_INT_LIST = {"n": "n_list", "m": "m_list"}
_FLOAT_LIST = {"sigma": "sigma_list"}
_INT = {"k": "k", "batches": "batches", "noise_reps": "noise_reps",
        "seed": "seed", "shots": "shots"}
_BOOL = {"center": "center", "renormalize": "renormalize",
         "normalize_report": "normalize_report"}
_STR = {"noise": "noise", "backend": "backend", "out": "outdir"}


def _parse_bool(value: str, key: str) -> bool:
    low = value.strip().lower()
    if low in ("true", "1", "yes", "on"):
        return True
    if low in ("false", "0", "no", "off"):
        return False
    raise ValueError(f"config key {key!r}: cannot parse boolean from {value!r}")


def parse_config_text(text: str, base: ExperimentConfig | None = None) -> ExperimentConfig:
    cfg_kwargs = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"config line {lineno}: expected 'key = value', got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        key = key.lower()
        if key in _INT_LIST:
            cfg_kwargs[_INT_LIST[key]] = tuple(int(v) for v in value.split())
        elif key in _FLOAT_LIST:
            cfg_kwargs[_FLOAT_LIST[key]] = tuple(float(v) for v in value.split())
        elif key in _INT:
            cfg_kwargs[_INT[key]] = int(value)
        elif key in _BOOL:
            cfg_kwargs[_BOOL[key]] = _parse_bool(value, key)
        elif key in _STR:
            cfg_kwargs[_STR[key]] = value
        elif key == "window_variance":
            cfg_kwargs["window_variance"] = None if value == "default" else float(value)
        else:
            raise ValueError(f"config line {lineno}: unknown key {key!r}")
    base = base if base is not None else ExperimentConfig()
    return replace(base, **cfg_kwargs)


def load_config(path, base: ExperimentConfig | None = None) -> ExperimentConfig:
    with open(path) as fh:
        return parse_config_text(fh.read(), base)
