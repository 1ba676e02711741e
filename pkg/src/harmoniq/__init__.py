"""Weyl-Heisenberg data augmentation toolkit.

Dense displacement-operator algebra, efficient circuit compilation with a
statevector simulator, the localized augmentation channel (dense and
stochastic), synthetic time-frequency datasets with amplitude encoding,
and spectral-truncation denoising with reproducible experiment sweeps.
"""

from .channel import (AugmentationWindow, apply_channel_dense, apply_channel_stochastic,
                      build_window, identity_window, load_window, sample_displacement,
                      save_window, uniform_window)
from .circuits import (Circuit, Gate, apply_circuit, basis_state, circuit_unitary,
                       compile_clock_power, compile_qft, compile_shift_power, compile_weyl)
from .config import ExperimentConfig, load_config, parse_config_text
from .dataset import (EncodedEnsemble, SignalDataset, add_noise, encode, ensemble_density,
                      gaussian_window, generate, load_signals, make_atoms, make_clean,
                      sample_states, save_signals)
from .denoise import (DenoiseReport, PipelineConfig, PipelineResult, SpectralDecomposition,
                      eigendecompose, mse, project_topk, run_pipeline)
from .exceptions import (AlgebraViolationError, DimensionError, EncodingError,
                         VerificationScaleError, WindowError)
from .kernels import active_backend
from .linalg import projective_fidelity, trace_distance
from .weyl import (PhasePoint, as_phase_point, build_clock, build_shift, build_weyl,
                   compose_weyl, weyl_apply)

__version__ = "0.1.0"
