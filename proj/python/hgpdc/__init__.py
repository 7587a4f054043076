"""High-gain PDC simulator: Python access to the C++ core and its output files."""

from ._core import (
    SWEEP_HEADER,
    Config,
    ConfigError,
    Error,
    NumericalError,
    __version__,
    analytic_jsa,
    gain_to_db,
    load_config,
    metrics_from_r,
    parse_config,
    preset_config,
    presets,
    run,
    sweep,
)
from .io import read_matrix, read_modes, read_sweep

__all__ = [
    "SWEEP_HEADER",
    "Config",
    "ConfigError",
    "Error",
    "NumericalError",
    "__version__",
    "analytic_jsa",
    "gain_to_db",
    "load_config",
    "metrics_from_r",
    "parse_config",
    "preset_config",
    "presets",
    "read_matrix",
    "read_modes",
    "read_sweep",
    "run",
    "sweep",
]
