from .config import ExperimentConfig, parse_config, parse_config_file
from .harness import (
    FitResult,
    choose_parameters,
    fit_loglog,
    perturbation,
    rescale,
    rough_field,
    run_almost_conservation,
    run_growth,
    run_rescaling_report,
    run_simulation,
    run_stability,
)

__all__ = [
    "ExperimentConfig",
    "parse_config",
    "parse_config_file",
    "FitResult",
    "choose_parameters",
    "fit_loglog",
    "perturbation",
    "rescale",
    "rough_field",
    "run_almost_conservation",
    "run_growth",
    "run_rescaling_report",
    "run_simulation",
    "run_stability",
]
