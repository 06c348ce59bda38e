"""Reproducible experiment drivers and their configuration."""
from .config import ScenarioConfig, load_config
from .pipeline import TrialSpec, run_trial
from .runners import (EXPERIMENTS, format_table2, run_demo, run_noise_sweep,
                      run_quantization, run_table2)

__all__ = ["EXPERIMENTS", "ScenarioConfig", "TrialSpec", "format_table2", "load_config",
           "run_demo", "run_noise_sweep", "run_quantization", "run_table2", "run_trial"]
