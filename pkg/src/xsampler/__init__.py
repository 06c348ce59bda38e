"""Sub-Nyquist sampling of multipulse signals through Gabor frames.

A time-limited signal made of a few short pulses is mixed with ``M``
Bernoulli combinations of shifted windows, giving samples ``X = C Z`` of its
truncated Gabor coefficients ``Z``.  The row-sparse ``Z`` is recovered by a
greedy joint-sparse pursuit and the signal resynthesized with the dual window.
"""
from .baselines import BaselineReport, fourier_truncated, shannon_interp
from .errors import (ConfigError, GridMismatchError, NotAFrameError, NumericalError,
                     PlacementError, RankDeficientError, ResolutionError, XSamplerError,
                     ZeroSignalError)
from .frames import (FrameConstants, GaborFrame, Window, build_frame, bspline_window,
                     canonical_dual, cosine_frame, essential_band, frame_bounds,
                     frame_constants, s0_norm, trapezoid_pair, window_from_h)
from .recovery import (RecoveryResult, SupportSet, best_s_term, empirical_rip,
                       ls_on_support, recover_noisy, somp)
from .sampler import (FilterBank, MeasurementEnsemble, SampleMatrix, acquire, acquire_fast,
                      bernoulli_matrix, filter_representation, waveform)
from .signal_model import (DEFAULT_GRID, GridSpec, ModelParams, PulseSpec, SampledSignal,
                           add_noise, generate_multipulse, quantize_matrix, relative_error,
                           tail_energy_fraction)
from .transform import (CoefficientGrid, LatticeExtent, analyze, coefficient_energy,
                        lattice_extent, synthesize, truncation_bound)

__version__ = "0.1.0"

__all__ = [
    "BaselineReport", "CoefficientGrid", "ConfigError", "DEFAULT_GRID", "FilterBank",
    "FrameConstants", "GaborFrame", "GridMismatchError", "GridSpec", "LatticeExtent",
    "MeasurementEnsemble", "ModelParams", "NotAFrameError", "NumericalError", "PlacementError",
    "PulseSpec", "RankDeficientError", "RecoveryResult", "ResolutionError", "SampleMatrix",
    "SampledSignal", "SupportSet", "Window", "XSamplerError", "ZeroSignalError", "acquire",
    "acquire_fast", "add_noise", "analyze", "bernoulli_matrix", "best_s_term", "bspline_window",
    "build_frame", "canonical_dual", "coefficient_energy", "cosine_frame", "empirical_rip",
    "essential_band", "filter_representation", "fourier_truncated", "frame_bounds",
    "frame_constants", "generate_multipulse", "lattice_extent", "ls_on_support",
    "quantize_matrix", "recover_noisy", "relative_error", "s0_norm", "shannon_interp", "somp",
    "synthesize", "tail_energy_fraction", "trapezoid_pair", "truncation_bound", "waveform",
    "window_from_h",
]
