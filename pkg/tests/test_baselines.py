import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from xsampler.baselines import (BaselineReport, fourier_coefficients, fourier_truncated,
                                sample_counts, shannon_interp, shannon_points, sinc,
                                spectrum_l1_tail)
from xsampler.errors import ZeroSignalError
from xsampler.signal_model import (DEFAULT_GRID, PulseSpec, SampledSignal, signal_from_pulses,
                                   zero_signal)

from conftest import TABLE_MODEL


def periodic_cosine():
    t = DEFAULT_GRID.times()
    return SampledSignal(DEFAULT_GRID, np.where(np.abs(t) <= 4, np.cos(2 * np.pi * t / 8), 0.0), 8.0)


# Fourier ---------------------------------------------------------------------

def test_single_harmonic_is_exact():
    rep = fourier_truncated(periodic_cosine(), 1)
    assert rep.sample_count == 3
    assert rep.measured_error < 1e-12
    assert rep.error_bound < 1e-12


def test_fourier_coefficients_of_harmonic():
    c = fourier_coefficients(periodic_cosine(), 2)
    np.testing.assert_allclose(c, [0, 0.5, 0, 0.5, 0], atol=1e-12)


def test_fourier_at_601_samples(signal):
    rep = fourier_truncated(signal, 300)
    assert rep.sample_count == 601
    assert rep.measured_error <= 0.03


def test_fourier_error_decreases_with_l0(signal):
    errs = [fourier_truncated(signal, L0).measured_error for L0 in (25, 50, 100, 200, 400)]
    assert errs == sorted(errs, reverse=True)


@pytest.mark.parametrize("L0", [10, 50, 150, 300])
def test_fourier_error_within_bound(signal, L0):
    rep = fourier_truncated(signal, L0)
    assert rep.measured_error <= 1.02 * rep.error_bound


def test_fourier_reconstruction_vanishes_outside(signal):
    rep = fourier_truncated(signal, 20)
    assert not rep.reconstruction.values[np.abs(signal.t) > 4 + 1e-6].any()


def test_fourier_rejects_negative_l0(signal):
    with pytest.raises(ValueError):
        fourier_truncated(signal, -1)


# Shannon ---------------------------------------------------------------------

def test_sinc_values():
    np.testing.assert_allclose(sinc([0.0, np.pi, np.pi / 2, 1e-9]), [1, 0, 2 / np.pi, 1], atol=1e-15)


@given(x=st.floats(-50, 50))
def test_sinc_matches_numpy(x):
    assert sinc(x) == pytest.approx(np.sinc(x / np.pi), abs=1e-12)


def test_smooth_pulse_reconstructed_closely():
    f = signal_from_pulses([PulseSpec("bspline4", 3.0)], 8.0)
    rep = shannon_interp(f, 40.0)
    assert rep.measured_error < 1e-5
    assert rep.measured_error <= rep.error_bound


def test_shannon_point_count(signal):
    # K0 = ceil(75 * 8 / 2) - 1 = 299
    assert shannon_points(signal, 75.0).size == 599


def test_known_supports_use_few_points(signal):
    full = shannon_interp(signal, 75.0)
    known = shannon_interp(signal, 75.0, known_supports=True)
    m = TABLE_MODEL
    assert known.sample_count <= 1.2 * m.N * m.W * 75.0
    assert known.measured_error == pytest.approx(full.measured_error, abs=1e-6)


@pytest.mark.parametrize("Omega2", [20.0, 40.0, 75.0, 150.0])
def test_shannon_error_within_bound(signal, Omega2):
    rep = shannon_interp(signal, Omega2)
    assert rep.measured_error <= 1.02 * rep.error_bound


def test_shannon_bound_decreases_with_rate(signal):
    bounds = [shannon_interp(signal, O).error_bound for O in (20.0, 40.0, 80.0, 160.0)]
    assert bounds == sorted(bounds, reverse=True)


def test_spectrum_tail_limits(signal):
    assert spectrum_l1_tail(signal, 2 * signal.grid.nyquist + 1) == 0.0
    assert spectrum_l1_tail(signal, 10.0) > spectrum_l1_tail(signal, 50.0) > 0


def test_shannon_validation(signal):
    with pytest.raises(ValueError):
        shannon_interp(signal, 0.0)
    bare = SampledSignal(signal.grid, signal.values, 8.0)
    with pytest.raises(ValueError):
        shannon_points(bare, 75.0, known_supports=True)


def test_zero_signal_raises():
    with pytest.raises(ZeroSignalError):
        fourier_truncated(zero_signal(DEFAULT_GRID, 8.0), 5)


# reports and budgets ---------------------------------------------------------

def test_report_validation(signal):
    with pytest.raises(ValueError):
        BaselineReport("wavelet", 3, signal, 0.1, 0.1)
    with pytest.raises(ValueError):
        BaselineReport("fourier", 0, signal, 0.1, 0.1)


def test_sample_counts():
    c = sample_counts(3, 0.13, 8.0, 75.0, 20.0, 0.5)
    assert c["fourier"] == c["shannon_unknown"] == 600.0
    assert c["shannon_known"] == pytest.approx(29.25)
    assert c["gabor_unknown"] == pytest.approx(2 * c["gabor_known"]) == pytest.approx(62.4)
    assert math.isclose(c["gabor_known"], 31.2)
