"""Reference reconstructions: truncated Fourier series and Shannon interpolation.

Errors and bounds in the reports are relative to ``||f||_2``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ZeroSignalError
from .signal_model import SampledSignal

FOURIER_TAIL_FLOOR = 32
_SINC_EPS = 1e-8


@dataclass(frozen=True, eq=False)
class BaselineReport:
    method: str
    sample_count: int
    reconstruction: SampledSignal
    error_bound: float
    measured_error: float
    max_abs_error: float = 0.0

    def __post_init__(self):
        if self.method not in ("fourier", "shannon"):
            raise ValueError(f"unknown baseline method {self.method!r}")
        if self.sample_count <= 0:
            raise ValueError("sample_count must be positive")
        if self.measured_error < 0:
            raise ValueError("measured_error must be non-negative")


def _errors(f: SampledSignal, values: np.ndarray) -> tuple[float, float]:
    norm = f.norm()
    if norm == 0:
        raise ZeroSignalError("relative error against a zero signal")
    d = f.values - values
    err = math.sqrt(float(np.dot(f.grid.trapezoid_weights(), d * d)))
    return err / norm, float(np.abs(d).max())


def fourier_coefficients(f: SampledSignal, L: int) -> np.ndarray:
    """``fhat(l / beta) = (1/beta) * integral f(t) exp(-2 pi i l t / beta)`` for ``|l| <= L``."""
    beta = f.support_beta
    w = f.support_weights()
    inside = np.flatnonzero(w)
    t = f.t[inside]
    fw = f.values[inside] * w[inside]
    ls = np.arange(-L, L + 1)
    return np.exp(-2j * np.pi * np.outer(ls, t) / beta) @ fw / beta


def fourier_truncated(f: SampledSignal, L0: int) -> BaselineReport:
    """Partial Fourier sum on ``[-beta/2, beta/2]`` using ``2 L0 + 1`` coefficients.

    The bound is ``sqrt(beta) * sum_{|l| > L0} |fhat(l/beta)|`` with the tail
    summed up to ``max(4 L0, 32)``.
    """
    if L0 < 0:
        raise ValueError("L0 must be non-negative")
    beta = f.support_beta
    L_wide = max(4 * L0, FOURIER_TAIL_FLOOR, L0 + 1)
    coef = fourier_coefficients(f, L_wide)
    ls = np.arange(-L_wide, L_wide + 1)
    keep = np.abs(ls) <= L0

    inside = np.abs(f.t) <= beta / 2 + 1e-9 * f.grid.dt
    values = np.zeros(f.grid.n_points)
    E = np.exp(2j * np.pi * np.outer(f.t[inside], ls[keep]) / beta)
    values[inside] = (E @ coef[keep]).real
    recon = SampledSignal(f.grid, values, beta)

    measured, max_abs = _errors(f, values)
    bound = math.sqrt(beta) * float(np.abs(coef[~keep]).sum()) / f.norm()
    return BaselineReport("fourier", 2 * L0 + 1, recon, bound, measured, max_abs)


def sinc(x) -> np.ndarray:
    """``sin(x)/x`` with the removable singularity handled by its Taylor value."""
    x = np.asarray(x, dtype=float)
    out = np.empty_like(x)
    small = np.abs(x) < _SINC_EPS
    out[small] = 1.0 - x[small] ** 2 / 6
    xs = x[~small]
    out[~small] = np.sin(xs) / xs
    return out


def spectrum_l1_tail(f: SampledSignal, Omega2: float, pad: int = 4) -> float:
    """``integral_{|w| > Omega2/2} |fhat(w)| dw`` on the zero-padded DFT."""
    n = pad * f.grid.n_points
    F = np.abs(np.fft.rfft(f.values, n)) * f.grid.dt
    freqs = np.fft.rfftfreq(n, f.grid.dt)
    df = freqs[1]
    # real signal: the negative half mirrors the positive one
    return float(2 * F[freqs > Omega2 / 2].sum() * df)


def shannon_points(f: SampledSignal, Omega2: float, known_supports: bool = False) -> np.ndarray:
    """Integer sample indices ``k`` used by the Shannon series."""
    K0 = math.ceil(Omega2 * f.support_beta / 2) - 1
    ks = np.arange(-K0, K0 + 1)
    if not known_supports:
        return ks
    if not f.pulses:
        raise ValueError("known-support sampling needs the pulse list")
    tk = ks / Omega2
    mask = np.zeros(ks.size, dtype=bool)
    for p in f.pulses:
        lo, hi = p.interval
        mask |= (tk >= lo) & (tk <= hi)
    return ks[mask]


def shannon_interp(f: SampledSignal, Omega2: float, known_supports: bool = False) -> BaselineReport:
    """Sinc series from point samples ``f(k / Omega2)``.

    With ``known_supports`` only points inside the pulse supports are taken;
    the others are zero by construction.  The bound is ``sqrt(beta)`` times
    the pointwise L1 spectral tail.
    """
    if Omega2 <= 0:
        raise ValueError("Omega2 must be positive")
    ks = shannon_points(f, Omega2, known_supports)
    if ks.size == 0:
        raise ValueError("no sample points selected")
    samples = f.evaluate(ks / Omega2)
    t = f.t
    values = np.zeros(f.grid.n_points)
    for chunk in np.array_split(np.arange(ks.size), max(1, ks.size // 64)):
        x = np.pi * Omega2 * (t[:, None] - ks[chunk][None, :] / Omega2)
        values += sinc(x) @ samples[chunk]
    inside = np.abs(t) <= f.support_beta / 2 + 1e-9 * f.grid.dt
    values[~inside] = 0.0
    recon = SampledSignal(f.grid, values, f.support_beta)

    measured, max_abs = _errors(f, values)
    bound = math.sqrt(f.support_beta) * spectrum_l1_tail(f, Omega2) / f.norm()
    return BaselineReport("shannon", int(ks.size), recon, bound, measured, max_abs)


def sample_counts(N: int, W: float, beta: float, Omega2: float, Omega1: float,
                  mu: float) -> dict[str, float]:
    """Approximate sample budgets for the three approaches."""
    return {
        "fourier": Omega2 * beta,
        "shannon_unknown": Omega2 * beta,
        "shannon_known": Omega2 * N * W,
        "gabor_known": 2 * Omega1 * W * N / mu,
        "gabor_unknown": 4 * Omega1 * W * N / mu,
    }
