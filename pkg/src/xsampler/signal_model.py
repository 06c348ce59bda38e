"""Multipulse test signals on a uniform time grid.

A signal is a sum of ``N`` short pulses, each no wider than ``W``, placed
inside ``[-beta/2, beta/2]``.  Everything here is a pure function of its
inputs and an explicit integer seed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .bspline import bspline
from .errors import GridMismatchError, PlacementError, ZeroSignalError

PULSE_SHAPES = ("bspline2", "bspline4", "cosine", "table")
_MAX_PLACEMENT_TRIES = 10_000


@dataclass(frozen=True)
class GridSpec:
    t_start: float
    t_end: float
    dt: float
    n_points: int

    def __post_init__(self):
        if not self.dt > 0:
            raise ValueError(f"dt must be positive, got {self.dt}")
        if not self.t_end > self.t_start:
            raise ValueError("t_end must exceed t_start")
        if self.n_points < 2:
            raise ValueError("a grid needs at least two points")

    @classmethod
    def from_range(cls, t_start: float, t_end: float, dt: float) -> "GridSpec":
        n = int(round((t_end - t_start) / dt)) + 1
        return cls(t_start, t_end, dt, n)

    @classmethod
    def symmetric(cls, half_width: float, dt: float) -> "GridSpec":
        """Grid on ``[-half_width, half_width]`` whose points are exact multiples of dt."""
        m = int(round(half_width / dt))
        return cls(-m * dt, m * dt, dt, 2 * m + 1)

    def times(self) -> np.ndarray:
        return self.t_start + self.dt * np.arange(self.n_points)

    def trapezoid_weights(self) -> np.ndarray:
        w = np.full(self.n_points, self.dt)
        w[0] = w[-1] = self.dt / 2
        return w

    def interval_weights(self, lo: float, hi: float) -> np.ndarray:
        """Composite trapezoid weights for the grid points inside ``[lo, hi]``."""
        t = self.times()
        tol = 1e-9 * self.dt
        inside = np.flatnonzero((t >= lo - tol) & (t <= hi + tol))
        w = np.zeros(self.n_points)
        if inside.size >= 2:
            w[inside] = self.dt
            w[inside[0]] = w[inside[-1]] = self.dt / 2
        return w

    @property
    def nyquist(self) -> float:
        return 0.5 / self.dt


DEFAULT_GRID = GridSpec.symmetric(4.5, 1.0 / 2048)


@dataclass(frozen=True)
class PulseSpec:
    """One pulse ``amplitude * shape((t - center) / width)`` with unit-width shape.

    B-spline shapes are scaled to unit peak.  ``table`` holds samples of a
    custom shape on equispaced nodes across ``[-1/2, 1/2]`` (linear interpolation).
    """

    shape: str
    width: float
    center: float = 0.0
    amplitude: float = 1.0
    table: tuple[float, ...] | None = None

    def __post_init__(self):
        if self.shape not in PULSE_SHAPES:
            raise ValueError(f"unknown pulse shape {self.shape!r}")
        if self.shape == "table" and not self.table:
            raise ValueError("a table pulse needs sample values")
        if not self.width > 0:
            raise ValueError("pulse width must be positive")

    def __call__(self, t) -> np.ndarray:
        u = (np.asarray(t, dtype=float) - self.center) / self.width
        return self.amplitude * unit_pulse(self.shape, u, self.table)

    @property
    def interval(self) -> tuple[float, float]:
        return self.center - self.width / 2, self.center + self.width / 2


def unit_pulse(shape: str, u, table=None) -> np.ndarray:
    """Pulse shape supported on ``|u| <= 1/2``."""
    u = np.asarray(u, dtype=float)
    if shape == "cosine":
        return np.where(np.abs(u) <= 0.5, np.cos(np.pi * u), 0.0)
    if shape in ("bspline2", "bspline4"):
        order = int(shape[-1])
        return bspline(order, order * u) / bspline(order, 0.0)
    nodes = np.linspace(-0.5, 0.5, len(table))
    return np.interp(u, nodes, np.asarray(table, dtype=float), left=0.0, right=0.0)


@dataclass(frozen=True)
class ModelParams:
    N: int
    W: float
    beta: float
    Omega: float
    eps_Omega: float = 0.0

    def __post_init__(self):
        if self.N < 0:
            raise ValueError("N must be non-negative")
        if not (self.W > 0 and self.beta > 0):
            raise ValueError("W and beta must be positive")
        if self.N * self.W > self.beta:
            raise ValueError(f"N*W = {self.N * self.W} exceeds beta = {self.beta}")
        if not self.Omega > 0:
            raise ValueError("Omega must be positive")
        if not 0 <= self.eps_Omega < 1:
            raise ValueError("eps_Omega must lie in [0, 1)")


@dataclass(frozen=True, eq=False)
class SampledSignal:
    grid: GridSpec
    values: np.ndarray
    support_beta: float
    pulses: tuple[PulseSpec, ...] = field(default=())

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.shape != (self.grid.n_points,):
            raise ValueError(f"expected {self.grid.n_points} samples, got {values.shape}")
        if not np.all(np.isfinite(values)):
            raise ValueError("signal contains NaN or Inf")
        outside = np.abs(self.grid.times()) > self.support_beta / 2 + 1e-9 * self.grid.dt
        if np.any(np.abs(values[outside]) > 1e-12):
            raise ValueError("signal is nonzero outside [-beta/2, beta/2]")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def t(self) -> np.ndarray:
        return self.grid.times()

    def support_weights(self) -> np.ndarray:
        """Trapezoid weights restricted to ``[-beta/2, beta/2]``."""
        return self.grid.interval_weights(-self.support_beta / 2, self.support_beta / 2)

    def norm(self) -> float:
        return math.sqrt(float(np.dot(self.grid.trapezoid_weights(), self.values**2)))

    def evaluate(self, t) -> np.ndarray:
        """Closed-form values when the pulses are known, else linear interpolation."""
        t = np.asarray(t, dtype=float)
        if self.pulses:
            return sum(p(t) for p in self.pulses)
        return np.interp(t, self.t, self.values, left=0.0, right=0.0)

    def with_values(self, values, support_beta: float | None = None) -> "SampledSignal":
        beta = self.support_beta if support_beta is None else support_beta
        return SampledSignal(self.grid, values, beta)


def zero_signal(grid: GridSpec, beta: float) -> SampledSignal:
    return SampledSignal(grid, np.zeros(grid.n_points), beta)


def signal_from_pulses(pulses: Sequence[PulseSpec], beta: float,
                       grid: GridSpec = DEFAULT_GRID) -> SampledSignal:
    pulses = tuple(pulses)
    t = grid.times()
    values = np.zeros(grid.n_points)
    for p in pulses:
        values += p(t)
    return SampledSignal(grid, values, beta, pulses)


def generate_multipulse(params: ModelParams, shapes: Sequence[str], seed: int,
                        allow_overlap: bool = False, grid: GridSpec = DEFAULT_GRID,
                        amplitude: float = 1.0,
                        widths: Sequence[float] | None = None) -> SampledSignal:
    """Place ``params.N`` pulses uniformly at random inside the support.

    Shapes are cycled when fewer than ``N`` are given.  Disjoint placement is
    done by rejection sampling.
    """
    N, beta = params.N, params.beta
    if N == 0:
        return zero_signal(grid, beta)
    if not shapes:
        raise ValueError("at least one pulse shape is required")
    if widths is None:
        widths = [params.W] * N
    widths = [float(w) for w in widths]
    if len(widths) != N or max(widths) > params.W:
        raise ValueError("need N widths, each at most W")
    if grid.t_start > -beta / 2 or grid.t_end < beta / 2:
        raise ValueError("grid does not cover [-beta/2, beta/2]")
    if not allow_overlap and sum(widths) > beta:
        raise PlacementError(f"{N} disjoint pulses do not fit into beta={beta}")

    rng = np.random.default_rng(seed)
    half = np.array(widths) / 2
    for _ in range(_MAX_PLACEMENT_TRIES):
        centers = rng.uniform(-beta / 2 + half, beta / 2 - half)
        if allow_overlap or _disjoint(centers, half):
            break
    else:
        raise PlacementError(f"no disjoint placement found after {_MAX_PLACEMENT_TRIES} draws")

    pulses = [PulseSpec(shapes[n % len(shapes)], widths[n], float(centers[n]), amplitude)
              for n in range(N)]
    return signal_from_pulses(pulses, beta, grid)


def _disjoint(centers, half) -> bool:
    order = np.argsort(centers)
    c, h = centers[order], half[order]
    return bool(np.all(c[1:] - h[1:] >= c[:-1] + h[:-1]))


def _power_spectrum(f: SampledSignal):
    spec = np.fft.rfft(f.values)
    power = np.abs(spec) ** 2
    power[1:] *= 2
    if f.grid.n_points % 2 == 0:
        power[-1] /= 2
    return np.fft.rfftfreq(f.grid.n_points, f.grid.dt), power


def tail_energy_fraction(f: SampledSignal, Omega: float) -> float:
    """Relative L2 energy of the spectrum outside ``[-Omega/2, Omega/2]``.

    Accurate when the grid Nyquist frequency is at least ``4 * Omega``.
    """
    freqs, power = _power_spectrum(f)
    total = power.sum()
    if total == 0:
        raise ZeroSignalError("tail fraction of a zero signal is undefined")
    tail = power[freqs > Omega / 2].sum()
    return float(min(1.0, math.sqrt(tail / total)))


def add_noise(f: SampledSignal, snr_db: float, seed: int) -> SampledSignal:
    """White Gaussian noise on the support interval at exactly ``snr_db``."""
    if math.isinf(snr_db) and snr_db > 0:
        return f
    w = f.support_weights()
    inside = w > 0
    rng = np.random.default_rng(seed)
    noise = np.zeros(f.grid.n_points)
    noise[inside] = rng.standard_normal(int(inside.sum()))
    signal_energy = float(np.dot(w, f.values**2))
    if signal_energy == 0:
        raise ZeroSignalError("cannot set an SNR for a zero signal")
    noise_energy = float(np.dot(w, noise**2))
    noise *= math.sqrt(signal_energy / noise_energy * 10 ** (-snr_db / 10))
    return SampledSignal(f.grid, f.values + noise, f.support_beta)


def quantize_matrix(X, bits: int) -> np.ndarray:
    """Uniform mid-tread quantizer applied separately to real and imaginary parts.

    Each part uses ``2**bits`` levels evenly spaced over ``[-m, m]`` where
    ``m`` is that part's largest magnitude.
    """
    if bits < 1:
        raise ValueError(f"bits must be >= 1, got {bits}")
    X = np.asarray(X)
    if np.iscomplexobj(X):
        return _quantize_real(X.real, bits) + 1j * _quantize_real(X.imag, bits)
    return _quantize_real(X, bits)


def _quantize_real(x, bits):
    x = np.asarray(x, dtype=float)
    m = float(np.max(np.abs(x))) if x.size else 0.0
    if m == 0:
        return np.zeros_like(x)
    top = float(2**bits - 1)
    j = np.clip(np.round((x / m + 1) * (top / 2)), 0, top)
    return m * (2 * j / top - 1)


def quantization_step(X, bits: int) -> float:
    X = np.asarray(X)
    m = max(float(np.max(np.abs(X.real))), float(np.max(np.abs(X.imag))) if np.iscomplexobj(X) else 0.0)
    return 2 * m / (2**bits - 1)


def relative_error(f: SampledSignal, f_hat: SampledSignal) -> float:
    if f.grid != f_hat.grid:
        raise GridMismatchError(f"grids differ: {f.grid} vs {f_hat.grid}")
    w = f.grid.trapezoid_weights()
    ref = float(np.dot(w, f.values**2))
    if ref == 0:
        raise ZeroSignalError("relative error against a zero signal")
    diff = float(np.dot(w, (f.values - f_hat.values) ** 2))
    return math.sqrt(diff / ref)


def support_measure(f: SampledSignal, tol: float = 0.0) -> float:
    """Length of the set where ``|f| > tol``, counted in grid cells."""
    return float(np.count_nonzero(np.abs(f.values) > tol)) * f.grid.dt


__all__ = [
    "DEFAULT_GRID", "GridSpec", "ModelParams", "PulseSpec", "SampledSignal",
    "add_noise", "generate_multipulse", "quantization_step", "quantize_matrix",
    "relative_error", "signal_from_pulses", "support_measure",
    "tail_energy_fraction", "unit_pulse", "zero_signal",
]
