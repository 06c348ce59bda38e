"""Compactly supported Gabor windows, their duals and frame constants.

All frames here live in the painless regime: the window is supported on
``[-alpha/2, alpha/2]`` and the modulation step is ``b = 1/alpha``, so the
frame operator reduces to multiplication by

    S(t) = sum_k |g(t - a k)|^2

(the ``1/b`` factor of the full operator is absorbed into the dual,
``gamma = b g / S``).  Frame bounds are reported as ``min S`` and ``max S``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .bspline import bspline
from .errors import NotAFrameError
from .signal_model import GridSpec

DEFAULT_EPS_B = 0.15
FRAME_BOUND_FLOOR = 1e-9


@dataclass(frozen=True)
class Window:
    """A real window supported on ``[-support_alpha/2, support_alpha/2]``."""

    evaluator: Callable[[np.ndarray], np.ndarray]
    support_alpha: float
    name: str = ""

    def __call__(self, t) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        inside = np.abs(t) <= self.support_alpha / 2
        return np.where(inside, self.evaluator(t), 0.0)

    def samples(self, grid: GridSpec) -> np.ndarray:
        return self(grid.times())


# Evaluators are small frozen dataclasses so that windows hash, compare and
# pickle (the experiment pool ships frames to worker processes).

@dataclass(frozen=True)
class _Cosine:
    W: float

    def __call__(self, t):
        return np.cos(np.pi * t / self.W)


@dataclass(frozen=True)
class _Box:
    W: float

    def __call__(self, t):
        return np.where((t > -self.W / 2) & (t <= self.W / 2), 1.0, 0.0)


@dataclass(frozen=True)
class _BSpline:
    order: int
    scale: float
    gain: float = 1.0

    def __call__(self, t):
        return self.gain * bspline(self.order, t / self.scale)


def trapezoid_unit(t) -> np.ndarray:
    """Piecewise-linear window on ``[-2/3, 2/3]``, a partition of unity at shift 1."""
    x = np.abs(np.asarray(t, dtype=float))
    return np.where(x <= 1 / 3, 1.0, np.where(x <= 2 / 3, 2 - 3 * x, 0.0))


def trapezoid_dual_unit(t) -> np.ndarray:
    """Quadratic-edged dual of :func:`trapezoid_unit` on ``[-2/3, 2/3]``."""
    x = np.abs(np.asarray(t, dtype=float))
    return np.where(x <= 1 / 3, 1.0, np.where(x <= 2 / 3, -18 * x * x + 15 * x - 2, 0.0))


@dataclass(frozen=True)
class _Dilated:
    base: Callable
    scale: float
    gain: float = 1.0

    def __call__(self, t):
        return self.gain * self.base(t / self.scale)


@dataclass(frozen=True)
class _FromProfile:
    h: Callable
    mu: float
    W: float

    def __call__(self, t):
        lam = 2 * self.mu - 1
        x = t / self.W
        rise = np.clip(self.h((x + 0.5) / (1 - self.mu)), 0.0, 1.0)
        fall = np.clip(1 - self.h((x - lam / 2) / (1 - self.mu)), 0.0, 1.0)
        out = np.where(x < -lam / 2, np.sqrt(rise), 1.0)
        out = np.where(x > lam / 2, np.sqrt(fall), out)
        return np.where(np.abs(x) <= 0.5, out, 0.0)


@dataclass(frozen=True)
class FrameFunction:
    """``S(t) = sum_k |g(t - a k)|^2``, periodic with period ``a``."""

    g: Window
    a: float

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        reach = math.ceil(self.g.support_alpha / (2 * self.a)) + 1
        center = np.round(t / self.a)
        total = np.zeros_like(t)
        for j in range(-reach, reach + 1):
            total = total + self.g(t - self.a * (center + j)) ** 2
        return total


@dataclass(frozen=True)
class _CanonicalDual:
    g: Window
    a: float
    b: float

    def __call__(self, t):
        s = FrameFunction(self.g, self.a)(t)
        gt = self.g(t)
        return np.where(s > 0, self.b * gt / np.where(s > 0, s, 1.0), 0.0)


@dataclass(frozen=True)
class GaborFrame:
    g: Window
    gamma: Window
    a: float
    b: float
    mu: float
    A1: float
    A2: float
    B: float
    eps_B: float
    name: str = ""

    def __post_init__(self):
        if not 0 < self.a * self.b < 1 + 1e-12:
            raise ValueError(f"redundancy a*b = {self.a * self.b} outside (0, 1)")
        if not 0 < self.A1 <= self.A2:
            raise ValueError("frame bounds must satisfy 0 < A1 <= A2")

    @property
    def alpha(self) -> float:
        return self.g.support_alpha

    def metadata(self) -> dict:
        return {"name": self.name, "alpha": self.alpha, "a": self.a, "b": self.b,
                "mu": self.mu, "A1": self.A1, "A2": self.A2, "B": self.B,
                "eps_B": self.eps_B}


@dataclass(frozen=True)
class FrameConstants:
    C_ab: float
    s0_g: float
    s0_gamma: float
    C0_tilde: float


def cosine_window(W: float) -> Window:
    if not W > 0:
        raise ValueError("W must be positive")
    return Window(_Cosine(W), W, "cosine")


def box_window(W: float) -> Window:
    return Window(_Box(W), W, "box")


def gaussian_window(half_width: float = 3.0) -> Window:
    """``exp(-pi t^2)`` cut at ``|t| = half_width`` (below 1e-12 at the default)."""
    return Window(_Dilated(_gauss, 1.0), 2 * half_width, "gaussian")


def _gauss(t):
    return np.exp(-np.pi * np.asarray(t) ** 2)


def make_frame(g: Window, a: float, b: float, gamma: Window | None = None,
               eps_B: float = DEFAULT_EPS_B, name: str = "") -> GaborFrame:
    """Assemble a frame; the dual defaults to the canonical one."""
    A1, A2 = frame_bounds(g, a)
    if gamma is None:
        gamma = canonical_dual(g, a, b)
    B, eps = essential_band(g, eps_B)
    return GaborFrame(g, gamma, a, b, a * b, A1, A2, B, eps, name or g.name)


@lru_cache(maxsize=32)
def cosine_frame(W: float, eps_B: float = DEFAULT_EPS_B) -> GaborFrame:
    """Tight frame with ``a = W/2``, ``b = 1/W``."""
    return make_frame(cosine_window(W), W / 2, 1 / W, eps_B=eps_B, name="cosine")


@lru_cache(maxsize=32)
def trapezoid_pair(W: float, eps_B: float = DEFAULT_EPS_B) -> GaborFrame:
    """Trapezoid window and its quadratic-edged dual, dilated to width W.

    The unit pair is dual for shift 1 and modulation 3/4; after dilation by
    ``mu W`` with ``mu = 3/4`` the lattice is ``a = 3W/4``, ``b = 1/W``.  The
    dual carries the factor ``b`` required by the synthesis formula.
    """
    if not W > 0:
        raise ValueError("W must be positive")
    mu = 0.75
    scale = mu * W
    g = Window(_Dilated(trapezoid_unit, scale), W, "trapezoid")
    gamma = Window(_Dilated(trapezoid_dual_unit, scale, 1 / W), W, "trapezoid-dual")
    return make_frame(g, scale, 1 / W, gamma=gamma, eps_B=eps_B, name="trapezoid")


@lru_cache(maxsize=32)
def bspline_window(order: int, W: float, eps_B: float = DEFAULT_EPS_B,
                   peak_normalize: bool = False) -> GaborFrame:
    """``g(t) = B_N(t N / W)`` on the lattice ``a = W/N``, ``b = 1/W``.

    Unnormalized by default, so the shifts form a partition of unity.
    ``peak_normalize`` rescales to ``g(0) = 1``.
    """
    if order < 1:
        raise ValueError("B-spline order must be >= 1")
    gain = 1 / float(bspline(order, 0.0)) if peak_normalize else 1.0
    g = Window(_BSpline(order, W / order, gain), W, f"bspline{order}")
    return make_frame(g, W / order, 1 / W, eps_B=eps_B, name=f"bspline{order}")


def window_from_h(h: Callable, mu: float, W: float) -> Window:
    """Tight window built from a monotone profile ``h`` (0 below 0, 1 above 1).

    The shifts by ``mu W`` satisfy ``sum_k |g(t + k mu W)|^2 = 1``.
    """
    if not 0.5 <= mu < 1:
        raise ValueError(f"mu must lie in [1/2, 1), got {mu}")
    u = np.linspace(0.0, 1.0, 2049)
    hu = np.asarray(h(u), dtype=float)
    if np.any(np.diff(hu) < -1e-12):
        raise ValueError("profile h must be nondecreasing")
    edges = np.asarray(h(np.array([-0.5, 0.0, 1.0, 1.5])), dtype=float)
    if not np.allclose(edges, [0, 0, 1, 1], atol=1e-12):
        raise ValueError("profile h must vanish for t <= 0 and equal 1 for t >= 1")
    return Window(_FromProfile(h, mu, W), W, "from-h")


def frame_bounds(g: Window, a: float, points_per_period: int = 4096) -> tuple[float, float]:
    """``(min S, max S)`` over one period of the frame function."""
    if not 0 < a <= g.support_alpha:
        raise ValueError("painless case needs 0 < a <= alpha")
    t = a * np.arange(points_per_period) / points_per_period
    S = FrameFunction(g, a)(t)
    A1, A2 = float(S.min()), float(S.max())
    if A1 <= FRAME_BOUND_FLOOR:
        raise NotAFrameError(f"lower frame bound {A1:.3g} vanishes")
    return A1, A2


def canonical_dual(g: Window, a: float, b: float) -> Window:
    frame_bounds(g, a)
    return Window(_CanonicalDual(g, a, b), g.support_alpha, f"{g.name}-dual")


def essential_band(g: Window, eps_B_target: float, n_support: int = 4096,
                   n_fft: int = 2**20) -> tuple[float, float]:
    """Smallest band ``B`` whose L2 spectral tail fraction is at most the target.

    This is an L2 stand-in for the S0 criterion; returns ``(B, achieved)``.
    """
    if not 0 < eps_B_target < 1:
        raise ValueError("eps_B_target must lie in (0, 1)")
    alpha = g.support_alpha
    dt = alpha / n_support
    t = -alpha / 2 + dt * np.arange(n_support + 1)
    power = np.abs(np.fft.rfft(g(t), n_fft)) ** 2
    power[1:] *= 2
    freqs = np.fft.rfftfreq(n_fft, dt)
    total = power.sum()
    # tail[j] = energy strictly above freqs[j]
    tail = np.sqrt(np.clip(total - np.cumsum(power), 0, None) / total)
    j = int(np.flatnonzero(tail <= eps_B_target)[0])
    return float(2 * freqs[j]), float(tail[j])


def s0_norm(g: Window, n_t: int = 1024, fft_factor: int = 8,
            cutoff_sigmas: float = 6.0) -> float:
    """Riemann-sum estimate of ``||V_phi g||_1`` with ``phi(t) = exp(-pi t^2)``.

    The time shift ``x`` runs over the window support widened by
    ``cutoff_sigmas`` standard deviations of ``phi``; frequencies run up to
    the Nyquist rate of the ``n_t``-point window grid.
    """
    alpha = g.support_alpha
    sigma = 1 / math.sqrt(2 * math.pi)
    dt = alpha / n_t
    t = -alpha / 2 + dt * (np.arange(n_t) + 0.5)
    gt = g(t)
    dx = min(alpha, sigma) / 32
    reach = alpha / 2 + cutoff_sigmas * sigma
    x = np.arange(-reach, reach + dx / 2, dx)
    n_fft = fft_factor * n_t
    df = 1 / (n_fft * dt)
    total = 0.0
    for chunk in np.array_split(x, max(1, x.size // 64)):
        prod = gt[None, :] * np.exp(-np.pi * (t[None, :] - chunk[:, None]) ** 2)
        mag = np.abs(np.fft.rfft(prod, n_fft, axis=1)) * dt
        total += mag[:, 0].sum() + 2 * mag[:, 1:].sum()
    return float(total * dx * df)


def lattice_constant(a: float, b: float) -> float:
    return math.sqrt(1 + 1 / a) * math.sqrt(1 + 1 / b)


@lru_cache(maxsize=32)
def frame_constants(frame: GaborFrame) -> FrameConstants:
    C_ab = lattice_constant(frame.a, frame.b)
    s0_g = s0_norm(frame.g)
    s0_gamma = s0_norm(frame.gamma)
    return FrameConstants(C_ab, s0_g, s0_gamma, C_ab**2 * s0_g * s0_gamma)


def build_frame(choice: str, W: float, eps_B: float = DEFAULT_EPS_B) -> GaborFrame:
    """Frames used by the experiments: ``trapezoid``, ``cosine`` or ``bspline<N>``."""
    if choice == "trapezoid":
        return trapezoid_pair(W, eps_B)
    if choice == "cosine":
        return cosine_frame(W, eps_B)
    if choice.startswith("bspline") and choice[7:].isdigit():
        return bspline_window(int(choice[7:]), W, eps_B)
    raise ValueError(f"unknown frame {choice!r}")
