"""Modulate-and-integrate acquisition with Bernoulli mixing waveforms.

Channel ``r = (m, l)`` multiplies the input by

    p_r(t) = exp(-2 pi i b l t) * sum_k c[m, k] * conj(g(t - a k))

and integrates over ``[-beta/2, beta/2]``, so that ``X = C Z``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .frames import GaborFrame
from .signal_model import GridSpec, SampledSignal
from .transform import CoefficientGrid, LatticeExtent, _window_table


@dataclass(frozen=True, eq=False)
class MeasurementEnsemble:
    C: np.ndarray
    seed: int | None
    frame: GaborFrame | None = None
    extent: LatticeExtent | None = None

    def __post_init__(self):
        C = np.asarray(self.C, dtype=float)
        if C.ndim != 2:
            raise ValueError("C must be a matrix")
        if self.extent is not None and C.shape[1] != self.extent.K:
            raise ValueError(f"C has {C.shape[1]} columns, extent has K={self.extent.K}")
        C.setflags(write=False)
        object.__setattr__(self, "C", C)

    @property
    def M(self) -> int:
        return self.C.shape[0]

    @property
    def K(self) -> int:
        return self.C.shape[1]


@dataclass(frozen=True, eq=False)
class SampleMatrix:
    X: np.ndarray
    noise: np.ndarray | None = None

    def __post_init__(self):
        X = np.asarray(self.X, dtype=complex)
        if X.ndim != 2 or not np.all(np.isfinite(X)):
            raise ValueError("sample matrix must be a finite 2-D array")
        object.__setattr__(self, "X", X)

    def with_noise(self, N) -> "SampleMatrix":
        N = np.asarray(N, dtype=complex)
        if N.shape != self.X.shape:
            raise ValueError("noise must match the sample matrix shape")
        return SampleMatrix(self.X + N, N)


def bernoulli_matrix(M: int, K: int, seed: int, *, allow_oversampled: bool = False,
                     identity: bool = False, frame: GaborFrame | None = None,
                     extent: LatticeExtent | None = None) -> MeasurementEnsemble:
    """i.i.d. equiprobable +-1 mixing coefficients, deterministic per seed.

    ``identity=True`` returns ``C = I`` (requires ``M == K``), which reduces
    the system to one channel per Gabor coefficient.
    """
    if M < 1 or K < 1:
        raise ValueError("M and K must be positive")
    if identity:
        if M != K:
            raise ValueError("the identity ensemble needs M == K")
        return MeasurementEnsemble(np.eye(K), seed, frame, extent)
    if M > K and not allow_oversampled:
        raise ValueError(f"M={M} exceeds K={K}; pass allow_oversampled=True")
    rng = np.random.default_rng(seed)
    C = 2.0 * rng.integers(0, 2, size=(M, K)) - 1.0
    return MeasurementEnsemble(C, seed, frame, extent)


def _require_lattice(ens: MeasurementEnsemble) -> tuple[GaborFrame, LatticeExtent]:
    if ens.frame is None or ens.extent is None:
        raise ValueError("ensemble has no frame/extent attached")
    return ens.frame, ens.extent


def mixing_windows(ens: MeasurementEnsemble, grid: GridSpec) -> np.ndarray:
    """Grid samples of ``s_m(t) = sum_k c[m, k] conj(g(t - a k))``, shape (M, n)."""
    frame, extent = _require_lattice(ens)
    s = np.zeros((ens.M, grid.n_points))
    for k, slab in enumerate(_window_table(frame, grid, extent.K0)):
        s[:, slab.lo:slab.hi] += np.outer(ens.C[:, k], slab.g)
    return s


def waveform(m: int, l: int, ens: MeasurementEnsemble, grid: GridSpec) -> np.ndarray:
    """Grid samples of the mixing waveform ``p_(m, l)``."""
    frame, extent = _require_lattice(ens)
    if not 0 <= m < ens.M:
        raise IndexError(f"channel m={m} outside [0, {ens.M})")
    if abs(l) > extent.L0:
        raise IndexError(f"frequency index l={l} outside [-{extent.L0}, {extent.L0}]")
    t = grid.times()
    s_m = np.zeros(grid.n_points)
    for k, slab in enumerate(_window_table(frame, grid, extent.K0)):
        s_m[slab.lo:slab.hi] += ens.C[m, k] * slab.g
    return np.exp(-2j * np.pi * frame.b * l * t) * s_m


def acquire(f: SampledSignal, ens: MeasurementEnsemble) -> SampleMatrix:
    """``X[m, l] = integral over [-beta/2, beta/2] of f(t) p_(m, l)(t) dt``."""
    frame, extent = _require_lattice(ens)
    w = f.support_weights()
    inside = np.flatnonzero(w)
    s = mixing_windows(ens, f.grid)[:, inside]
    t = f.t[inside]
    E = np.exp(-2j * np.pi * frame.b * np.outer(t, extent.ls()))
    return SampleMatrix((s * (f.values[inside] * w[inside])) @ E)


def acquire_fast(Zg: CoefficientGrid, ens: MeasurementEnsemble) -> SampleMatrix:
    """``X = C Z`` directly from a coefficient grid."""
    if Zg.Z.shape[0] != ens.K:
        raise ValueError(f"Z has {Zg.Z.shape[0]} rows but C has {ens.K} columns")
    return SampleMatrix(ens.C @ Zg.Z)


@dataclass(frozen=True, eq=False)
class FilterBank:
    """Single-filter form of the sampler: L modulators, one filter, M samples each.

    The filter is ``s(t) = sum_m s_m(t + tau m)`` with ``tau = alpha K``; the
    ``l``-th branch output sampled at ``t = tau m`` equals ``x_m[l]``.
    """

    ens: MeasurementEnsemble

    @property
    def tau(self) -> float:
        frame, extent = _require_lattice(self.ens)
        return frame.alpha * extent.K

    @property
    def theta(self) -> float:
        return _require_lattice(self.ens)[0].b

    def block_support(self, m: int) -> tuple[float, float]:
        """Support of the shifted block ``s_m(t + tau m)``."""
        frame, extent = _require_lattice(self.ens)
        reach = frame.alpha / 2 + frame.a * extent.K0
        return -reach - self.tau * m, reach - self.tau * m

    def block(self, m: int, t) -> np.ndarray:
        """``s_m(t)`` evaluated from the window closed form."""
        frame, extent = _require_lattice(self.ens)
        t = np.asarray(t, dtype=float)
        out = np.zeros_like(t)
        half = frame.alpha / 2
        for k, c in zip(extent.ks(), self.ens.C[m]):
            center = frame.a * k
            sel = np.abs(t - center) <= half
            if sel.any():
                out[sel] += c * frame.g(t[sel] - center)
        return out

    def __call__(self, t) -> np.ndarray:
        """Composite filter ``s(t)``; blocks not touching ``t`` are skipped."""
        t = np.asarray(t, dtype=float)
        out = np.zeros_like(t)
        if t.size == 0:
            return out
        lo, hi = t.min(), t.max()
        for n in range(self.ens.M):
            a, b = self.block_support(n)
            if b < lo or a > hi:
                continue
            out += self.block(n, t + self.tau * n)
        return out

    def sample(self, f: SampledSignal) -> SampleMatrix:
        """Outputs ``(exp(-2 pi i b l t) f(t) * s(-t))`` at ``t = tau m``."""
        frame, extent = _require_lattice(self.ens)
        w = f.support_weights()
        inside = np.flatnonzero(w)
        t = f.t[inside]
        fw = f.values[inside] * w[inside]
        E = np.exp(-2j * np.pi * frame.b * np.outer(t, extent.ls()))
        X = np.empty((self.ens.M, extent.L), dtype=complex)
        for m in range(self.ens.M):
            X[m] = (fw * self(t - self.tau * m)) @ E
        return SampleMatrix(X)


def filter_representation(ens: MeasurementEnsemble) -> FilterBank:
    _require_lattice(ens)
    return FilterBank(ens)
