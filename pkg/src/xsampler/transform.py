"""Truncated Gabor analysis and synthesis on a uniform grid.

Coefficients are indexed ``z[k, l]`` for ``|k| <= K0`` (rows, time shifts
``a k``) and ``|l| <= L0`` (columns, modulations ``b l``).  Row ``i`` of
the coefficient matrix holds lattice index ``k = i - K0``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ResolutionError
from .frames import FrameConstants, GaborFrame
from .signal_model import GridSpec, SampledSignal

ZERO_ROW_THRESHOLD = 1e-10


@dataclass(frozen=True)
class LatticeExtent:
    K0: int
    L0: int

    def __post_init__(self):
        if self.K0 < 0 or self.L0 < 0:
            raise ValueError("K0 and L0 must be non-negative")

    @property
    def K(self) -> int:
        return 2 * self.K0 + 1

    @property
    def L(self) -> int:
        return 2 * self.L0 + 1

    def ks(self) -> np.ndarray:
        return np.arange(-self.K0, self.K0 + 1)

    def ls(self) -> np.ndarray:
        return np.arange(-self.L0, self.L0 + 1)


@dataclass(frozen=True, eq=False)
class CoefficientGrid:
    Z: np.ndarray
    extent: LatticeExtent
    frame: GaborFrame | None = None

    def __post_init__(self):
        Z = np.asarray(self.Z, dtype=complex)
        if Z.shape != (self.extent.K, self.extent.L):
            raise ValueError(f"Z has shape {Z.shape}, extent needs {(self.extent.K, self.extent.L)}")
        if not np.all(np.isfinite(Z)):
            raise ValueError("coefficient grid has non-finite entries")
        object.__setattr__(self, "Z", Z)

    def row_norms(self) -> np.ndarray:
        return np.linalg.norm(self.Z, axis=1)

    def nonzero_rows(self, threshold: float = ZERO_ROW_THRESHOLD) -> np.ndarray:
        """Lattice indices k of rows whose norm exceeds ``threshold * max|Z|``."""
        scale = np.abs(self.Z).max() if self.Z.size else 0.0
        if scale == 0:
            return np.array([], dtype=int)
        nz = np.any(np.abs(self.Z) > threshold * scale, axis=1)
        return np.flatnonzero(nz) - self.extent.K0


def _ceil(x: float) -> int:
    # guards against 4.000000000000001 style rounding in the lattice formulas
    return math.ceil(x - 1e-9)


def lattice_extent(beta: float, Omega: float, W: float, mu: float, B: float,
                   L0_override: int | None = None) -> LatticeExtent:
    """Time and frequency truncation extents for windows of width ``W``."""
    if min(beta, W) <= 0 or Omega < 0 or B < 0:
        raise ValueError("beta, W must be positive and Omega, B non-negative")
    if not 0 < mu < 1:
        raise ValueError("mu must lie in (0, 1)")
    K0 = _ceil((beta + W) / (2 * W * mu)) - 1
    L0 = max(0, _ceil((Omega + B) * W / 2) - 1) if L0_override is None else int(L0_override)
    return LatticeExtent(max(K0, 0), L0)


@dataclass(frozen=True)
class _Slab:
    lo: int
    hi: int
    g: np.ndarray
    gamma: np.ndarray


@lru_cache(maxsize=16)
def _window_table(frame: GaborFrame, grid: GridSpec, K0: int) -> tuple[_Slab, ...]:
    """Per-shift grid slices and window samples, reused across calls."""
    t = grid.times()
    half = frame.alpha / 2
    tol = 1e-9 * grid.dt
    slabs = []
    for k in range(-K0, K0 + 1):
        c = frame.a * k
        lo = int(np.searchsorted(t, c - half - tol, side="left"))
        hi = int(np.searchsorted(t, c + half + tol, side="right"))
        tt = t[lo:hi] - c
        g, gamma = frame.g(tt), frame.gamma(tt)
        g.setflags(write=False)
        gamma.setflags(write=False)
        slabs.append(_Slab(lo, hi, g, gamma))
    return tuple(slabs)


def _check_grid(grid: GridSpec, frame: GaborFrame, extent: LatticeExtent):
    reach = frame.a * extent.K0 + frame.alpha / 2
    if grid.t_start > -reach + 1e-9 or grid.t_end < reach - 1e-9:
        raise ValueError(f"grid [{grid.t_start}, {grid.t_end}] does not cover window shifts up to {reach}")
    if frame.b * grid.dt > 1 / 8 or extent.L0 * frame.b > grid.nyquist / 2:
        raise ResolutionError("grid too coarse for the modulation lattice")


def analyze(f: SampledSignal, frame: GaborFrame, extent: LatticeExtent) -> CoefficientGrid:
    """``z[k, l] = <f, M_{bl} T_{ak} g>`` by trapezoid quadrature."""
    grid = f.grid
    _check_grid(grid, frame, extent)
    t = grid.times()
    fw = f.values * f.support_weights()
    ls = extent.ls()
    Z = np.zeros((extent.K, extent.L), dtype=complex)
    for i, slab in enumerate(_window_table(frame, grid, extent.K0)):
        seg = fw[slab.lo:slab.hi] * slab.g
        if not seg.any():
            continue
        E = np.exp(-2j * np.pi * frame.b * np.outer(t[slab.lo:slab.hi], ls))
        Z[i] = seg @ E
    return CoefficientGrid(Z, extent, frame)


def synthesize_complex(Zg: CoefficientGrid, frame: GaborFrame, grid: GridSpec) -> np.ndarray:
    """``sum_{k,l} z[k, l] exp(2 pi i b l t) gamma(t - a k)`` on the grid."""
    extent = Zg.extent
    _check_grid(grid, frame, extent)
    t = grid.times()
    ls = extent.ls()
    out = np.zeros(grid.n_points, dtype=complex)
    for i, slab in enumerate(_window_table(frame, grid, extent.K0)):
        row = Zg.Z[i]
        if not row.any():
            continue
        E = np.exp(2j * np.pi * frame.b * np.outer(t[slab.lo:slab.hi], ls))
        out[slab.lo:slab.hi] += (E @ row) * slab.gamma
    return out


def synthesize(Zg: CoefficientGrid, frame: GaborFrame, grid: GridSpec) -> SampledSignal:
    """Real part of the truncated synthesis sum."""
    values = synthesize_complex(Zg, frame, grid).real
    reach = 2 * (frame.a * Zg.extent.K0 + frame.alpha / 2)
    return SampledSignal(grid, values, min(reach, grid.t_end - grid.t_start))


def coefficient_energy(Zg: CoefficientGrid, frame: GaborFrame) -> float:
    """Lattice-weighted energy ``b * sum |z|^2``, comparable with ``[A1, A2] * ||f||^2``."""
    return float(frame.b * np.sum(np.abs(Zg.Z) ** 2))


def truncation_bound(constants: FrameConstants, eps_Omega: float, eps_B: float,
                     f_norm: float) -> float:
    if min(eps_Omega, eps_B, f_norm) < 0:
        raise ValueError("arguments must be non-negative")
    return constants.C0_tilde * (eps_Omega + eps_B) * f_norm
