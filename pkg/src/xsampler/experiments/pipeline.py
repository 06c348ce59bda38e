"""One end-to-end trial: generate, sample, (perturb), recover, synthesize."""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from ..frames import GaborFrame, build_frame
from ..recovery import recover_noisy
from ..sampler import acquire, bernoulli_matrix
from ..signal_model import (GridSpec, ModelParams, SampledSignal, add_noise,
                            generate_multipulse, quantize_matrix, relative_error)
from ..transform import CoefficientGrid, LatticeExtent, analyze, lattice_extent, synthesize

SIGNIFICANT_ROW_FRACTION = 0.01

# independent streams derived from one trial seed
STREAM_SIGNAL, STREAM_MATRIX, STREAM_NOISE = 0, 1, 2


def derive_seed(seed: int, stream: int) -> int:
    return int(np.random.SeedSequence([int(seed), stream]).generate_state(1)[0])


def sparsity_budget(mu: float, N: int) -> int:
    return math.ceil(2 / mu - 1e-9) * N


@dataclass(frozen=True)
class TrialSpec:
    model: ModelParams
    shapes: tuple[str, ...]
    frame_choice: str
    M: int
    seed: int
    L0_override: int | None = None
    dt: float = 1.0 / 2048
    eps_B: float = 0.15
    snr_db: float = math.inf
    bits: int | None = None
    identity: bool = False


@dataclass(frozen=True)
class TrialResult:
    spec: TrialSpec
    K: int
    L: int
    relative_error: float
    coefficient_error: float
    support_exact: bool
    support_size: int
    residual: float


def frame_and_extent(spec: TrialSpec) -> tuple[GaborFrame, LatticeExtent]:
    fr = build_frame(spec.frame_choice, spec.model.W, spec.eps_B)
    m = spec.model
    return fr, lattice_extent(m.beta, m.Omega, m.W, fr.mu, fr.B, spec.L0_override)


def grid_for(spec: TrialSpec, frame: GaborFrame, extent: LatticeExtent) -> GridSpec:
    reach = frame.a * extent.K0 + frame.alpha / 2
    half = max(spec.model.beta / 2, reach) + 0.25
    return GridSpec.symmetric(half, spec.dt)


def trial_signal(spec: TrialSpec, grid: GridSpec) -> SampledSignal:
    return generate_multipulse(spec.model, spec.shapes, derive_seed(spec.seed, STREAM_SIGNAL), grid=grid)


def significant_rows(Zg: CoefficientGrid, fraction: float = SIGNIFICANT_ROW_FRACTION) -> set[int]:
    """Lattice rows carrying at least ``fraction`` of the largest row norm."""
    rn = Zg.row_norms()
    if rn.max() == 0:
        return set()
    return {int(k) for k in np.flatnonzero(rn >= fraction * rn.max()) - Zg.extent.K0}


def run_trial(spec: TrialSpec) -> TrialResult:
    frame, extent = frame_and_extent(spec)
    grid = grid_for(spec, frame, extent)
    f = trial_signal(spec, grid)
    M = extent.K if spec.identity else spec.M
    ens = bernoulli_matrix(M, extent.K, derive_seed(spec.seed, STREAM_MATRIX),
                           identity=spec.identity, frame=frame, extent=extent)
    Z = analyze(f, frame, extent)

    f_in = add_noise(f, spec.snr_db, derive_seed(spec.seed, STREAM_NOISE))
    X = acquire(f_in, ens).X
    noise_norm = 0.0
    if math.isfinite(spec.snr_db):
        noise_norm = float(np.linalg.norm(acquire(f.with_values(f_in.values - f.values), ens).X))
    if spec.bits is not None:
        X = quantize_matrix(X, spec.bits)

    S = sparsity_budget(frame.mu, spec.model.N)
    if spec.identity:
        S = extent.K
    res = recover_noisy(X, ens.C, S, noise_norm, K0=extent.K0)
    Z_hat = CoefficientGrid(res.Z_hat, extent, frame)
    f_hat = synthesize(Z_hat, frame, grid)

    zn = np.linalg.norm(Z.Z)
    coef_err = float(np.linalg.norm(Z.Z - res.Z_hat) / zn) if zn > 0 else 0.0
    return TrialResult(
        spec=spec, K=extent.K, L=extent.L,
        relative_error=relative_error(f, f_hat),
        coefficient_error=coef_err,
        support_exact=significant_rows(Z) <= set(res.support.indices),
        support_size=len(res.support),
        residual=res.residual,
    )


def run_many(specs: list[TrialSpec], jobs: int = 1) -> list[TrialResult]:
    """Run trials, optionally in worker processes; output order follows ``specs``."""
    if jobs <= 1 or len(specs) < 2:
        return [run_trial(s) for s in specs]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(run_trial, specs, chunksize=max(1, len(specs) // (4 * jobs))))
