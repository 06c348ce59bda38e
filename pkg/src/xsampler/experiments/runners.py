"""Experiment drivers: frame comparison table, noise sweep, quantization sweep, demo."""
from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .. import io
from ..baselines import fourier_truncated, shannon_interp
from ..recovery import recover_noisy
from ..sampler import acquire, bernoulli_matrix
from ..transform import CoefficientGrid, analyze, synthesize
from .config import ScenarioConfig
from .pipeline import (STREAM_MATRIX, TrialSpec, derive_seed, frame_and_extent, grid_for,
                       run_many, sparsity_budget, trial_signal)
from .svgplot import line_chart


def _spec(cfg: ScenarioConfig, frame: str, M: int, seed: int, **kw) -> TrialSpec:
    return TrialSpec(cfg.model, cfg.shapes, frame, M, seed, dt=cfg.dt, eps_B=cfg.eps_B, **kw)


def _quartiles(x) -> tuple[float, float, float]:
    q = np.percentile(np.asarray(x, dtype=float), [25, 50, 75])
    return float(q[0]), float(q[1]), float(q[2])


def _update_report(out: Path, key: str, payload: dict) -> Path:
    path = out / "report.json"
    report = json.loads(path.read_text()) if path.is_file() else {}
    report[key] = payload
    return io.write_json(path, report)


# -- frame comparison ---------------------------------------------------------

def run_table2(cfg: ScenarioConfig, out: Path | None = None) -> dict:
    """Median reconstruction error per frame at the configured M, plus baselines."""
    out = Path(out or cfg.output_dir)
    rows = []
    for fr in cfg.frames:
        specs = [_spec(cfg, fr.frame, fr.M, s, L0_override=fr.L0_override) for s in cfg.seeds]
        results = run_many(specs, cfg.jobs)
        q25, med, q75 = _quartiles([r.relative_error for r in results])
        K, L = results[0].K, results[0].L
        rows.append({"window": fr.frame, "K": K, "L": L, "samples_without_sparsity": K * L,
                     "M": fr.M, "samples_with_sparsity": fr.M * L,
                     "median_error": med, "q25": q25, "q75": q75, "n_seeds": len(results)})

    # baselines on the first seed's signal
    spec = _spec(cfg, cfg.frame_choice, 1, cfg.seeds[0])
    frame, extent = frame_and_extent(spec)
    f = trial_signal(spec, grid_for(spec, frame, extent))
    for rep in (fourier_truncated(f, cfg.fourier_L0), shannon_interp(f, cfg.shannon_rate)):
        rows.append({"window": rep.method, "K": rep.sample_count, "L": 1,
                     "samples_without_sparsity": rep.sample_count, "M": rep.sample_count,
                     "samples_with_sparsity": rep.sample_count, "median_error": rep.measured_error,
                     "q25": rep.measured_error, "q75": rep.measured_error, "n_seeds": 1})

    cols = ["window", "K", "L", "samples_without_sparsity", "M", "samples_with_sparsity",
            "median_error", "q25", "q75", "n_seeds"]
    io.write_csv(out / "table2.csv", cols, ([r[c] for c in cols] for r in rows))
    names = [r["window"] for r in rows]
    line_chart(out / "table2.svg",
               {"median error": (list(range(len(rows))), [r["median_error"] for r in rows])},
               title="Recovery error per method (" + ", ".join(names) + ")",
               xlabel="method index", ylabel="relative error", logy=True)
    _update_report(out, "table2", {"rows": rows})
    return {"rows": rows}


def format_table2(rows: list[dict]) -> str:
    head = f"{'window':<12}{'K*L':>16}{'M*L':>14}{'error (median [IQR])':>34}"
    lines = [head, "-" * len(head)]
    for r in rows:
        kl = f"{r['K']}*{r['L']}={r['samples_without_sparsity']}"
        ml = f"{r['M']}*{r['L']}={r['samples_with_sparsity']}"
        err = f"{r['median_error']:.4f} [{r['q25']:.4f}, {r['q75']:.4f}]"
        lines.append(f"{r['window']:<12}{kl:>16}{ml:>14}{err:>34}")
    return "\n".join(lines)


# -- noise ---------------------------------------------------------------------

def run_noise_sweep(cfg: ScenarioConfig, out: Path | None = None) -> dict:
    out = Path(out or cfg.output_dir)
    fr = cfg.frame_run(cfg.frame_choice)
    keys = [(M, snr, s) for M in cfg.noise_M for snr in cfg.noise_snr_db for s in cfg.seeds]
    specs = [_spec(cfg, fr.frame, M, s, L0_override=fr.L0_override, snr_db=snr) for M, snr, s in keys]
    results = run_many(specs, cfg.jobs)
    by = {}
    for (M, snr, _), r in zip(keys, results):
        by.setdefault((M, snr), []).append(r.relative_error)
    table = []
    for M in cfg.noise_M:
        for snr in cfg.noise_snr_db:
            q25, med, q75 = _quartiles(by[(M, snr)])
            table.append({"M": M, "snr_db": snr, "median_error": med, "q25": q25, "q75": q75,
                          "n_seeds": len(by[(M, snr)])})
    cols = ["M", "snr_db", "median_error", "q25", "q75", "n_seeds"]
    io.write_csv(out / "noise.csv", cols,
                 ([r["M"], _snr_label(r["snr_db"]), r["median_error"], r["q25"], r["q75"],
                   r["n_seeds"]] for r in table))
    series = {f"SNR {_snr_label(snr)} dB" if math.isfinite(snr) else "noiseless":
              (list(cfg.noise_M), [next(r["median_error"] for r in table if r["M"] == M and r["snr_db"] == snr)
                                   for M in cfg.noise_M])
              for snr in cfg.noise_snr_db}
    line_chart(out / "noise.svg", series, title=f"Noise sweep ({fr.frame} frame)",
               xlabel="M", ylabel="median relative error", logy=True)
    _update_report(out, "noise", {"frame": fr.frame,
                                  "grid": [{**r, "snr_db": _snr_label(r["snr_db"])} for r in table]})
    return {"grid": table}


def _snr_label(snr: float) -> str:
    return "inf" if math.isinf(snr) else f"{snr:g}"


# -- quantization --------------------------------------------------------------

def run_quantization(cfg: ScenarioConfig, out: Path | None = None) -> dict:
    out = Path(out or cfg.output_dir)
    fr = cfg.frame_run(cfg.frame_choice)
    seeds = range(cfg.base_seed, cfg.base_seed + cfg.quant_n_seeds)
    levels = [*cfg.quant_bits, None]
    keys = [(b, s) for b in levels for s in seeds]
    specs = [_spec(cfg, fr.frame, cfg.quant_M, s, L0_override=fr.L0_override, bits=b) for b, s in keys]
    results = run_many(specs, cfg.jobs)
    rows = []
    for b in levels:
        rs = [r for (bb, _), r in zip(keys, results) if bb == b]
        q25, med, q75 = _quartiles([r.coefficient_error for r in rs])
        rows.append({"bits": "none" if b is None else b, "median_coefficient_error": med,
                     "q25": q25, "q75": q75,
                     "median_signal_error": _quartiles([r.relative_error for r in rs])[1],
                     "support_rate": sum(r.support_exact for r in rs) / len(rs),
                     "n_seeds": len(rs)})
    cols = ["bits", "median_coefficient_error", "q25", "q75", "median_signal_error",
            "support_rate", "n_seeds"]
    io.write_csv(out / "quant.csv", cols, ([r[c] for c in cols] for r in rows))
    q = [r for r in rows if r["bits"] != "none"]
    bits = [r["bits"] for r in q]
    line_chart(out / "quant.svg",
               {"coefficient error": (bits, [r["median_coefficient_error"] for r in q]),
                "support miss rate": (bits, [1 - r["support_rate"] for r in q])},
               title=f"Quantization of the samples (M={cfg.quant_M})",
               xlabel="bits", ylabel="median relative error / miss rate", logy=True)
    _update_report(out, "quant", {"frame": fr.frame, "M": cfg.quant_M, "rows": rows})
    return {"rows": rows}


# -- demo ------------------------------------------------------------------------

def run_demo(cfg: ScenarioConfig, out: Path | None = None) -> dict:
    """Single trial with every intermediate artifact written out."""
    out = Path(out or cfg.output_dir)
    fr = cfg.frame_run(cfg.frame_choice)
    spec = _spec(cfg, fr.frame, fr.M, cfg.base_seed, L0_override=fr.L0_override)
    frame, extent = frame_and_extent(spec)
    grid = grid_for(spec, frame, extent)
    f = trial_signal(spec, grid)
    ens = bernoulli_matrix(fr.M, extent.K, derive_seed(spec.seed, STREAM_MATRIX),
                           frame=frame, extent=extent)
    X = acquire(f, ens)
    res = recover_noisy(X.X, ens.C, sparsity_budget(frame.mu, cfg.model.N), 0.0, K0=extent.K0)
    f_hat = synthesize(CoefficientGrid(res.Z_hat, extent, frame), frame, grid)
    err = float(np.sqrt(np.dot(grid.trapezoid_weights(), (f.values - f_hat.values) ** 2)) / f.norm())

    io.write_signal(out / "demo_signal.csv", f)
    io.write_window(out / "demo_window.csv", frame)
    io.write_coefficients(out / "demo_coefficients.csv", analyze(f, frame, extent))
    io.write_samples(out / "demo_samples.csv", X, extent.L0)
    io.write_ensemble(out / "demo_ensemble.json", ens, with_matrix=True)
    io.write_recovery(out / "demo_recovery.json", res, extent.L0)
    io.write_csv(out / "demo.csv", ["t", "f", "f_hat"], zip(f.t, f.values, f_hat.values))
    sel = np.abs(f.t) <= cfg.model.beta / 2
    step = max(1, int(sel.sum() // 2000))
    t = f.t[sel][::step]
    line_chart(out / "demo.svg", {"f": (list(t), list(f.values[sel][::step])),
                                  "reconstruction": (list(t), list(f_hat.values[sel][::step]))},
               title=f"Demo ({frame.name}, M={fr.M}, error {err:.4f})",
               xlabel="t [s]", ylabel="amplitude")
    summary = {"frame": frame.name, "M": fr.M, "K": extent.K, "L": extent.L,
               "support": list(res.support.indices), "relative_error": err}
    _update_report(out, "demo", summary)
    return summary


EXPERIMENTS = {"table2": run_table2, "noise": run_noise_sweep,
               "quant": run_quantization, "demo": run_demo}

