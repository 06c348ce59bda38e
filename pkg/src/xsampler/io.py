"""Plain-text persistence: CSV for arrays, JSON for metadata.

Floats are written with ``%.17g`` so a write/read round trip is exact and
repeated runs produce identical bytes.
"""
from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .baselines import BaselineReport
from .frames import GaborFrame
from .recovery import RecoveryResult, SupportSet
from .sampler import MeasurementEnsemble, SampleMatrix
from .signal_model import GridSpec, SampledSignal
from .transform import CoefficientGrid, LatticeExtent


def fmt(x: float) -> str:
    return format(float(x), ".17g")


def write_csv(path, header, rows) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([fmt(v) if isinstance(v, (float, np.floating)) else v for v in row])
    return path


def read_csv(path) -> tuple[list[str], list[list[str]]]:
    with Path(path).open(newline="") as fh:
        rows = list(csv.reader(fh))
    return rows[0], rows[1:]


def write_json(path, obj) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(obj, indent=2, sort_keys=True, default=_jsonable) + "\n")
    return path


def _jsonable(x):
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.floating):
        return float(x)
    if isinstance(x, np.ndarray):
        return x.tolist()
    raise TypeError(f"cannot serialize {type(x).__name__}")


def _sidecar(path) -> Path:
    return Path(path).with_suffix(".json")


# signals -------------------------------------------------------------------

def write_signal(path, f: SampledSignal) -> Path:
    write_csv(path, ["t", "value"], zip(f.t, f.values))
    g = f.grid
    write_json(_sidecar(path), {"beta": f.support_beta, "dt": g.dt,
                                "n_points": g.n_points, "t_start": g.t_start})
    return Path(path)


def read_signal(path) -> SampledSignal:
    meta = json.loads(_sidecar(path).read_text())
    _, rows = read_csv(path)
    values = np.array([float(r[1]) for r in rows])
    n = meta["n_points"]
    grid = GridSpec(meta["t_start"], meta["t_start"] + (n - 1) * meta["dt"], meta["dt"], n)
    return SampledSignal(grid, values, meta["beta"])


# windows -------------------------------------------------------------------

def write_window(path, frame: GaborFrame, n: int = 1025) -> Path:
    t = np.linspace(-frame.alpha / 2, frame.alpha / 2, n)
    write_csv(path, ["t", "g", "gamma"], zip(t, frame.g(t), frame.gamma(t)))
    write_json(_sidecar(path), frame.metadata())
    return Path(path)


# complex matrices ----------------------------------------------------------

def _write_complex(path, idx_names, rows_idx, cols_idx, A) -> Path:
    def rows():
        for i, r in enumerate(rows_idx):
            for j, c in enumerate(cols_idx):
                yield (int(r), int(c), float(A[i, j].real), float(A[i, j].imag))
    return write_csv(path, [*idx_names, "re", "im"], rows())


def _read_complex(path) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    _, rows = read_csv(path)
    r = np.array([int(x[0]) for x in rows])
    c = np.array([int(x[1]) for x in rows])
    v = np.array([float(x[2]) + 1j * float(x[3]) for x in rows])
    ur, uc = np.unique(r), np.unique(c)
    A = np.zeros((ur.size, uc.size), dtype=complex)
    A[np.searchsorted(ur, r), np.searchsorted(uc, c)] = v
    return ur, uc, A


def write_coefficients(path, Zg: CoefficientGrid) -> Path:
    return _write_complex(path, ["k", "l"], Zg.extent.ks(), Zg.extent.ls(), Zg.Z)


def read_coefficients(path) -> CoefficientGrid:
    ks, ls, Z = _read_complex(path)
    return CoefficientGrid(Z, LatticeExtent(int(-ks[0]), int(-ls[0])))


def write_samples(path, X: SampleMatrix, L0: int) -> Path:
    M = X.X.shape[0]
    return _write_complex(path, ["m", "l"], range(M), range(-L0, L0 + 1), X.X)


def read_samples(path) -> SampleMatrix:
    return SampleMatrix(_read_complex(path)[2])


def write_ensemble(path, ens: MeasurementEnsemble, with_matrix: bool = False) -> Path:
    meta = {"seed": ens.seed, "M": ens.M, "K": ens.K}
    if ens.frame is not None:
        meta["frame"] = ens.frame.name
    if ens.extent is not None:
        meta["K0"], meta["L0"] = ens.extent.K0, ens.extent.L0
    write_json(path, meta)
    if with_matrix:
        write_csv(Path(path).with_suffix(".csv"), [f"c{k}" for k in range(ens.K)],
                  ([int(v) for v in row] for row in ens.C))
    return Path(path)


def write_recovery(path, res: RecoveryResult, L0: int) -> Path:
    """JSON summary plus a ``k,l,re,im`` CSV of the recovered grid."""
    write_json(path, {"support": list(res.support.indices), "residual": res.residual,
                      "iterations": res.iterations, "rip_estimate": res.rip_estimate,
                      "K0": res.support.K0, "S_max": res.support.S_max})
    K0 = res.support.K0
    _write_complex(Path(path).with_suffix(".csv"), ["k", "l"], range(-K0, K0 + 1),
                   range(-L0, L0 + 1), res.Z_hat)
    return Path(path)


def read_recovery(path) -> RecoveryResult:
    meta = json.loads(Path(path).read_text())
    _, _, Z = _read_complex(Path(path).with_suffix(".csv"))
    support = SupportSet(tuple(meta["support"]), meta["K0"], meta["S_max"])
    return RecoveryResult(support, Z, meta["residual"], meta["iterations"], meta["rip_estimate"])


def write_baseline(path, rep: BaselineReport) -> Path:
    write_json(path, {"method": rep.method, "sample_count": rep.sample_count,
                      "error_bound": rep.error_bound, "measured_error": rep.measured_error,
                      "max_abs_error": rep.max_abs_error})
    f = rep.reconstruction
    write_csv(Path(path).with_suffix(".csv"), ["t", "value"], zip(f.t, f.values))
    return Path(path)
