import math
import xml.etree.ElementTree as ET
from dataclasses import replace
from pathlib import Path

import numpy as np
import pytest

from xsampler import cli, io
from xsampler.errors import ConfigError
from xsampler.experiments import load_config, run_trial
from xsampler.experiments.config import ScenarioConfig, _split
from xsampler.experiments.pipeline import (TrialSpec, derive_seed, run_many, significant_rows,
                                           sparsity_budget)
from xsampler.transform import CoefficientGrid, LatticeExtent

from conftest import TABLE_MODEL, TABLE_SHAPES

CONFIGS = Path(__file__).resolve().parent.parent / "configs"

TINY = """
[scenario]
N = 3
W = 0.13
beta = 8
Omega = 20
shapes = bspline2, bspline4, cosine
dt = {dt}
frame = cosine
n_seeds = 2

[frame:cosine]
M = 25
L0 = 4

[noise]
M = 25
snr_db = 15, inf

[quant]
bits = 8
M = 35
n_seeds = 2
"""


@pytest.fixture
def tiny(tmp_path):
    p = tmp_path / "tiny.ini"
    p.write_text(TINY.format(dt=1 / 2048))
    return p


# config ----------------------------------------------------------------------

def test_range_syntax():
    assert _split("1..4") == ["1", "2", "3", "4"]
    assert _split("10..45 step 5, 60") == ["10", "15", "20", "25", "30", "35", "40", "45", "60"]
    assert _split(" 5, , inf ") == ["5", "inf"]


def test_default_config_files_parse():
    cfg = load_config(CONFIGS / "default.ini")
    assert [f.frame for f in cfg.frames] == ["trapezoid", "cosine", "bspline5"]
    assert [f.M for f in cfg.frames] == [22, 25, 65]
    assert cfg.n_seeds == 25 and math.isinf(cfg.noise_snr_db[-1])
    assert load_config(CONFIGS / "quick.ini").n_seeds == 3


def test_config_values(tiny):
    cfg = load_config(tiny, output_dir="x")
    assert cfg.frame_run("cosine").L0_override == 4
    assert cfg.quant_bits == (8,) and cfg.quant_M == 35
    assert cfg.seeds == (0, 1) and cfg.with_seed(10).seeds == (10, 11)
    assert str(cfg.output_dir) == "x"
    with pytest.raises(ConfigError):
        cfg.frame_run("trapezoid")


@pytest.mark.parametrize("edit", [
    ("frame = cosine", "frame = hann"),
    ("shapes = bspline2, bspline4, cosine", "shapes = sawtooth"),
    ("n_seeds = 2\n\n[frame", "n_seeds = 0\n\n[frame"),
    ("M = 25\nL0", "M = zero\nL0"),
    ("[frame:cosine]", "[frame:gauss]"),
    ("bits = 8", "bits = 0"),
    ("[scenario]", "[other]"),
])
def test_bad_configs_raise(tmp_path, edit):
    p = tmp_path / "bad.ini"
    p.write_text(TINY.format(dt=1 / 2048).replace(*edit))
    with pytest.raises(ConfigError):
        load_config(p)


def test_missing_config_file(tmp_path):
    with pytest.raises(ConfigError):
        load_config(tmp_path / "nope.ini")


# pipeline --------------------------------------------------------------------

def test_derive_seed_streams_differ():
    assert derive_seed(5, 0) == derive_seed(5, 0)
    assert len({derive_seed(5, s) for s in range(3)} | {derive_seed(6, 0)}) == 4


def test_sparsity_budget():
    assert [sparsity_budget(mu, 3) for mu in (0.75, 0.5, 0.2)] == [9, 12, 30]


def test_significant_rows():
    Z = np.zeros((5, 1))
    Z[:, 0] = [0, 100, 0.5, 2, 0]
    assert significant_rows(CoefficientGrid(Z, LatticeExtent(2, 0))) == {-1, 1}
    assert significant_rows(CoefficientGrid(np.zeros((5, 1)), LatticeExtent(2, 0))) == set()


def test_identity_trial_equals_plain_truncation():
    spec = TrialSpec(TABLE_MODEL, TABLE_SHAPES, "cosine", 0, 3, L0_override=4, identity=True)
    r = run_trial(spec)
    assert r.K == 125 and r.coefficient_error < 1e-12
    assert r.relative_error < 0.02 and r.support_exact


def test_trial_is_deterministic():
    spec = TrialSpec(TABLE_MODEL, TABLE_SHAPES, "cosine", 25, 4, L0_override=4)
    assert run_trial(spec) == run_trial(spec)


def test_parallel_matches_serial():
    specs = [TrialSpec(TABLE_MODEL, TABLE_SHAPES, "cosine", 25, s, L0_override=4) for s in range(4)]
    assert run_many(specs, jobs=2) == run_many(specs, jobs=1)


@pytest.mark.slow
def test_error_decreases_with_channels():
    meds = []
    for M in (12, 25, 45):
        errs = [run_trial(TrialSpec(TABLE_MODEL, TABLE_SHAPES, "cosine", M, s, L0_override=4)).relative_error
                for s in range(7)]
        meds.append(float(np.median(errs)))
    # too few channels fails; past the threshold only truncation error remains
    assert meds[0] > 10 * meds[1]
    assert meds[2] == pytest.approx(meds[1], rel=1e-9)


# CLI -------------------------------------------------------------------------

def test_cli_table2(tiny, tmp_path, capsys):
    out = tmp_path / "t2"
    assert cli.main(["table2", "--config", str(tiny), "--out", str(out)]) == cli.EXIT_OK
    assert "cosine" in capsys.readouterr().out
    header, rows = io.read_csv(out / "table2.csv")
    assert header[:4] == ["window", "K", "L", "samples_without_sparsity"]
    assert [r[0] for r in rows] == ["cosine", "fourier", "shannon"]
    assert rows[0][1:3] == ["125", "9"] and rows[0][5] == "225"
    ET.parse(out / "table2.svg")


@pytest.mark.parametrize("exp,files", [
    ("noise", ["noise.csv", "noise.svg"]),
    ("quant", ["quant.csv", "quant.svg"]),
    ("demo", ["demo.csv", "demo.svg", "demo_samples.csv", "demo_recovery.json"]),
])
def test_cli_experiments_write_outputs(tiny, tmp_path, exp, files):
    out = tmp_path / exp
    assert cli.main([exp, "--config", str(tiny), "--out", str(out), "--seed", "3"]) == 0
    for name in files:
        assert (out / name).is_file()
        if name.endswith(".svg"):
            ET.parse(out / name)
    assert (out / "report.json").is_file()


def test_cli_runs_are_reproducible(tiny, tmp_path):
    for d in ("a", "b"):
        cli.main(["noise", "--config", str(tiny), "--out", str(tmp_path / d), "--jobs", "1"])
    assert (tmp_path / "a" / "noise.csv").read_bytes() == (tmp_path / "b" / "noise.csv").read_bytes()


def test_cli_config_error_exit(tiny, tmp_path, capsys):
    p = tmp_path / "bad.ini"
    p.write_text("[scenario]\nframe = hann\n")
    assert cli.main(["demo", "--config", str(p), "--out", str(tmp_path / "o")]) == cli.EXIT_CONFIG
    assert "config error" in capsys.readouterr().err
    assert cli.main(["demo", "--config", str(tiny), "--out", str(tmp_path / "o"), "--jobs", "0"]) == 2


def test_cli_numerical_error_exit(tmp_path, capsys):
    p = tmp_path / "coarse.ini"
    p.write_text(TINY.format(dt=0.1))
    assert cli.main(["demo", "--config", str(p), "--out", str(tmp_path / "o")]) == cli.EXIT_NUMERICAL
    assert "numerical failure" in capsys.readouterr().err


def test_cli_rejects_unknown_experiment(tiny, tmp_path):
    with pytest.raises(SystemExit):
        cli.main(["bogus", "--config", str(tiny), "--out", str(tmp_path)])


def test_scenario_defaults():
    cfg = ScenarioConfig(TABLE_MODEL)
    assert cfg.quant_M == 35 and cfg.fourier_L0 == 300 and cfg.shannon_rate == 75.0
    assert replace(cfg, jobs=3).jobs == 3
