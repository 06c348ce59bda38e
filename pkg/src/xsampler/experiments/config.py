"""Experiment configuration, read from an INI file.

Layout::

    [scenario]        model and shared settings
    [frame:<name>]    per-frame M and optional L0 override (table2)
    [noise]           M and SNR grids
    [quant]           bit depths and the M used
    [baselines]       Fourier L0 and Shannon rate

See ``configs/default.ini`` for every key with its default value.
"""
from __future__ import annotations

import configparser
import math
from dataclasses import dataclass, field, replace
from pathlib import Path

from ..errors import ConfigError
from ..signal_model import PULSE_SHAPES, ModelParams

FRAME_CHOICES = ("trapezoid", "cosine", "bspline5")


@dataclass(frozen=True)
class FrameRun:
    frame: str
    M: int
    L0_override: int | None = None


@dataclass(frozen=True)
class ScenarioConfig:
    model: ModelParams
    shapes: tuple[str, ...] = ("bspline2", "bspline4", "cosine")
    dt: float = 1.0 / 2048
    frame_choice: str = "cosine"
    eps_B: float = 0.15
    base_seed: int = 0
    n_seeds: int = 25
    jobs: int = 1
    frames: tuple[FrameRun, ...] = (
        FrameRun("trapezoid", 22, 5), FrameRun("cosine", 25, 4), FrameRun("bspline5", 65, 4))
    noise_M: tuple[int, ...] = (10, 15, 20, 25, 30, 35, 40, 45)
    noise_snr_db: tuple[float, ...] = (5.0, 10.0, 15.0, 20.0, 25.0, math.inf)
    quant_bits: tuple[int, ...] = tuple(range(1, 13))
    quant_M: int = 35
    quant_n_seeds: int = 100
    fourier_L0: int = 300
    shannon_rate: float = 75.0
    output_dir: Path = field(default=Path("out"))

    @property
    def seeds(self) -> tuple[int, ...]:
        return tuple(range(self.base_seed, self.base_seed + self.n_seeds))

    def frame_run(self, name: str) -> FrameRun:
        for fr in self.frames:
            if fr.frame == name:
                return fr
        raise ConfigError(f"no [frame:{name}] section")

    def with_seed(self, seed: int) -> "ScenarioConfig":
        return replace(self, base_seed=int(seed))


def _ints(text: str) -> tuple[int, ...]:
    return tuple(int(v) for v in _split(text))


def _floats(text: str) -> tuple[float, ...]:
    return tuple(float(v) for v in _split(text))


def _split(text: str) -> list[str]:
    """Comma list; ``a..b`` and ``a..b step c`` expand integer ranges."""
    out: list[str] = []
    for part in (p.strip() for p in text.split(",")):
        if not part:
            continue
        if ".." in part:
            rng, _, step = part.partition("step")
            lo, hi = (int(x) for x in rng.split(".."))
            out += [str(v) for v in range(lo, hi + 1, int(step) if step.strip() else 1)]
        else:
            out.append(part)
    return out


def load_config(path, output_dir=None) -> ScenarioConfig:
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"config file not found: {path}")
    cp = configparser.ConfigParser()
    try:
        cp.read(path)
        return _parse(cp, output_dir)
    except ConfigError:
        raise
    except (configparser.Error, ValueError, KeyError) as exc:
        raise ConfigError(f"{path}: {exc}") from exc


def _parse(cp: configparser.ConfigParser, output_dir) -> ScenarioConfig:
    if "scenario" not in cp:
        raise ConfigError("missing [scenario] section")
    sc = cp["scenario"]
    model = ModelParams(sc.getint("N", 3), sc.getfloat("W", 0.13), sc.getfloat("beta", 8.0),
                        sc.getfloat("Omega", 20.0), sc.getfloat("eps_Omega", 0.0))
    shapes = tuple(_split(sc.get("shapes", "bspline2, bspline4, cosine")))
    bad = [s for s in shapes if s not in PULSE_SHAPES or s == "table"]
    if not shapes or bad:
        raise ConfigError(f"unsupported pulse shapes {bad}")
    frame_choice = sc.get("frame", "cosine")
    if frame_choice not in FRAME_CHOICES:
        raise ConfigError(f"frame must be one of {FRAME_CHOICES}")

    base = ScenarioConfig(model)
    frames = []
    for name in FRAME_CHOICES:
        sec = f"frame:{name}"
        if sec in cp:
            L0 = cp[sec].get("L0")
            frames.append(FrameRun(name, cp[sec].getint("M"), int(L0) if L0 else None))
    extra = [s for s in cp.sections() if s.startswith("frame:") and s[6:] not in FRAME_CHOICES]
    if extra:
        raise ConfigError(f"unknown frame sections {extra}")

    noise = cp["noise"] if "noise" in cp else {}
    quant = cp["quant"] if "quant" in cp else {}
    bl = cp["baselines"] if "baselines" in cp else {}
    cfg = ScenarioConfig(
        model=model,
        shapes=shapes,
        dt=sc.getfloat("dt", base.dt),
        frame_choice=frame_choice,
        eps_B=sc.getfloat("eps_B", base.eps_B),
        base_seed=sc.getint("base_seed", base.base_seed),
        n_seeds=sc.getint("n_seeds", base.n_seeds),
        jobs=sc.getint("jobs", base.jobs),
        frames=tuple(frames) or base.frames,
        noise_M=_ints(noise["M"]) if "M" in noise else base.noise_M,
        noise_snr_db=_floats(noise["snr_db"]) if "snr_db" in noise else base.noise_snr_db,
        quant_bits=_ints(quant["bits"]) if "bits" in quant else base.quant_bits,
        quant_M=int(quant.get("M", base.quant_M)),
        quant_n_seeds=int(quant.get("n_seeds", base.quant_n_seeds)),
        fourier_L0=int(bl.get("fourier_L0", base.fourier_L0)),
        shannon_rate=float(bl.get("shannon_rate", base.shannon_rate)),
        output_dir=Path(output_dir) if output_dir is not None else base.output_dir,
    )
    _validate(cfg)
    return cfg


def _validate(cfg: ScenarioConfig):
    if cfg.n_seeds < 1 or cfg.quant_n_seeds < 1:
        raise ConfigError("n_seeds must be positive")
    if cfg.jobs < 1:
        raise ConfigError("jobs must be positive")
    if not cfg.dt > 0:
        raise ConfigError("dt must be positive")
    if any(fr.M < 1 for fr in cfg.frames) or min(cfg.noise_M, default=1) < 1 or cfg.quant_M < 1:
        raise ConfigError("every M must be positive")
    if any(b < 1 for b in cfg.quant_bits):
        raise ConfigError("bits must be at least 1")
    if cfg.fourier_L0 < 0 or not cfg.shannon_rate > 0:
        raise ConfigError("baseline parameters out of range")
