#!/usr/bin/env python3
"""Median error over the (M, SNR) grid.

Usage: python scripts/run_noise_sweep.py [--config configs/default.ini] [--out out/noise] [--seed N] [--jobs J]
"""
import sys
from pathlib import Path

from xsampler.cli import main

ROOT = Path(__file__).resolve().parents[1]

if __name__ == "__main__":
    args = sys.argv[1:]
    if "--config" not in args:
        args += ["--config", str(ROOT / "configs" / "default.ini")]
    if "--out" not in args:
        args += ["--out", str(ROOT / "out" / "noise")]
    sys.exit(main(["noise", *args]))
