#!/usr/bin/env python3
"""One trial with every intermediate artifact written to disk.

Usage: python scripts/run_demo.py [--config configs/default.ini] [--out out/demo] [--seed N] [--jobs J]
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
        args += ["--out", str(ROOT / "out" / "demo")]
    sys.exit(main(["demo", *args]))
