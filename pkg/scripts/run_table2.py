#!/usr/bin/env python3
"""Frame comparison table with baseline rows.

Usage: python scripts/run_table2.py [--config configs/default.ini] [--out out/table2] [--seed N] [--jobs J]
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
        args += ["--out", str(ROOT / "out" / "table2")]
    sys.exit(main(["table2", *args]))
