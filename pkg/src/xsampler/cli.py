"""Command-line entry point: ``xsampler table2|noise|quant|demo``."""
from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

from .errors import ConfigError, NumericalError
from .experiments import EXPERIMENTS, format_table2, load_config

EXIT_OK, EXIT_CONFIG, EXIT_NUMERICAL = 0, 2, 3


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="xsampler", description=__doc__)
    p.add_argument("experiment", choices=sorted(EXPERIMENTS))
    p.add_argument("--config", required=True, type=Path, help="INI experiment configuration")
    p.add_argument("--out", required=True, type=Path, help="output directory")
    p.add_argument("--seed", type=int, default=None, help="override the base seed")
    p.add_argument("--jobs", type=int, default=None, help="worker processes")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config, output_dir=args.out)
        if args.seed is not None:
            cfg = cfg.with_seed(args.seed)
        if args.jobs is not None:
            if args.jobs < 1:
                raise ConfigError("--jobs must be positive")
            cfg = replace(cfg, jobs=args.jobs)
        args.out.mkdir(parents=True, exist_ok=True)
        result = EXPERIMENTS[args.experiment](cfg, args.out)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    if args.experiment == "table2":
        print(format_table2(result["rows"]))
    else:
        print(f"wrote {args.experiment} results to {args.out}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
