"""Command line front end: mfbv <subcommand> --config <path> [options]."""

import argparse
import sys

from .errors import ConfigError, DomainError, ResourceError
from .lab import _SCHEMAS, parse_config, run_experiment

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_CONFIG = 2
EXIT_RESOURCE = 3


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="mfbv",
        description="Desk-scale experiments on multiplicative functions in "
                    "arithmetic progressions (CSV output).",
    )
    ap.add_argument("subcommand", choices=sorted(_SCHEMAS))
    ap.add_argument("--config", required=True, help="flat key = value config file")
    ap.add_argument("--out", default=None, help="output CSV path (default: stdout name <subcommand>.csv)")
    ap.add_argument("--seed", type=int, default=0, help="seed for the seeded f specs")
    ap.add_argument("--threads", type=int, default=1, help="worker threads for independent rows")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with open(args.config) as fh:
            text = fh.read()
    except OSError as e:
        print(f"mfbv: cannot read config: {e}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        cfg = parse_config(args.subcommand, text)
        out = args.out or f"{args.subcommand}.csv"
        path = run_experiment(cfg, out, seed=args.seed, threads=args.threads)
    except ConfigError as e:
        print(f"mfbv: config error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except ResourceError as e:
        print(f"mfbv: resource bound: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    except (DomainError, ArithmeticError) as e:
        print(f"mfbv: {e}", file=sys.stderr)
        return EXIT_ERROR
    print(path)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
