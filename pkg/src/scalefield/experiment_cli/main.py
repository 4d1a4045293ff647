"""Command-line entry point: ``scalefield EXPERIMENT [--config PATH] [--out PATH] [--seed N] [--set KEY=VALUE ...]``.

Exit status is 0 when every check passes, 1 when a check fails and 2 for
configuration errors or refused inputs.
"""

from __future__ import annotations

import argparse
import sys

from ..errors import ConfigError, IntegrabilityError
from .config import EXPERIMENTS, ExperimentConfig
from .report import write_report
from .runs import run


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="scalefield", description="Run a scale-field experiment and write CSV results.")
    p.add_argument("experiment", choices=EXPERIMENTS)
    p.add_argument("--config", metavar="PATH", help="flat key=value config file")
    p.add_argument("--out", metavar="PATH", help="main CSV path (default: <experiment>.csv)")
    p.add_argument("--seed", type=int, metavar="N", help="seed for randomized sweeps (overrides the config)")
    p.add_argument("--set", action="append", default=[], metavar="KEY=VALUE", help="override one config key")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = ExperimentConfig.load(args.experiment, args.config, args.set, args.out, args.seed)
        report = run(cfg)
    except IntegrabilityError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 2
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    out = args.out or f"{args.experiment}.csv"
    for path in write_report(report, out):
        print(f"wrote {path}", file=sys.stderr)
    for c in report.checks:
        status = "PASS" if c.passed else "FAIL"
        print(f"{status} {c.name}: {c.value:.3e} (tol {c.tolerance:.1e})", file=sys.stderr)
    print(f"{report.experiment}: wall time {report.wall_time:.3f} s", file=sys.stderr)
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
