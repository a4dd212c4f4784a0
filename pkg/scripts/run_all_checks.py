#!/usr/bin/env python3
"""Run every verification suite, save the JSON report, print the text summary.

Thin wrapper over the library so a full run is one command:

    python scripts/run_all_checks.py --out report.json --jobs 4
"""

from __future__ import annotations

import argparse
import sys
import time

from hkit.config import load_config
from hkit.report import exit_code, to_json, to_text
from hkit.suites import run_suite


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--config", metavar="PATH", help="INI config file")
    parser.add_argument("--seed", type=int)
    parser.add_argument("--jobs", type=int)
    parser.add_argument("--out", metavar="PATH", default="report.json",
                        help="where to write the JSON report (default %(default)s)")
    args = parser.parse_args(argv)

    cfg = load_config(args.config, {"seed": args.seed, "jobs": args.jobs,
                                    "suites": ("all",)})
    start = time.perf_counter()
    report = run_suite(cfg)
    elapsed = time.perf_counter() - start

    with open(args.out, "w") as fh:
        fh.write(to_json(report))
    sys.stdout.write(to_text(report))
    print(f"full run in {elapsed:.1f}s; JSON report written to {args.out}")
    return exit_code(report)


if __name__ == "__main__":
    sys.exit(main())
