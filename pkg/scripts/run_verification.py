#!/usr/bin/env python3
"""Run the verification suites and print one summary line per suite.

Exit status is the number of failing suites, so this can gate CI directly:

    python3 scripts/run_verification.py --trials 30
    python3 scripts/run_verification.py --suite width2 --n 6
"""

import argparse
import sys
import time

sys.path.insert(0, "src")

from exactmatch.verify.suites import SUITES, run_suite


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--suite", choices=sorted(SUITES), action="append", default=None,
                    help="suite to run (repeatable; default: all)")
    ap.add_argument("--n", type=int, default=None, help="size knob, suite-specific")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--trials", type=int, default=None)
    ns = ap.parse_args(argv)

    names = ns.suite or sorted(SUITES)
    failures = 0
    for name in names:
        started = time.perf_counter()
        report = run_suite(name, n=ns.n, seed=ns.seed, trials=ns.trials)
        elapsed = time.perf_counter() - started
        print(f"{report.summary()}  [{elapsed:.1f}s]")
        if not report.passed:
            failures += 1
            for check in report.checks:
                if not check.passed:
                    print(f"  FAIL {check.name}" + (f": {check.detail}" if check.detail else ""))
    return failures


if __name__ == "__main__":
    raise SystemExit(main())
