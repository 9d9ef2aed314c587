#!/usr/bin/env python3
"""Fuzz the solver against exhaustive enumeration under a time budget.

Draws random colored instances, compares every target's decision with the
enumerated fiber, and stops at --budget seconds or --max-instances. Any
disagreement prints the instance in wire format and aborts, so the output
is a ready-made regression fixture.
"""

import argparse
import random
import sys
import time

sys.path.insert(0, "src")

from exactmatch.graphs import random_graph, serialize_ebg
from exactmatch.solver import solve
from exactmatch.verify.core import fiber_table


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--budget", type=float, default=30.0, help="seconds")
    ap.add_argument("--max-n", type=int, default=7)
    ap.add_argument("--max-instances", type=int, default=100_000)
    ap.add_argument("--seed", type=int, default=0)
    ns = ap.parse_args(argv)
    assert 2 <= ns.max_n <= 8, "enumeration oracle is only sensible up to n=8"

    rng = random.Random(ns.seed)
    deadline = time.perf_counter() + ns.budget
    instances = decisions = 0
    while time.perf_counter() < deadline and instances < ns.max_instances:
        n = rng.randint(2, ns.max_n)
        g = random_graph(
            n,
            density=rng.choice((0.3, 0.5, 0.7, 0.9)),
            red_prob=rng.choice((0.1, 0.3, 0.5, 0.8)),
            seed=rng.randrange(1 << 30),
        )
        counts = fiber_table(g).counts
        instances += 1
        for t in range(n + 1):
            decisions += 1
            got = solve(g, t).decision
            want = counts.get(t, 0) > 0
            if got != want:
                print(f"DISAGREEMENT at t={t}: solve={got} enumeration={want}")
                sys.stdout.write(serialize_ebg(g))
                return 1
    print(f"ok: {instances} instances, {decisions} decisions, 0 disagreements")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
