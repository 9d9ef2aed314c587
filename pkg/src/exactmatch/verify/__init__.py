"""Verification suite: brute-force oracles, algebraic identity checks,
width-2 band analyses, and the named check suites the CLI exposes."""

from .core import (  # noqa: F401
    FiberTable,
    PermutationFamily,
    UniversalReport,
    enumerate_pms,
    fiber_table,
    minor_pt,
    mvv_test,
    subset_poly,
    symbolic_pt,
    universal_small_check,
)
