"""Solver pipeline: grid nonvanishing, feasibility recursion, witnesses."""

import random

import pytest

from exactmatch.algebra import IntPolynomial, P_ZERO
from exactmatch.graphs import (
    ColoredBipartiteGraph,
    band_path,
    biwheel,
    knn,
    random_graph,
    with_coloring,
)
from exactmatch.solver import (
    BlockReport,
    EvaluationGrid,
    SolverOptions,
    bench,
    build_matrix_at,
    extract_witness,
    feasible_red_counts,
    pt_nonvanishing,
    pt_polynomial,
    red_count_bounds,
    solve,
)
from exactmatch.verify.core import fiber_table, red_count_set, symbolic_pt


def k44_diag():
    return with_coloring(knn(4), red="diag")


# ---------------------------------------------------------------------------
# grid layer


def test_build_matrix_at():
    g = with_coloring(knn(2), red=[(0, 0)])
    m = build_matrix_at(g, 1, 5)
    # (0,0) red: x * (lam+0)^0 = 5; (1,1): (lam+1)^1 = 2
    assert m.to_rows() == [[5, 1], [1, 2]]


def test_build_matrix_multigraph_weight():
    g = ColoredBipartiteGraph.make(1, [(0, 0, 0), (0, 0, 1)], multi=True)
    m = build_matrix_at(g, 0, 7)
    assert m.to_rows() == [[8]]  # blue + red*x = 1 + 7


def test_grid_shape():
    grid = EvaluationGrid.for_size(4)
    assert grid.lam_nodes == tuple(range(7))
    assert grid.x_nodes == tuple(range(5))


@pytest.mark.parametrize("seed", range(25))
def test_pt_polynomial_matches_symbolic(seed):
    n = 2 + seed % 4
    g = random_graph(n, 0.7, 0.4, seed=8000 + seed)
    for t in range(n + 1):
        assert pt_polynomial(g, t) == symbolic_pt(g, t)


def test_pt_polynomial_out_of_range():
    assert pt_polynomial(knn(3), -1) == P_ZERO
    assert pt_polynomial(knn(3), 4) == P_ZERO


def test_pt_nonvanishing_on_brace_matches_fiber():
    g = k44_diag()
    counts = fiber_table(g).counts
    for t in range(5):
        assert pt_nonvanishing(g, t) == (counts.get(t, 0) > 0)


# ---------------------------------------------------------------------------
# bounds prefilter


def test_red_count_bounds():
    assert red_count_bounds(k44_diag()) == (0, 4)
    assert red_count_bounds(knn(3)) == (0, 0)
    assert red_count_bounds(ColoredBipartiteGraph.make(0, [])) == (0, 0)
    assert red_count_bounds(
        ColoredBipartiteGraph.make(2, [(0, 0, 0), (1, 0, 0)])
    ) is None


def test_red_count_bounds_are_attained():
    for seed in range(20):
        g = random_graph(2 + seed % 4, 0.6, 0.5, seed=8700 + seed)
        bounds = red_count_bounds(g)
        counts = red_count_set(g)
        if bounds is None:
            assert not counts
        else:
            assert bounds == (min(counts), max(counts))


# ---------------------------------------------------------------------------
# feasibility recursion


def test_feasible_k44_diag():
    assert feasible_red_counts(k44_diag()) == frozenset({0, 1, 2, 4})


@pytest.mark.parametrize("seed", range(40))
def test_feasible_matches_enumeration(seed):
    n = 2 + seed % 6
    g = random_graph(n, (0.4, 0.6, 0.9)[seed % 3], 0.5, seed=8800 + seed)
    assert feasible_red_counts(g) == frozenset(red_count_set(g))


def test_feasible_disconnected_components_compose():
    g = ColoredBipartiteGraph.make(
        4,
        [(0, 0, 1), (0, 1, 0), (1, 0, 0), (1, 1, 0), (2, 2, 1), (3, 3, 0), (2, 3, 0), (3, 2, 0)],
    )
    # two K22 components, each reaching {0, 1}: sumset {0, 1, 2}
    assert feasible_red_counts(g) == frozenset({0, 1, 2})
    assert feasible_red_counts(g) == frozenset(red_count_set(g))


def test_feasible_empty_when_no_pm():
    g = ColoredBipartiteGraph.make(2, [(0, 0, 0), (1, 0, 0)])
    assert feasible_red_counts(g) == frozenset()


# ---------------------------------------------------------------------------
# witnesses


def test_extract_witness_valid():
    g = k44_diag()
    wit = extract_witness(g, 2)
    assert wit is not None
    rows = sorted(r for r, _, _ in wit)
    cols = sorted(c for _, c, _ in wit)
    assert rows == cols == list(range(4))
    assert sum(1 for _, _, k in wit if k == 1) == 2
    for rec in wit:
        assert rec in g.edges


def test_extract_witness_none_when_infeasible():
    assert extract_witness(k44_diag(), 3) is None


@pytest.mark.parametrize("seed", range(15))
def test_extract_witness_random(seed):
    g = random_graph(2 + seed % 5, 0.7, 0.5, seed=9300 + seed)
    for t in sorted(feasible_red_counts(g)):
        wit = extract_witness(g, t)
        assert wit is not None
        assert sorted(r for r, _, _ in wit) == list(range(g.n))
        assert sorted(c for _, c, _ in wit) == list(range(g.n))
        assert sum(1 for _, _, k in wit if k == 1) == t
        assert all(rec in g.edges for rec in wit)


# ---------------------------------------------------------------------------
# solve reports


def test_solve_k44_yes_and_no():
    rep = solve(k44_diag(), 2, SolverOptions(want_witness=True))
    assert rep.decision and rep.witness is not None
    assert sum(1 for _, _, k in rep.witness if k == 1) == 2
    rep_no = solve(k44_diag(), 3)
    assert not rep_no.decision and rep_no.witness is None


def test_solve_report_blocks_k44():
    rep = solve(k44_diag(), 2)
    assert len(rep.blocks) == 1
    blk = rep.blocks[0]
    assert blk.n == 4
    assert blk.feasible_t == (0, 1, 2, 4)
    assert blk.method == "pure-ASNC"


def test_solve_json_schema():
    d = solve(k44_diag(), 2, SolverOptions(want_witness=True)).to_json_dict()
    assert d["schema"] == "exactmatch/1"
    assert d["decision"] == "YES"
    assert d["blocks"][0]["feasible_t"] == [0, 1, 2, 4]
    assert all(len(rec) == 3 for rec in d["witness"])
    assert set(d["timings"]) == {"decompose_ms", "grid_ms", "dp_ms"}


def test_solve_no_pm_graph():
    g = ColoredBipartiteGraph.make(2, [(0, 0, 0), (1, 0, 0)])
    rep = solve(g, 0)
    assert not rep.decision
    assert rep.blocks == ()


def test_solve_out_of_range_t():
    assert not solve(knn(3), -1).decision
    assert not solve(knn(3), 5).decision


def test_solve_fallback_brute_labels():
    rep = solve(k44_diag(), 2, SolverOptions(fallback_brute=8))
    assert rep.blocks[0].method == "oracle-fallback"
    assert rep.blocks[0].feasible_t == (0, 1, 2, 4)


def test_solve_threads_agree():
    g = with_coloring(band_path(6), red="diag")
    seq = solve(g, 2)
    par = solve(g, 2, SolverOptions(threads=4))
    assert seq.decision == par.decision
    assert [b.feasible_t for b in seq.blocks] == [b.feasible_t for b in par.blocks]


def test_solve_decisions_match_enumeration_batch():
    for seed in range(30):
        n = 2 + seed % 5
        g = random_graph(n, 0.6, 0.4, seed=9600 + seed)
        counts = fiber_table(g).counts
        for t in range(n + 1):
            assert solve(g, t).decision == (counts.get(t, 0) > 0)


def test_non_brace_with_multi_blocks_still_sound():
    # band graphs decompose into several blocks with contracted cells
    g = with_coloring(band_path(7), red="bernoulli", seed=3)
    assert feasible_red_counts(g) == frozenset(red_count_set(g))


def test_biwheel_pm_counts():
    for m in range(3, 7):
        assert fiber_table(biwheel(m)).total == (m - 1) ** 2


# ---------------------------------------------------------------------------
# bench


def test_bench_rows():
    rows = bench([3, 4], seed=1)
    assert [row["n"] for row in rows] == [3, 4]
    for row in rows:
        assert set(row) == {"n", "t", "decision", "ms", "timings"}
        assert row["decision"] in ("YES", "NO")
        assert row["ms"] >= 0
