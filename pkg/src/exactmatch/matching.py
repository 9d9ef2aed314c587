"""Matchings, allowed edges, braces, tight sets, alternating cycles.

Everything here works on the underlying simple structure (cells): edge
colors never influence whether a matching exists, only how it is counted.
Algorithms are deterministic -- rows are processed in increasing order and
adjacency lists are sorted -- so repeated runs give identical certificates.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional, Tuple

from .errors import (
    CapExceeded,
    IsBrace,
    NoPerfectMatching,
    NotMatchingCovered,
    UnsupportedSize,
)
from .graphs import BLUE, RED, ColoredBipartiteGraph

EXHAUSTIVE_TIGHT_SET_LIMIT = 14
DEFAULT_CYCLE_CAP = 10**6


@dataclass(frozen=True)
class Matching:
    """Row -> column assignment with the matched edge colors.

    assignment[i] is the column matched to row i, or None. colors[i] is the
    color of the matched record (for multigraph cells with both colors, the
    enumerator decides; max_matching reports the blue record).
    """

    assignment: Tuple[Optional[int], ...]
    colors: Tuple[Optional[int], ...]

    @property
    def size(self) -> int:
        return sum(1 for c in self.assignment if c is not None)

    @property
    def red_count(self) -> int:
        return sum(1 for k in self.colors if k == RED)

    def as_edges(self) -> Tuple[Tuple[int, int, int], ...]:
        return tuple(
            (i, c, k)
            for i, (c, k) in enumerate(zip(self.assignment, self.colors))
            if c is not None
        )


# ---------------------------------------------------------------------------
# maximum matching (Kuhn augmenting paths)


def _augment(
    row_adj: Tuple[Tuple[int, ...], ...],
    row: int,
    match_col: list[Optional[int]],
    visited: list[bool],
) -> bool:
    for col in row_adj[row]:
        if visited[col]:
            continue
        visited[col] = True
        if match_col[col] is None or _augment(
            row_adj, match_col[col], match_col, visited
        ):
            match_col[col] = row
            return True
    return False


def _max_assignment(
    n: int,
    row_adj: Tuple[Tuple[int, ...], ...],
    preset: Optional[dict[int, int]] = None,
) -> list[Optional[int]]:
    """Deterministic maximum matching; preset maps row -> col to seed."""
    match_col: list[Optional[int]] = [None] * n
    if preset:
        for r, c in preset.items():
            assert match_col[c] is None
            match_col[c] = r
    matched_rows = set(preset.keys()) if preset else set()
    # greedy pass keeps early rows on their first free column (identity on
    # complete graphs), then augmenting paths fix up the rest
    for row in range(n):
        if row in matched_rows:
            continue
        for col in row_adj[row]:
            if match_col[col] is None:
                match_col[col] = row
                matched_rows.add(row)
                break
    for row in range(n):
        if row in matched_rows:
            continue
        visited = [False] * n
        _augment(row_adj, row, match_col, visited)
    assignment: list[Optional[int]] = [None] * n
    for col, row in enumerate(match_col):
        if row is not None:
            assignment[row] = col
    return assignment


def max_matching(g: ColoredBipartiteGraph) -> Matching:
    assignment = _max_assignment(g.n, g.row_adj)
    colors: list[Optional[int]] = [None] * g.n
    for i, c in enumerate(assignment):
        if c is not None:
            colors[i] = g.cells[i, c][0]  # blue record if both present
    return Matching(tuple(assignment), tuple(colors))


def has_perfect_matching(g: ColoredBipartiteGraph) -> bool:
    if g.n == 0:
        return True
    return max_matching(g).size == g.n


# ---------------------------------------------------------------------------
# allowed edges and matching-covered


def allowed_edges(g: ColoredBipartiteGraph) -> ColoredBipartiteGraph:
    """Subgraph of edges lying in at least one perfect matching.

    With a perfect matching M fixed, orient matched cells col -> row and the
    rest row -> col; a non-matching cell (r, c) is allowed iff r is reachable
    from c. Raises NoPerfectMatching when the graph has none.
    """
    n = g.n
    m = max_matching(g)
    if m.size < n:
        raise NoPerfectMatching(f"maximum matching has size {m.size} < {n}")
    assignment = m.assignment

    # reach[c] = set of rows reachable from column c
    reach: list[set[int]] = []
    for start in range(n):
        rows_seen: set[int] = set()
        cols_seen = {start}
        frontier_cols = [start]
        while frontier_cols:
            col = frontier_cols.pop()
            row = None
            for r in g.col_adj[col]:
                if assignment[r] == col:
                    row = r
                    break
            if row is None or row in rows_seen:
                continue
            rows_seen.add(row)
            for c2 in g.row_adj[row]:
                if c2 != assignment[row] and c2 not in cols_seen:
                    cols_seen.add(c2)
                    frontier_cols.append(c2)
        reach.append(rows_seen)

    kept = [
        rec
        for rec in g.edges
        if assignment[rec[0]] == rec[1] or rec[0] in reach[rec[1]]
    ]
    return ColoredBipartiteGraph.make(n, kept, g.multi)


def is_matching_covered(g: ColoredBipartiteGraph) -> bool:
    """Connected and every edge lies in some perfect matching."""
    if g.n == 0:
        return False
    if not g.is_connected():
        return False
    try:
        kept = allowed_edges(g)
    except NoPerfectMatching:
        return False
    return kept.edges == g.edges


# ---------------------------------------------------------------------------
# braces


def _pm_avoiding(
    g: ColoredBipartiteGraph,
    del_rows: set[int],
    del_cols: set[int],
    base_assignment: Tuple[Optional[int], ...],
) -> bool:
    """Does G minus the given vertices still have a perfect matching?

    Recycles the base matching: pairs untouched by the deletion stay
    matched, so at most four augmentations run.
    """
    n = g.n
    keep_rows = [r for r in range(n) if r not in del_rows]
    adj = tuple(
        tuple(c for c in g.row_adj[r] if c not in del_cols)
        if r not in del_rows
        else ()
        for r in range(n)
    )
    preset = {
        r: base_assignment[r]
        for r in keep_rows
        if base_assignment[r] is not None
        and base_assignment[r] not in del_cols
    }
    match_col: list[Optional[int]] = [None] * n
    for r, c in preset.items():
        match_col[c] = r
    matched = len(preset)
    for row in keep_rows:
        if row in preset:
            continue
        visited = [False] * n
        for c in del_cols:
            visited[c] = True
        if _augment(adj, row, match_col, visited):
            matched += 1
        else:
            return False
    return matched == len(keep_rows)


def is_brace(g: ColoredBipartiteGraph) -> bool:
    """Every two vertex-disjoint edges extend to a perfect matching.

    Equivalently: matching-covered and each 4-vertex deletion induced by a
    disjoint cell pair leaves a perfectly matchable graph. Graphs with
    n <= 2 pass vacuously once matching-covered, which is the convention.
    """
    if not is_matching_covered(g):
        return False
    base = max_matching(g).assignment
    cells = sorted(g.cells)
    for (r1, c1), (r2, c2) in itertools.combinations(cells, 2):
        if r1 == r2 or c1 == c2:
            continue
        if not _pm_avoiding(g, {r1, r2}, {c1, c2}, base):
            return False
    return True


# ---------------------------------------------------------------------------
# tight set certificates


@dataclass(frozen=True)
class TightSetCertificate:
    """Rows A1 and columns B1 with N(B1) subseteq A1 and |A1| = |B1| + 1.

    Every perfect matching then crosses from A1 to the complement columns
    exactly once. mirrored certificates swap the roles of rows and columns.
    """

    rows_a1: Tuple[int, ...]
    cols_b1: Tuple[int, ...]
    mirrored: bool = False


def certificate_ok(g: ColoredBipartiteGraph, cert: TightSetCertificate) -> bool:
    base = g.transpose() if cert.mirrored else g
    a1, b1 = set(cert.rows_a1), set(cert.cols_b1)
    if not b1 or not (0 < len(a1) < base.n):
        return False
    if len(a1) != len(b1) + 1:
        return False
    neighborhood = {r for c in b1 for r in base.col_adj[c]}
    return neighborhood <= a1


def find_tight_set(g: ColoredBipartiteGraph) -> TightSetCertificate:
    """Produce a tight set certificate for a non-brace matching-covered graph.

    Primary path: take the first vertex-disjoint cell pair whose deletion
    kills the perfect matching, extract the deficiency violator S of the
    reduced graph (unmatched rows plus alternating reachability), and lift:
    A1 = rows minus S, B1 = cols minus N(S). For matching-covered inputs the
    lift always lands a valid standard-form certificate; if its arithmetic
    ever fails we fall back to exhaustive column-subset search (n <= 14,
    UnsupportedSize beyond). Raises IsBrace when no pair fails.
    """
    if not is_matching_covered(g):
        raise NotMatchingCovered("find_tight_set needs a matching-covered graph")
    n = g.n
    if n <= 2:
        raise IsBrace(f"n = {n} matching-covered graphs are braces")

    base = max_matching(g).assignment
    cells = sorted(g.cells)
    failing: Optional[Tuple[Tuple[int, int], Tuple[int, int]]] = None
    for pair in itertools.combinations(cells, 2):
        (r1, c1), (r2, c2) = pair
        if r1 == r2 or c1 == c2:
            continue
        if not _pm_avoiding(g, {r1, r2}, {c1, c2}, base):
            failing = pair
            break
    if failing is None:
        raise IsBrace("all disjoint edge pairs extend to perfect matchings")

    cert = _lift_certificate(g, failing)
    if cert is not None and certificate_ok(g, cert):
        return cert
    return _exhaustive_tight_set(g)


def _lift_certificate(
    g: ColoredBipartiteGraph,
    pair: Tuple[Tuple[int, int], Tuple[int, int]],
) -> Optional[TightSetCertificate]:
    (r1, c1), (r2, c2) = pair
    n = g.n
    del_rows, del_cols = {r1, r2}, {c1, c2}
    adj = tuple(
        tuple(c for c in g.row_adj[r] if c not in del_cols)
        if r not in del_rows
        else ()
        for r in range(n)
    )
    match_col: list[Optional[int]] = [None] * n
    for row in range(n):
        if row in del_rows:
            continue
        visited = [False] * n
        _augment(adj, row, match_col, visited)
    row_match: dict[int, int] = {}
    for col, row in enumerate(match_col):
        if row is not None:
            row_match[row] = col

    unmatched = [
        r for r in range(n) if r not in del_rows and r not in row_match
    ]
    if not unmatched:
        return None  # pair actually extends; caller logic went sideways
    # alternating reachability: rows over free edges to cols, back over
    # matched edges to rows
    s_rows = set(unmatched)
    seen_cols: set[int] = set()
    frontier = list(unmatched)
    while frontier:
        row = frontier.pop()
        for col in adj[row]:
            if col in seen_cols:
                continue
            seen_cols.add(col)
            back = match_col[col]
            if back is not None and back not in s_rows:
                s_rows.add(back)
                frontier.append(back)

    neighborhood = {c for r in s_rows for c in g.row_adj[r]}
    if len(neighborhood) != len(s_rows) + 1 or len(s_rows) > n - 2:
        return None
    a1 = tuple(sorted(set(range(n)) - s_rows))
    b1 = tuple(sorted(set(range(n)) - neighborhood))
    if not b1:
        return None
    return TightSetCertificate(a1, b1, mirrored=False)


def _exhaustive_tight_set(g: ColoredBipartiteGraph) -> TightSetCertificate:
    n = g.n
    if n > EXHAUSTIVE_TIGHT_SET_LIMIT:
        raise UnsupportedSize(
            f"exhaustive tight-set search capped at n = "
            f"{EXHAUSTIVE_TIGHT_SET_LIMIT}, got {n}"
        )
    for size in range(1, n - 1):
        for b1 in itertools.combinations(range(n), size):
            neighborhood: set[int] = set()
            for c in b1:
                neighborhood.update(g.col_adj[c])
            if len(neighborhood) == size + 1:
                return TightSetCertificate(
                    tuple(sorted(neighborhood)), b1, mirrored=False
                )
    raise AssertionError(
        "non-brace matching-covered graph without a tight set"
    )


# ---------------------------------------------------------------------------
# alternating cycles


@dataclass(frozen=True)
class AlternatingCycle:
    """Cycle alternating between a base matching M0 and other edges.

    rows is the canonical rotation (smallest row first) of the visited rows
    i_0..i_{k-1}; the cycle uses matched cells (i_j, m0(i_j)) and free cells
    (i_j, m0(i_{j+1})). displacement is the red-count change from switching
    the matching along the cycle.
    """

    rows: Tuple[int, ...]
    edges: Tuple[Tuple[int, int], ...]
    displacement: int


def alternating_cycles(
    g: ColoredBipartiteGraph,
    m0: Matching,
    cap: int = DEFAULT_CYCLE_CAP,
) -> list[AlternatingCycle]:
    """All alternating cycles w.r.t. m0, lexicographic by row sequence.

    Cycles are directed: for k >= 3 rows, traversing the same rows the other
    way uses different free cells and is listed separately. Raises
    CapExceeded (carrying the partial list) past cap cycles.
    """
    assert not g.multi, "alternating cycles are defined on simple graphs"
    n = g.n
    assignment = m0.assignment
    assert all(c is not None for c in assignment), "m0 must be perfect"
    col_owner = {c: r for r, c in enumerate(assignment)}

    out: list[AlternatingCycle] = []

    def rho(r: int, c: int) -> int:
        return 1 if g.cells[r, c][0] == RED else 0

    def close_cycle(path: list[int]) -> None:
        edges = []
        delta = 0
        k = len(path)
        for idx in range(k):
            r = path[idx]
            nxt = path[(idx + 1) % k]
            edges.append((r, assignment[r]))
            edges.append((r, assignment[nxt]))
            delta += rho(r, assignment[nxt]) - rho(r, assignment[r])
        out.append(AlternatingCycle(tuple(path), tuple(edges), delta))
        if len(out) > cap:
            raise CapExceeded(
                f"more than {cap} alternating cycles", partial=out[:cap]
            )

    def extend(start: int, path: list[int], used: set[int]) -> None:
        last = path[-1]
        for col in g.row_adj[last]:
            if col == assignment[last]:
                continue
            row = col_owner[col]
            if row == start and len(path) >= 2:
                close_cycle(path)
                continue
            if row <= start or row in used:
                continue
            used.add(row)
            path.append(row)
            extend(start, path, used)
            path.pop()
            used.remove(row)

    for start in range(n):
        extend(start, [start], {start})

    def dedupe_two_cycles(
        cycles: list[AlternatingCycle],
    ) -> list[AlternatingCycle]:
        # k = 2 cycles appear once per direction but are the same edge set
        seen: set[Tuple[int, ...]] = set()
        kept = []
        for cyc in cycles:
            if len(cyc.rows) == 2:
                key = cyc.rows
                if key in seen:
                    continue
                seen.add(key)
            kept.append(cyc)
        return kept

    return dedupe_two_cycles(out)


def reachable_red_counts(
    g: ColoredBipartiteGraph,
    m0: Matching,
    cap: int = DEFAULT_CYCLE_CAP,
) -> set[int]:
    """Red counts of matchings reachable from m0 by disjoint cycle switches.

    Every collection of row-disjoint alternating cycles yields the matching
    obtained by switching all of them; the result's red count is m0's plus
    the displacement sum. Raises CapExceeded past cap collections.
    """
    cycles = alternating_cycles(g, m0, cap)
    base = m0.red_count
    counts = {base}
    masks = [
        (sum(1 << r for r in cyc.rows), cyc.displacement) for cyc in cycles
    ]

    seen_states = 0

    def walk(idx: int, used_mask: int, delta: int) -> None:
        nonlocal seen_states
        counts.add(base + delta)
        for j in range(idx, len(masks)):
            mask, d = masks[j]
            if mask & used_mask:
                continue
            seen_states += 1
            if seen_states > cap:
                raise CapExceeded(
                    f"more than {cap} disjoint cycle collections",
                    partial=sorted(counts),
                )
            walk(j + 1, used_mask | mask, delta + d)

    walk(0, 0, 0)
    return counts
