"""Named verification suites.

Each suite draws a deterministic batch of instances from its seed, runs the
matching oracle/identity checks, and returns a SuiteReport of individual
pass/fail results.  The CLI addresses suites by name; the acceptance tests
reuse the same runners with their own fixed parameters.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

from ..errors import BadParams
from ..graphs import (
    BLUE,
    RED,
    ColoredBipartiteGraph,
    band_cyclic,
    band_path,
    random_graph,
    with_coloring,
)
from ..matching import allowed_edges, is_brace, is_matching_covered
from ..decomposition import achievable_sets_compose, decompose, leaves, split_count
from ..solver import feasible_red_counts, pt_nonvanishing
from .core import (
    mvv_test,
    red_count_set,
    universal_small_check,
)
from .identities import (
    IntPolynomial,
    MaskedMatrix,
    check_bad_locus,
    check_gen_vandermonde,
    check_hall_block_product,
    check_masked_minor,
    check_replacement_det,
    check_se_identity,
    kernel_family,
)
from .width2 import (
    TernaryWord,
    check_transfer_word,
    width2_branch_check,
    width2_cyclic_split_check,
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class SuiteReport:
    suite: str
    checks: Tuple[CheckResult, ...]
    headline: str = ""

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def counts(self) -> Tuple[int, int]:
        ok = sum(1 for c in self.checks if c.passed)
        return ok, len(self.checks)

    def summary(self) -> str:
        ok, total = self.counts
        line = self.headline if self.headline else f"{ok}/{total}"
        status = "PASS" if self.passed else "FAIL"
        return f"{self.suite}: {line} {status}"


# ---------------------------------------------------------------------------
# instance sampling helpers


def _sample_brace(
    rng: random.Random, max_n: int, attempts: int = 400
) -> ColoredBipartiteGraph:
    for _ in range(attempts):
        n = rng.randint(3, max_n)
        density = rng.choice((0.6, 0.8, 1.0))
        g = random_graph(
            n,
            density=density,
            red_prob=rng.choice((0.2, 0.5)),
            seed=rng.randrange(1 << 30),
            require_pm=True,
        )
        core = allowed_edges(g)
        if core.is_connected() and is_brace(core) and core.n == g.n:
            return core
    raise BadParams("could not sample a brace; widen the attempt budget")


def _sample_covered_nonbrace(
    rng: random.Random, max_n: int, attempts: int = 600
) -> ColoredBipartiteGraph:
    for _ in range(attempts):
        n = rng.randint(3, max_n)
        g = random_graph(
            n,
            density=rng.choice((0.4, 0.6)),
            red_prob=rng.choice((0.2, 0.5)),
            seed=rng.randrange(1 << 30),
            require_pm=True,
        )
        core = allowed_edges(g)
        for rows, cols in core.components():
            if len(rows) != len(cols) or len(rows) < 3:
                continue
            comp = core.induced(rows, cols)
            if is_matching_covered(comp) and not is_brace(comp):
                return comp
    raise BadParams("could not sample a covered non-brace")


def _random_poly(rng: random.Random, max_deg: int = 2) -> IntPolynomial:
    return IntPolynomial.from_list(
        [rng.randint(-4, 4) for _ in range(rng.randint(1, max_deg + 1))]
    )


def _nonzero_poly(rng: random.Random, max_deg: int = 2) -> IntPolynomial:
    while True:
        p = _random_poly(rng, max_deg)
        if not p.is_zero:
            return p


def sample_kernel_family(rng: random.Random, ms=(2, 3, 4)):
    """A kernel-built support family whose gap determinant avoids the bases.

    Exponent patterns like gaps (0, 1, 3) can genuinely share a linear
    factor with a base, so sampling rejects those instances and redraws.
    """
    while True:
        m = rng.choice(ms)
        alphas = rng.sample(range(-4, 9), m)
        exponents = sorted(rng.sample(range(0, 8), m))
        fam = kernel_family(alphas, exponents, _nonzero_poly(rng))
        report = check_gen_vandermonde(fam)
        if all(report.gcd_ok):
            return fam, report


# ---------------------------------------------------------------------------
# identities suite


_BAD_LOCUS_CYCLE = ("SB2", "DB2", "SB3", "DB3")


def _one_identity_check(category: str, rng: random.Random) -> CheckResult:
    if category == "se":
        n = rng.randint(2, 4)
        g = random_graph(n, density=0.8, red_prob=0.4, seed=rng.randrange(1 << 30))
        if not g.edges:
            return CheckResult("se(empty)", True, "no edges to expand")
        e = rng.choice(g.edges)
        t = rng.randint(0, n)
        ok = check_se_identity(g, e, t)
        return CheckResult(f"se n={n} e={e} t={t}", ok)
    if category == "replacement":
        n = rng.randint(2, 4)
        m = [[_random_poly(rng) for _ in range(n)] for _ in range(n)]
        v = [_random_poly(rng) for _ in range(n)]
        ok = check_replacement_det(m, rng.randrange(n), v)
        return CheckResult(f"replacement {n}x{n}", ok)
    if category == "hall":
        n1, n2 = rng.randint(2, 3), rng.randint(2, 3)
        g1 = random_graph(n1, density=0.9, red_prob=0.5, seed=rng.randrange(1 << 30))
        g2 = random_graph(n2, density=0.9, red_prob=0.5, seed=rng.randrange(1 << 30))
        t = rng.randint(0, n1 + n2)
        ok = check_hall_block_product(g1, g2, t)
        return CheckResult(f"hall {n1}+{n2} t={t}", ok)
    if category == "masked":
        m = rng.randint(2, 5)
        w = MaskedMatrix.make(
            rng.sample(range(-5, 9), m),
            sorted(rng.sample(range(0, 9), m)),
            [[rng.randint(0, 1) for _ in range(m)] for _ in range(m)],
        )
        return CheckResult(f"masked m={m}", check_masked_minor(w))
    if category == "genvan":
        fam, report = sample_kernel_family(rng)
        return CheckResult(f"genvan m={fam.m}", report.all_ok)
    if category == "badlocus":
        shape = _BAD_LOCUS_CYCLE[rng.randrange(4)]
        if shape == "SB2":
            params = {
                "alpha": rng.randint(-5, 5),
                "c": rng.randint(1, 4),
                "w": _random_poly(rng),
            }
        elif shape == "DB2":
            a, b = rng.sample(range(-5, 6), 2)
            params = {"alpha": a, "beta": b, "c": rng.randint(1, 4), "h": _random_poly(rng)}
        elif shape == "SB3":
            params = {
                "alpha": rng.randint(-5, 5),
                "c": tuple(sorted(rng.sample(range(0, 8), 3))),
                "w": _random_poly(rng),
                "s": _random_poly(rng),
            }
        else:
            params = {
                "alphas": tuple(rng.sample(range(-5, 6), 3)),
                "c": rng.randint(1, 4),
                "a": _random_poly(rng),
                "b": _random_poly(rng),
            }
        return CheckResult(f"badlocus {shape}", check_bad_locus(shape, params))
    raise BadParams(f"unknown identity category {category}")


_IDENTITY_SCHEDULE = ("se", "replacement", "hall", "masked", "genvan", "badlocus")


def suite_identities(
    n: Optional[int] = None, seed: int = 0, trials: Optional[int] = None
) -> SuiteReport:
    trials = 60 if trials is None else trials
    rng = random.Random(seed)
    checks = [
        _one_identity_check(_IDENTITY_SCHEDULE[i % len(_IDENTITY_SCHEDULE)], rng)
        for i in range(trials)
    ]
    return SuiteReport("identities", tuple(checks))


# ---------------------------------------------------------------------------
# universal-small suite


def suite_universal_small(
    n: Optional[int] = None, seed: int = 0, trials: Optional[int] = None
) -> SuiteReport:
    expected = {2: 3, 3: 63, 4: 16_777_215}
    checks = []
    pieces = []
    vanishing_total = 0
    for size in (2, 3, 4):
        report = universal_small_check(size)
        ok = (
            report.subsets_checked == expected[size]
            and report.vanishing_found == 0
        )
        vanishing_total += report.vanishing_found
        pieces.append(f"n={size}:{report.subsets_checked}/{expected[size]}")
        checks.append(
            CheckResult(
                f"universal n={size}",
                ok,
                f"{report.subsets_checked} subsets, {report.vanishing_found} vanishing",
            )
        )
    headline = " ".join(pieces) + f" vanishing={vanishing_total}"
    return SuiteReport("universal-small", tuple(checks), headline=headline)


# ---------------------------------------------------------------------------
# width2 suite


def _band_colorings(g: ColoredBipartiteGraph, seed: int):
    yield "all-blue", with_coloring(g, red="none")
    yield "diag-red", with_coloring(g, red="diag")
    yield "bernoulli", with_coloring(g, red="bernoulli", red_prob=0.5, seed=seed)


def suite_width2(
    n: Optional[int] = None, seed: int = 0, trials: Optional[int] = None
) -> SuiteReport:
    max_m = 8 if n is None else n
    max_r = min(max_m, 8)
    checks = []
    for m in range(2, max_m + 1):
        for label, colored in _band_colorings(band_path(m), seed):
            reds = sorted(
                (r, c) for (r, c), ks in colored.cells.items() if ks == (RED,)
            )
            ok = all(width2_branch_check(m, reds, t) for t in range(m + 1))
            checks.append(CheckResult(f"branch m={m} {label}", ok))
    for m in range(3, max_m + 1):
        for label, colored in _band_colorings(band_cyclic(m), seed):
            reds = sorted(
                (r, c) for (r, c), ks in colored.cells.items() if ks == (RED,)
            )
            ok = all(
                width2_cyclic_split_check(m, reds, t) for t in range(m + 1)
            )
            checks.append(CheckResult(f"cyclic m={m} {label}", ok))
    for r in range(1, max_r + 1):
        words = 0
        ok = True
        for letters in itertools.product((-1, 0, 1), repeat=r):
            if not check_transfer_word(TernaryWord.make(letters)):
                ok = False
                break
            words += 1
        checks.append(CheckResult(f"transfer r={r}", ok, f"{words} words"))
    return SuiteReport("width2", tuple(checks))


# ---------------------------------------------------------------------------
# asnc-empirical suite


def suite_asnc_empirical(
    n: Optional[int] = None, seed: int = 0, trials: Optional[int] = None
) -> SuiteReport:
    max_n = 6 if n is None else n
    trials = 100 if trials is None else trials
    rng = random.Random(seed)
    checks = []
    for idx in range(trials):
        g = _sample_brace(rng, max_n)
        achievable = red_count_set(g)
        ok = True
        for t in range(g.n + 1):
            nonvanishing = pt_nonvanishing(g, t)
            if (t in achievable) != nonvanishing:
                ok = False
                break
        checks.append(
            CheckResult(
                f"brace[{idx}] n={g.n}",
                ok,
                f"achievable={sorted(achievable)}",
            )
        )
    return SuiteReport("asnc-empirical", tuple(checks))


# ---------------------------------------------------------------------------
# decomposition suite


def suite_decomposition(
    n: Optional[int] = None, seed: int = 0, trials: Optional[int] = None
) -> SuiteReport:
    max_n = 7 if n is None else n
    trials = 50 if trials is None else trials
    rng = random.Random(seed)
    checks = []
    for idx in range(trials):
        g = _sample_covered_nonbrace(rng, max_n)
        node = decompose(g)
        blocks = leaves(node)
        size_ok = sum(b.graph.n for b in blocks) == g.n + split_count(node)
        origin_union: set = set()
        for b in blocks:
            for records in b.block.edge_origin:
                origin_union.update(records)
        origin_ok = origin_union == set(g.edges)
        compose_ok = achievable_sets_compose(g)
        ok = size_ok and origin_ok and compose_ok
        checks.append(
            CheckResult(
                f"nonbrace[{idx}] n={g.n}",
                ok,
                f"blocks={[b.graph.n for b in blocks]}",
            )
        )
    return SuiteReport("decomposition", tuple(checks))


# ---------------------------------------------------------------------------
# mvv-agreement suite


def suite_mvv_agreement(
    n: Optional[int] = None, seed: int = 0, trials: Optional[int] = None
) -> SuiteReport:
    max_n = 7 if n is None else n
    trials = 300 if trials is None else trials
    rng = random.Random(seed)
    checks = []
    for idx in range(trials):
        size = rng.randint(2, max_n)
        g = random_graph(
            size,
            density=rng.choice((0.4, 0.6, 0.9)),
            red_prob=rng.choice((0.2, 0.5)),
            seed=rng.randrange(1 << 30),
        )
        t = rng.randint(0, size)
        feasible = t in feasible_red_counts(g)
        probed = mvv_test(g, t, seed=rng.randrange(1 << 30))
        # one-sided in principle; at these degrees and p = 1000003 the
        # false-negative probability is far below one in 10^30, so exact
        # agreement is the check
        ok = probed == feasible
        checks.append(
            CheckResult(f"mvv[{idx}] n={size} t={t}", ok, f"feasible={feasible}")
        )
    return SuiteReport("mvv-agreement", tuple(checks))


# ---------------------------------------------------------------------------
# registry


SUITES: Dict[str, Callable[..., SuiteReport]] = {
    "identities": suite_identities,
    "universal-small": suite_universal_small,
    "width2": suite_width2,
    "asnc-empirical": suite_asnc_empirical,
    "decomposition": suite_decomposition,
    "mvv-agreement": suite_mvv_agreement,
}


def run_suite(
    name: str,
    n: Optional[int] = None,
    seed: int = 0,
    trials: Optional[int] = None,
) -> SuiteReport:
    if name not in SUITES:
        raise BadParams(
            f"unknown suite {name!r}; available: {', '.join(sorted(SUITES))}"
        )
    return SUITES[name](n=n, seed=seed, trials=trials)
