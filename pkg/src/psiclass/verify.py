"""Cross-pipeline checks: exact identities (core) and fixed-seed Monte Carlo (asymptotic)."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterator

from . import random_trees as rt
from .cache import ResultCache, parse_key
from .config import Config
from .elsv import elsv_fit, hodge_from_elsv, tau_from_elsv
from .hurwitz import (
    HurwitzQuery,
    asymptotic_ratio,
    hurwitz_brute,
    hurwitz_characters,
    iter_factorizations,
    riemann_hurwitz_r,
)
from .kontsevich import kontsevich_sum, string_equation_check, tau_table
from .poly import RationalFunction
from .ribbon import branching_graph_from_factorization, enumerate_trivalent_maps, face_perimeters
from .symmetric import Partition, Permutation, cycle_type, partitions_of
from .hurwitz import Factorization

CROSS_CASES = ((0, 3), (1, 1), (0, 4), (1, 2), (0, 5))
BRANCHING_MAX_DEGREE = 5
BRANCHING_MAX_R = 7


@dataclass(frozen=True)
class Check:
    name: str
    expected: str
    got: str
    passed: bool

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.name}: expected {self.expected}, got {self.got}"


def _check(name, expected, got, passed=None) -> Check:
    if passed is None:
        passed = expected == got
    return Check(name, str(expected), str(got), bool(passed))


@lru_cache(maxsize=None)
def _fit(g: int, n: int):
    return elsv_fit(g, n, hurwitz_characters)


def hurwitz_grid(max_degree: int = 6, max_r: int = 8) -> Iterator[tuple[int, Partition]]:
    for d in range(1, max_degree + 1):
        for mu in partitions_of(d):
            g = 0
            while riemann_hurwitz_r(g, mu) <= max_r:
                yield g, mu
                g += 1


def branching_grid(max_degree: int = BRANCHING_MAX_DEGREE, max_r: int = BRANCHING_MAX_R):
    """Counts (factorizations, failures) over the bounded grid."""
    total = bad = 0
    for d in range(2, max_degree + 1):
        for mu in partitions_of(d):
            g = 0
            while riemann_hurwitz_r(g, mu) <= max_r:
                for f in iter_factorizations(g, mu):
                    b = branching_graph_from_factorization(f)
                    total += 1
                    if face_perimeters(b) != cycle_type(f.target) or b.genus != g:
                        bad += 1
                g += 1
    return total, bad


def worked_factorization() -> Factorization:
    ts = [Permutation.parse(c, 4) for c in ("(12)", "(13)", "(24)", "(14)", "(13)")]
    return Factorization(tuple(ts), Permutation.parse("(1243)", 4))


def core_checks() -> Iterator[Check]:
    K03 = kontsevich_sum(0, 3)
    yield _check("K_{0,3} = 1/(z1 z2 z3)", True, K03 == RationalFunction.monomial_inverse(3, 1, [1, 1, 1]))
    maps11 = enumerate_trivalent_maps(1, 1)
    yield _check("G3_{1,1} classes and aut", [6], [a for _, a in maps11])
    yield _check("K_{1,1} = 1/(24 z1^3)", True,
                 kontsevich_sum(1, 1) == RationalFunction.monomial_inverse(1, Fraction(1, 24), [3]))
    anchors = [((0, (0, 0, 0)), 1), ((1, (1,)), Fraction(1, 24)), ((0, (1, 0, 0, 0)), 1)]
    for (g, k), want in anchors:
        n = len(k)
        yield _check(f"<tau {k}>_{g}", Fraction(want), tau_table(g, n).get(g, k))
    for g, n in CROSS_CASES:
        kt = tau_table(g, n)
        et = tau_from_elsv(_fit(g, n))
        yield _check(f"Kontsevich = ELSV at (g,n)=({g},{n})", len(kt), len(et), kt == et)
        yield _check(f"string equation at ({g},{n})", [], string_equation_check(kt))
    for (g, mu), want in [((0, (2,)), Fraction(1, 2)), ((0, (3,)), 1), ((0, (1, 1, 1)), 4),
                          ((1, (2,)), Fraction(1, 2)), ((1, (1,)), 0)]:
        yield _check(f"Hur_{g}{mu}", Fraction(want), hurwitz_brute(HurwitzQuery(g, Partition.from_parts(mu))))
    mismatches = [(g, str(mu)) for g, mu in hurwitz_grid()
                  if hurwitz_brute(HurwitzQuery(g, mu)) != hurwitz_characters(HurwitzQuery(g, mu))]
    yield _check("brute force = characters, |mu| <= 6, r <= 8", [], mismatches)
    hodge = hodge_from_elsv(elsv_fit(1, 1, lambda g, mu: hurwitz_brute(HurwitzQuery(g, mu))))
    yield _check("<lambda_1>_1 from brute-force Hurwitz data", Fraction(1, 24), hodge.get(1, 1, (0,)))
    f = worked_factorization()
    b = branching_graph_from_factorization(f)
    yield _check("worked factorization: genus, perimeters", (1, "4"), (b.genus, str(face_perimeters(b))))
    total, bad = branching_grid()
    yield _check(f"perimeters = cycle type over {total} factorizations", 0, bad)
    yield _check("Cayley identity m <= 7", True, all(rt.cayley_identity_check(m) for m in range(2, 8)))
    yield _check("m^(m-2) labelled trees, m <= 8", True,
                 all(rt.count_labeled_trees(m) == m ** (m - 2) for m in range(2, 9)))


def asymptotic_checks(cfg: Config) -> Iterator[Check]:
    tc = cfg.trees
    reports = [
        ("valence law TV", rt.valence_histogram(tc.m, tc.valence_samples, tc.seed, tc.tv_threshold)),
        ("Borel law TV", rt.root_component_law(tc.m, tc.borel_trees, tc.seed, tc.tv_threshold, cfg.jobs)),
        ("Rayleigh KS", rt.trunk_length_law(tc.m, tc.edge_tree_samples, tc.seed, tc.ks_threshold, cfg.jobs)),
        ("trunk split KS", rt.trunk_split_law(tc.m, tc.edge_tree_samples, tc.seed, tc.ks_threshold, cfg.jobs)),
    ]
    for s in tc.edge_factor_points:
        reports.append((f"edge factor at {s}", rt.edge_factor_mc(*s, samples=tc.edge_factor_samples, seed=tc.seed)))
    for name, rep in reports:
        yield _check(name, f"< {rep['tolerance']}", f"{rep.get('relative_error', rep['statistic']):.5g}",
                     rep["pass"])
    rate = rt.assembly_success_rate(tc.assembly_tolerance)
    exact = math.exp(-2) / 2
    yield _check("assembly rate = e^-2/2", f"{exact:.12f}", f"{float(rate):.12f}",
                 abs(float(rate) - exact) < tc.assembly_tolerance)
    for x in ((1,), (1, 2)):
        ratios = [float(asymptotic_ratio(0, x, N).ratio) for N in (5, 10, 15, 20)]
        ok = all(a < b for a, b in zip(ratios, ratios[1:])) and abs(ratios[-1] - 1) < 0.25
        yield _check(f"Hurwitz asymptotic ratio x={x}", "increasing towards 1",
                     ", ".join(f"{r:.5f}" for r in ratios), ok)


def recompute(key: str) -> Fraction:
    kind, f = parse_key(key)
    if kind == "tau":
        k = f["k"]
        return tau_table(f["g"], len(k)).get(f["g"], k)
    if kind == "hurwitz":
        return hurwitz_characters(HurwitzQuery(f["g"], Partition.from_parts(f["mu"])))
    if kind == "hodge":
        k = f["k"]
        return hodge_from_elsv(_fit(f["g"], len(k))).get(f["g"], f["j"], k)
    raise ValueError(f"unknown cache key kind {kind!r}")


def cache_checks(cache: ResultCache) -> Iterator[Check]:
    for key, entry in sorted(cache.entries().items()):
        yield _check(f"cache {key}", entry.value, recompute(key))


def run_suite(suite: str, cfg: Config, cache: ResultCache | None = None,
              progress: Callable[[Check], None] | None = None) -> list[Check]:
    if suite not in ("core", "asymptotic", "all"):
        raise ValueError(f"unknown suite {suite!r}")
    sources = []
    if suite in ("core", "all"):
        sources.append(core_checks())
    if suite in ("asymptotic", "all"):
        sources.append(asymptotic_checks(cfg))
    if cache is not None:
        sources.append(cache_checks(cache))
    out = []
    for src in sources:
        for c in src:
            out.append(c)
            if progress:
                progress(c)
    return out
