"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line."""
import math
import time
from fractions import Fraction

import pytest

from psiclass import random_trees as rt
from psiclass.config import TreeConfig
from psiclass.elsv import elsv_fit, hodge_from_elsv, tau_from_elsv
from psiclass.hurwitz import HurwitzQuery, asymptotic_ratio, hurwitz_brute, hurwitz_characters
from psiclass.kontsevich import expand_and_extract, kontsevich_sum, tau_table
from psiclass.poly import RationalFunction
from psiclass.ribbon import branching_graph_from_factorization, enumerate_trivalent_maps, face_perimeters
from psiclass.symmetric import Partition
from psiclass.verify import branching_grid, hurwitz_grid, worked_factorization


@pytest.fixture
def report(capsys):
    def emit(number, name, ok, detail=""):
        with capsys.disabled():
            print(f"\nACCEPTANCE {number:2d} {'PASS' if ok else 'FAIL'}  {name}  {detail}")
        assert ok, f"criterion {number} failed: {detail}"

    return emit


def test_criterion_01_k03(report):
    t = time.perf_counter()
    maps = enumerate_trivalent_maps(0, 3)
    same = kontsevich_sum(0, 3) == RationalFunction.monomial_inverse(3, 1, [1, 1, 1])
    dt = time.perf_counter() - t
    report(1, "K_{0,3} = 1/(z1 z2 z3)", same and len(maps) == 4 and dt < 1.0,
           f"classes={len(maps)} exact={same} {dt:.3f}s")


def test_criterion_02_k11(report):
    t = time.perf_counter()
    maps = enumerate_trivalent_maps(1, 1)
    same = kontsevich_sum(1, 1) == RationalFunction.monomial_inverse(1, Fraction(1, 24), [3])
    dt = time.perf_counter() - t
    auts = [a for _, a in maps]
    report(2, "K_{1,1} = 1/(24 z1^3)", same and auts == [6] and dt < 1.0,
           f"aut orders={auts} exact={same} {dt:.3f}s")


def test_criterion_03_tau_anchors(report):
    t = time.perf_counter()
    t03 = expand_and_extract(kontsevich_sum(0, 3), 0, 3)
    t11 = expand_and_extract(kontsevich_sum(1, 1), 1, 1)
    t04 = expand_and_extract(kontsevich_sum(0, 4), 0, 4)
    dt = time.perf_counter() - t
    got = (t03.get(0, (0, 0, 0)), t11.get(1, (1,)), t04.get(0, (1, 0, 0, 0)))
    want = (1, Fraction(1, 24), 1)
    report(3, "tau anchors", got == want and dt < 10.0, f"got={tuple(map(str, got))} {dt:.2f}s")


def test_criterion_04_cross_pipeline(report):
    used = {}

    def source(g, mu):
        used[(g, mu)] = hurwitz_characters(HurwitzQuery(g, mu))
        return used[(g, mu)]

    equal = {}
    for g, n in [(0, 3), (0, 4), (0, 5), (1, 1), (1, 2)]:
        equal[(g, n)] = tau_from_elsv(elsv_fit(g, n, source)) == tau_table(g, n)
    checked = {k: v for k, v in used.items() if k[1].size <= 6}
    brute_ok = all(hurwitz_brute(HurwitzQuery(g, mu)) == v for (g, mu), v in checked.items())
    grid_ok = all(hurwitz_brute(HurwitzQuery(g, mu)) == hurwitz_characters(HurwitzQuery(g, mu))
                  for g, mu in hurwitz_grid(6, 8))
    report(4, "Kontsevich tables = ELSV tables", all(equal.values()) and brute_ok and grid_ok,
           f"{equal} inputs_brute_checked={len(checked)}/{len(used)}")


def test_criterion_05_hurwitz(report):
    anchors = {(0, (2,)): Fraction(1, 2), (0, (3,)): 1, (0, (1, 1, 1)): 4, (1, (2,)): Fraction(1, 2), (1, (1,)): 0}
    got = {k: hurwitz_brute(HurwitzQuery(k[0], Partition.from_parts(k[1]))) for k in anchors}
    grid = list(hurwitz_grid(6, 8))
    bad = [(g, str(mu)) for g, mu in grid
           if hurwitz_brute(HurwitzQuery(g, mu)) != hurwitz_characters(HurwitzQuery(g, mu))]
    report(5, "Hurwitz anchors and brute = characters", got == anchors and not bad,
           f"grid={len(grid)} mismatches={bad}")


def test_criterion_06_hodge(report):
    fit = elsv_fit(1, 1, lambda g, mu: hurwitz_brute(HurwitzQuery(g, mu)))
    const = fit.coefficients.get((0,), Fraction(0))
    lam = hodge_from_elsv(fit).get(1, 1, (0,))
    report(6, "<lambda_1>_1 from Hurwitz data", const == Fraction(-1, 24) and lam == Fraction(1, 24),
           f"constant={const} lambda_1={lam}")


@pytest.mark.slow
def test_criterion_07_branching(report):
    b = branching_graph_from_factorization(worked_factorization())
    worked = b.genus == 1 and face_perimeters(b) == Partition((4,))
    total, bad = branching_grid(5, 7)
    report(7, "branching perimeters and genus", worked and bad == 0,
           f"worked example genus={b.genus} perimeters={face_perimeters(b)}; {total} factorizations, {bad} failures")


def test_criterion_08_cayley(report):
    identity = {m: rt.cayley_identity_check(m) for m in range(2, 8)}
    totals = {m: rt.count_labeled_trees(m) for m in range(2, 9)}
    ok = all(identity.values()) and all(totals[m] == m ** (m - 2) for m in totals)
    report(8, "Cayley identity and m^(m-2)", ok, f"identity={identity} totals={totals}")


@pytest.mark.slow
def test_criterion_09_asymptotic_suite(report):
    tc = TreeConfig()
    results = {
        "valence TV": rt.valence_histogram(tc.m, tc.valence_samples, tc.seed, 0.01),
        "Borel TV": rt.root_component_law(tc.m, tc.borel_trees, tc.seed, 0.01),
        "Rayleigh KS": rt.trunk_length_law(tc.m, tc.edge_tree_samples, tc.seed, 0.02),
        "split KS": rt.trunk_split_law(tc.m, tc.edge_tree_samples, tc.seed, 0.02),
    }
    # the estimator is scale invariant, so the points are not multiples of each other
    for s in tc.edge_factor_points:
        results[f"edge factor {s}"] = rt.edge_factor_mc(*s, samples=1_000_000, seed=tc.seed)
    rate = rt.assembly_success_rate(1e-12)
    assembly_ok = abs(float(rate) - math.exp(-2) / 2) < 1e-12
    detail = " ".join(f"{k}={r.get('relative_error', r['statistic']):.4g}" for k, r in results.items())
    report(9, "asymptotic suite", all(r["pass"] for r in results.values()) and assembly_ok,
           f"{detail} assembly={float(rate):.13f}")


def test_criterion_10_asymptotic_ratio(report):
    ok = True
    parts = []
    for x in [(1,), (1, 2)]:
        ratios = [float(asymptotic_ratio(0, x, N).ratio) for N in (5, 10, 15, 20)]
        ok &= all(a < b for a, b in zip(ratios, ratios[1:])) and abs(ratios[-1] - 1) < 0.25
        parts.append(f"x={x}: " + ", ".join(f"{r:.4f}" for r in ratios))
    report(10, "Hurwitz asymptotic ratio trends to 1", ok, "; ".join(parts))
