"""Command-line interface.

Exit codes: 0 success, 1 a verification or cache check failed, 2 usage or
domain error.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from collections import Counter
from fractions import Fraction

from . import random_trees as rt
from .cache import CacheMismatchError, ResultCache, format_rational, hodge_key, hurwitz_key, tau_key
from .config import Config, load_config
from .elsv import elsv_fit, hodge_from_elsv, tau_from_elsv
from .hurwitz import (
    HurwitzQuery,
    InfeasibleQueryError,
    ResourceBudgetError,
    hurwitz,
    hurwitz_brute,
    iter_factorizations,
)
from .kontsevich import format_tau, kontsevich_sum, tau_table
from .ribbon import (
    Degenerate,
    UnstableError,
    branching_graph_from_factorization,
    enumerate_trivalent_maps,
    face_perimeters,
    homotopy_type,
)
from .symmetric import Partition, cycle_type
from .verify import run_suite


class VerificationFailure(Exception):
    pass


def _emit(args, payload, lines):
    if args.json:
        print(json.dumps(payload, sort_keys=True, ensure_ascii=False))
    else:
        for line in lines:
            print(line)


def _store(cache, key, value, method):
    if cache is not None:
        cache.put(key, value, method)


def cmd_tau(args, cfg, cache):
    table = tau_table(args.g, args.n)
    rows = []
    for (g, k), v in table.items():
        _store(cache, tau_key(g, k), v, "kontsevich")
        rows.append((format_tau(g, k), v, k))
    rows.sort(key=lambda r: tuple(-x for x in r[2]))
    lines = [f"{name} = {v}" for name, v, _ in rows]
    payload = {"g": args.g, "n": args.n, "values": {name: format_rational(v) for name, v, _ in rows}}
    if args.show_K:
        K = kontsevich_sum(args.g, args.n)
        lines.append(f"K_{{{args.g},{args.n}}}: {len(K.terms)} distinct edge-denominator terms")
        payload["K_terms"] = len(K.terms)
    _emit(args, payload, lines)


def cmd_hurwitz(args, cfg, cache):
    mu = Partition.parse(args.mu)
    method = args.method
    if method == "auto":
        method = "brute" if mu.size <= cfg.hurwitz.brute_max_degree else "characters"
    if method == "brute":
        value = hurwitz_brute(HurwitzQuery(args.g, mu), budget=cfg.hurwitz.brute_budget, jobs=args.jobs)
    else:
        value = hurwitz(args.g, mu, method)
    _store(cache, hurwitz_key(args.g, mu.parts), value, method)
    _emit(args, {"g": args.g, "mu": list(mu.parts), "value": format_rational(value)}, [format_rational(value)])


def cmd_maps(args, cfg, cache):
    maps = enumerate_trivalent_maps(args.g, args.n)
    weight = sum((Fraction(1, a) for _, a in maps), Fraction(0))
    payload = {"g": args.g, "n": args.n, "classes": len(maps), "weighted_count": format_rational(weight)}
    lines = [f"G3_{{{args.g},{args.n}}}: {len(maps)} classes, sum 1/|Aut| = {weight}"]
    if args.list:
        payload["maps"] = [dict(graph.to_dict(), aut=a) for graph, a in maps]
        lines += [f"  aut={a} {json.dumps(graph.to_dict(), sort_keys=True)}" for graph, a in maps]
    _emit(args, payload, lines)


def cmd_branching(args, cfg, cache):
    mu = Partition.parse(args.mu)
    count = 0
    bad = 0
    tally: Counter = Counter()
    for f in iter_factorizations(args.g, mu):
        b = branching_graph_from_factorization(f)
        count += 1
        if face_perimeters(b) != cycle_type(f.target) or b.genus != args.g:
            bad += 1
        if args.histogram:
            h = homotopy_type(b)
            key = h.kind if isinstance(h, Degenerate) else json.dumps(h.graph.to_dict(), sort_keys=True)
            tally[key] += 1
    payload = {"g": args.g, "mu": list(mu.parts), "factorizations": count, "perimeter_failures": bad}
    lines = [f"{count} transitive factorizations, {bad} perimeter/genus failures"]
    if args.histogram:
        payload["histogram"] = dict(sorted(tally.items()))
        lines += [f"  {n:6d}  {k}" for k, n in sorted(tally.items())]
    _emit(args, payload, lines)
    if bad:
        raise VerificationFailure(f"{bad} branching graphs disagree with the target cycle type")


def cmd_elsv_fit(args, cfg, cache):
    poly = elsv_fit(args.g, args.n, lambda g, mu: hurwitz(g, mu, "auto",
                                                           brute_max_degree=cfg.hurwitz.brute_max_degree))
    tau = tau_from_elsv(poly)
    for (g, k), v in tau.items():
        _store(cache, tau_key(g, k), v, "elsv")
    payload = {"g": args.g, "n": args.n, "polynomial": poly.format(),
               "samples": [list(p) for p in poly.sample_points]}
    lines = [f"P_{{{args.g},{args.n}}}(mu) = {poly.format()}"]
    if args.hodge:
        hodge = hodge_from_elsv(poly)
        payload["hodge"] = {}
        for (g, j, k), v in hodge.items():
            _store(cache, hodge_key(g, j, k), v, "elsv")
            name = f"⟨λ_{j}" + "".join(f"τ_{x}" for x in k) + f"⟩_{g}"
            payload["hodge"][name] = format_rational(v)
            lines.append(f"{name} = {v}")
    _emit(args, payload, lines)


def cmd_trees(args, cfg, cache):
    tc = cfg.trees
    m = args.m or tc.m
    seed = tc.seed if args.seed is None else args.seed
    op = args.op
    if op == "valence":
        rep = rt.valence_histogram(m, args.samples or tc.valence_samples, seed, tc.tv_threshold)
    elif op == "borel":
        rep = rt.root_component_law(m, args.samples or tc.borel_trees, seed, tc.tv_threshold, args.jobs)
    elif op == "rayleigh":
        rep = rt.trunk_length_law(m, args.samples or tc.edge_tree_samples, seed, tc.ks_threshold, args.jobs)
    elif op == "split":
        rep = rt.trunk_split_law(m, args.samples or tc.edge_tree_samples, seed, tc.ks_threshold, args.jobs)
    elif op == "edge-factor":
        rep = rt.edge_factor_mc(args.s1, args.s2, args.samples or tc.edge_factor_samples, seed)
    else:
        val = rt.assembly_success_rate(tc.assembly_tolerance)
        exact = math.exp(-2) / 2
        rep = {"statistic": float(val), "expected": exact, "tolerance": tc.assembly_tolerance,
               "pass": abs(float(val) - exact) < tc.assembly_tolerance}
    print(json.dumps(rep, sort_keys=True, default=str))
    if not rep["pass"]:
        raise VerificationFailure(f"{op} check failed")


def cmd_verify(args, cfg, cache):
    def progress(c):
        if not args.json:
            print(c.line(), flush=True)

    checks = run_suite(args.suite, cfg, cache, progress)
    failed = [c for c in checks if not c.passed]
    if args.json:
        print(json.dumps([c.__dict__ for c in checks], sort_keys=True, ensure_ascii=False))
    else:
        print(f"{len(checks) - len(failed)}/{len(checks)} checks passed")
    if failed:
        raise VerificationFailure(f"{len(failed)} checks failed")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--jobs", type=int, default=None, help="worker processes")
    common.add_argument("--cache", default=None, help="result cache path (default: $PSICLASS_CACHE)")
    common.add_argument("--config", default=None, help="JSON config file (default: $PSICLASS_CONFIG)")

    p = argparse.ArgumentParser(prog="psiclass", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("tau", parents=[common], help="intersection numbers from the trivalent map sum")
    s.add_argument("--g", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--show-K", action="store_true")
    s.set_defaults(func=cmd_tau)

    s = sub.add_parser("hurwitz", parents=[common], help="a single Hurwitz number")
    s.add_argument("--g", type=int, required=True)
    s.add_argument("--mu", required=True, help="comma-separated parts, e.g. 4,2,1")
    s.add_argument("--method", choices=("auto", "brute", "characters"), default="auto")
    s.set_defaults(func=cmd_hurwitz)

    s = sub.add_parser("maps", parents=[common], help="trivalent maps with labelled faces")
    s.add_argument("--g", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--list", action="store_true")
    s.set_defaults(func=cmd_maps)

    s = sub.add_parser("branching", parents=[common], help="branching graphs of all factorizations")
    s.add_argument("--g", type=int, required=True)
    s.add_argument("--mu", required=True)
    s.add_argument("--histogram", action="store_true", help="tally homotopy types")
    s.set_defaults(func=cmd_branching)

    s = sub.add_parser("elsv-fit", parents=[common], help="fit the ELSV polynomial from Hurwitz numbers")
    s.add_argument("--g", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--hodge", action="store_true")
    s.set_defaults(func=cmd_elsv_fit)

    s = sub.add_parser("trees", parents=[common], help="random tree statistics")
    s.add_argument("--op", required=True, choices=("valence", "borel", "rayleigh", "split", "edge-factor", "assembly"))
    s.add_argument("--m", type=int, default=None)
    s.add_argument("--samples", type=int, default=None)
    s.add_argument("--seed", type=int, default=None)
    s.add_argument("--s1", type=float, default=1.0)
    s.add_argument("--s2", type=float, default=1.0)
    s.set_defaults(func=cmd_trees)

    s = sub.add_parser("verify", parents=[common], help="cross-pipeline checks")
    s.add_argument("--suite", choices=("core", "asymptotic", "all"), default="core")
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg: Config = load_config(args.config)
    except (OSError, ValueError) as exc:
        print(f"error: bad config: {exc}", file=sys.stderr)
        return 2
    if args.jobs is None:
        args.jobs = cfg.jobs
    cache_path = args.cache or cfg.cache_path
    cache = ResultCache(cache_path) if cache_path else None
    try:
        args.func(args, cfg, cache)
    except (VerificationFailure, CacheMismatchError) as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 1
    except (InfeasibleQueryError, UnstableError, ResourceBudgetError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
