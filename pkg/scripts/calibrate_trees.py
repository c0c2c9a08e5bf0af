"""Run the random-tree statistics over several seeds to see how close they sit to thresholds.

    python scripts/calibrate_trees.py --seeds 1 2 3
"""
import argparse
import time

from psiclass import random_trees as rt
from psiclass.config import TreeConfig


def main():
    tc = TreeConfig()
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seeds", type=int, nargs="+", default=[1, 2, 3])
    ap.add_argument("--m", type=int, default=tc.m)
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()
    print("seed  valenceTV  borelTV  rayleighKS  splitKS  seconds")
    for seed in args.seeds:
        t = time.perf_counter()
        v = rt.valence_histogram(args.m, tc.valence_samples, seed, tc.tv_threshold)
        b = rt.root_component_law(args.m, tc.borel_trees, seed, tc.tv_threshold, args.jobs)
        r = rt.trunk_length_law(args.m, tc.edge_tree_samples, seed, tc.ks_threshold, args.jobs)
        s = rt.trunk_split_law(args.m, tc.edge_tree_samples, seed, tc.ks_threshold, args.jobs)
        dt = time.perf_counter() - t
        print(f"{seed:4d}  {v['statistic']:.5f}  {b['statistic']:.5f}  "
              f"{r['statistic']:.5f}  {s['statistic']:.5f}  {dt:7.1f}")


if __name__ == "__main__":
    main()
