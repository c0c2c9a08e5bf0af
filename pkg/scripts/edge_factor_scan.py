"""Monte-Carlo edge factor against the closed form on a grid of (s1, s2)."""
import argparse

from psiclass import random_trees as rt


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=1_000_000)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--values", type=float, nargs="+", default=[0.25, 0.5, 1.0, 2.0, 4.0])
    args = ap.parse_args()
    print("   s1     s2   closed-form      estimate   rel.err")
    for s1 in args.values:
        for s2 in args.values:
            if s2 < s1:
                continue
            rep = rt.edge_factor_mc(s1, s2, samples=args.samples, seed=args.seed)
            print(f"{s1:5.2f}  {s2:5.2f}  {rep['expected']:.8f}  {rep['statistic']:.8f}  {rep['relative_error']:.2e}")


if __name__ == "__main__":
    main()
