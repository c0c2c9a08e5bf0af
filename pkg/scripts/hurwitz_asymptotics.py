"""Ratio of scaled Hurwitz numbers to their limit along mu = N * x."""
import argparse

from psiclass.hurwitz import asymptotic_ratio


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--g", type=int, default=0)
    ap.add_argument("--x", type=int, nargs="+", default=[1, 2])
    ap.add_argument("--N", type=int, nargs="+", default=[5, 10, 15, 20])
    args = ap.parse_args()
    for N in args.N:
        c = asymptotic_ratio(args.g, tuple(args.x), N)
        print(f"N={N:3d}  ratio={float(c.ratio):.6f}")


if __name__ == "__main__":
    main()
