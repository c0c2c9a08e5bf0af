"""Print intersection-number tables from both pipelines side by side.

    python scripts/tau_tables.py --cases 0,3 1,1 0,4 1,2 0,5
"""
import argparse

from psiclass.elsv import elsv_fit, tau_from_elsv
from psiclass.hurwitz import hurwitz_characters
from psiclass.kontsevich import format_tau, tau_table


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--cases", nargs="+", default=["0,3", "1,1", "0,4", "1,2", "0,5"])
    args = ap.parse_args()
    for case in args.cases:
        g, n = map(int, case.split(","))
        kt = tau_table(g, n)
        et = tau_from_elsv(elsv_fit(g, n, hurwitz_characters))
        print(f"(g,n)=({g},{n})  {'agree' if kt == et else 'DISAGREE'}")
        for (gg, k), v in kt.items():
            print(f"  {format_tau(gg, k):<24} {v!s:>10}   elsv {et.get(gg, k)}")


if __name__ == "__main__":
    main()
