"""Run a verification suite and write the PASS/FAIL lines to a file as well as stdout."""
import argparse
import sys

from psiclass.config import load_config
from psiclass.verify import run_suite


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--suite", choices=["core", "asymptotic", "all"], default="all")
    ap.add_argument("--config")
    ap.add_argument("--out", default="verify_report.txt")
    args = ap.parse_args()
    with open(args.out, "w") as fh:
        def progress(c):
            print(c.line(), flush=True)
            fh.write(c.line() + "\n")

        checks = run_suite(args.suite, load_config(args.config), progress=progress)
    failed = sum(not c.passed for c in checks)
    print(f"{len(checks) - failed}/{len(checks)} passed")
    sys.exit(1 if failed else 0)


if __name__ == "__main__":
    main()
