"""Exact small-n planar Turán numbers next to the known formulas."""

import argparse
import time

from planar_turan.oracle import SearchConfig, compare_known


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--patterns", default="2C3,C3+C4,C3+C5,2C,3C,C5")
    ap.add_argument("--n-min", type=int, default=5)
    ap.add_argument("--n-max", type=int, default=9)
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()
    cfg = SearchConfig(jobs=args.jobs)
    print(f"{'pattern':8} {'n':>3} {'oracle':>6} {'formula':>7} {'constr':>6}  note")
    for text in args.patterns.split(","):
        t0 = time.perf_counter()
        for r in compare_known(range(args.n_min, args.n_max + 1), text, cfg):
            note = {True: "match", False: "MISMATCH", None: ""}[r["match"]]
            fmt = lambda x: "-" if x is None else str(x)  # noqa: E731
            print(f"{text:8} {r['n']:>3} {r['oracle']:>6} {fmt(r['formula']):>7} {fmt(r['construction']):>6}  {note}")
        print(f"# {text}: {time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
