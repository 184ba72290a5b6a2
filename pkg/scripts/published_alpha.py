"""Recompute the published order-of-growth exponents from the published timings.

Reads tests/data/reference_timings.csv and reference_alpha.csv and prints
each recomputed alpha beside the published one.
"""
import csv
from pathlib import Path

from bandsym.bench import estimate_alpha

DATA = Path(__file__).resolve().parent.parent / "tests" / "data"


def main():
    with open(DATA / "reference_timings.csv") as fh:
        t = {(int(r["impl"]), r["machine"], r["algorithm"], int(r["n"])): float(r["seconds"])
             for r in csv.DictReader(fh)}
    with open(DATA / "reference_alpha.csv") as fh:
        rows = list(csv.DictReader(fh))

    print(f"{'machine':<10}{'alg':<6}{'impl':>5}{'n1':>8}{'n2':>8}{'published':>11}{'ours':>8}")
    worst = 0.0
    for r in rows:
        impl, n1, n2 = int(r["impl"]), int(r["n1"]), int(r["n2"])
        key = (impl, r["machine"], r["algorithm"])
        a = estimate_alpha(t[key + (n1,)], t[key + (n2,)], n1, n2).alpha
        worst = max(worst, abs(a - float(r["alpha"])))
        print(f"{r['machine']:<10}{r['algorithm']:<6}{impl:>5}{n1:>8}{n2:>8}{r['alpha']:>11}{a:>8.3f}")
    print(f"\nlargest difference: {worst:.4f}")


if __name__ == "__main__":
    main()
