"""Print counted reduction operations next to the published reference formulas."""
import argparse

from bandsym.bench import generate_dense_band
from bandsym.reduce import reduce_band, reduce_chain


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--sizes", type=int, nargs="+", default=[10, 50, 100, 1000])
    p.add_argument("--seed", type=int, default=0)
    a = p.parse_args()

    print(f"{'n':>6}{'HD->PD':>9}{'35n-122':>9}{'PD->TD':>9}{'23n-52':>9}{'HD->TD':>9}")
    for n in a.sizes:
        hd, _ = generate_dense_band(n, 3, seed=a.seed)
        first = reduce_band(hd)
        second = reduce_band(first.reduced)
        chain = reduce_chain(hd, 1)
        print(f"{n:>6}{first.ops_counted:>9}{first.reference_ops:>9}"
              f"{second.ops_counted:>9}{second.reference_ops:>9}{chain.ops_counted:>9}")


if __name__ == "__main__":
    main()
