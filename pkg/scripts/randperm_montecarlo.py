"""Monte Carlo over random permutation bigraphs: Latin rate and collapsed fixed constant."""
import argparse
from collections import Counter
from statistics import mean

from expanders.cli import experiment_randperm


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=12)
    ap.add_argument("--k", type=int, default=3)
    ap.add_argument("--trials", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rows = experiment_randperm(args.n, args.k, args.trials, args.seed)
    constants = [r[4] for r in rows]
    print(f"n={args.n} k={args.k} trials={args.trials} seed={args.seed}")
    print(f"latin fraction  {sum(r[3] for r in rows) / len(rows):.3f}")
    print(f"mean constant   {float(mean(constants)):.4f}  min {min(constants)}")
    for value, count in sorted(Counter(constants).items()):
        print(f"  c = {str(value):>6}  x{count}")


if __name__ == "__main__":
    main()
