"""Exact Cheeger constants of the discrete torus, certified by matching bounds."""
import argparse

from expanders.cli import experiment_torus_cheeger


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--m-values", default="4,6,8,10,12")
    ms = [int(x) for x in ap.parse_args().m_values.split(",")]
    print(f"{'m':>4} {'n':>5} {'lower':>8} {'upper':>8}  m*h")
    for m, n, lower, upper, exact in experiment_torus_cheeger(ms):
        tag = "" if exact else "  (not tight)"
        print(f"{m:>4} {n:>5} {str(lower):>8} {str(upper):>8}  {float(m * upper):.3f}{tag}")


if __name__ == "__main__":
    main()
