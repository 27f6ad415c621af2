"""How close concrete boundary data get to the sharp bound.

For each (alpha, p) the near-extremal data are fed through the numeric
gradient, and the truncation radius is varied to show the p = inf ratios
approaching 1 as the tail shrinks.
"""

import argparse

from sharpgrad.harness import EvaluationPoint, near_extremal_boundary, verify_bound
from sharpgrad.model import KernelParams


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=3)
    ap.add_argument("--beta", type=float, default=3.0)
    ap.add_argument("--alphas", type=float, nargs="+", default=[0.0, 1 / 3, 0.8, 1.0, 2.0])
    ap.add_argument("--radii", type=float, nargs="+", default=[20.0, 200.0, 2000.0])
    args = ap.parse_args()

    x = EvaluationPoint((0.0,) * (args.n - 1), 1.0)
    print(f"{'alpha':>6} {'p':>4} {'R':>7} {'ratio':>9} {'tail':>9} {'family':>13}")
    for alpha in args.alphas:
        params = KernelParams(args.n, alpha, args.beta)
        for p in ("inf", "2", "1.5", "1"):
            f = near_extremal_boundary(params, p, x)
            for R in args.radii if p == "inf" else args.radii[1:2]:
                rep = verify_bound(params, p, f, x, truncation_radius=R)
                print(f"{alpha:>6.3f} {p:>4} {R:>7g} {rep.ratio:>9.6f} {rep.tail_estimate:>9.2e} {f.family:>13}")


if __name__ == "__main__":
    main()
