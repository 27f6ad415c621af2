"""Threshold roots alpha_n(beta) for n = 3..6, next to the published four-digit values."""

import argparse
import time

from sharpgrad.roots import root_table

PUBLISHED = {
    3: [1.2865, 1.4101, 1.4788, 1.521, 1.5482, 1.5664],
    4: [1.207, 1.3079, 1.3698, 1.4115, 1.4413, 1.4631],
    5: [1.1623, 1.2469, 1.3016, 1.3403, 1.3693, 1.3917],
    6: [1.1316, 1.2063, 1.2548, 1.2903, 1.3176, 1.3393],
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--tol", type=float, default=1e-3)
    args = ap.parse_args()

    t0 = time.perf_counter()
    rows = root_table()
    elapsed = time.perf_counter() - t0
    print(f"{'n':>2} {'beta':>5} {'computed':>12} {'published':>10} {'diff':>9}")
    misses = 0
    for n, beta, r in rows:
        pub = PUBLISHED[n][int(round(2 * (beta - n + 0.5)))]
        diff = r.value - pub
        flag = "" if abs(diff) <= args.tol else "  <-"
        misses += bool(flag)
        print(f"{n:>2} {beta:>5.1f} {r.value:>12.8f} {pub:>10.4f} {diff:>+9.1e}{flag}")
    print(f"{len(rows) - misses}/{len(rows)} within {args.tol:g}; solved in {elapsed * 1e3:.1f} ms")


if __name__ == "__main__":
    main()
