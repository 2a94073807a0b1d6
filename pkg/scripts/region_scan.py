#!/usr/bin/env python3
"""Scan the recurrence-consistency deviation over the working region.

Evaluates the rearranged-recurrence ratio on a dense (eta, mu, x, y) grid
and prints the worst deviations, a histogram by decade, and the runtime.
A denser, slower companion to `nuttallq selftest`.

Usage: python scripts/region_scan.py [steps_per_axis]
"""

import sys
import time
from collections import Counter

from nuttallq import MomentQuery, consistency_deviation


def main() -> None:
    steps = int(sys.argv[1]) if len(sys.argv) > 1 else 7
    etas = sorted({max(1, round(1 + 48 * i / (steps - 1))) for i in range(steps)})
    mus = [1.0 + 49.0 * i / (steps - 1) for i in range(steps)]
    xs = [0.1 + 19.9 * i / (steps - 1) for i in range(steps)]
    ys = [0.1 + 19.9 * i / (steps - 1) for i in range(steps)]

    t0 = time.perf_counter()
    worst = []
    histogram = Counter()
    n = 0
    for eta in etas:
        for mu in mus:
            for x in xs:
                for y in ys:
                    dev = consistency_deviation(MomentQuery(float(eta), mu, x, y))
                    n += 1
                    histogram[min(-1, max(-17, int(f"{dev:e}".split('e')[1])))
                              if dev > 0 else -17] += 1
                    worst.append((dev, eta, mu, x, y))
                    worst.sort(reverse=True)
                    del worst[10:]
    elapsed = time.perf_counter() - t0

    print(f"points evaluated: {n} in {elapsed:.2f}s")
    print("deviation histogram (decade -> count):")
    for decade in sorted(histogram):
        print(f"  1e{decade:+03d}: {histogram[decade]}")
    print("worst points:")
    for dev, eta, mu, x, y in worst:
        print(f"  {dev:.3e} at eta={eta} mu={mu:.3f} x={x:.3f} y={y:.3f}")


if __name__ == "__main__":
    main()
