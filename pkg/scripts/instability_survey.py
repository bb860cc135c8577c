#!/usr/bin/env python3
"""Random tensor points: how often unstable, and the spread of m0^2."""
import argparse
import collections
import itertools
import random

from decostab.kempf import instability_ops, torus_semistable
from decostab.ratcore import fmt_rat
from decostab.rep import TensorPoint


def random_point(rng, r, a, c, density):
    while True:
        coeffs = {(idx, 1): rng.choice((-1, 1)) for idx in itertools.product(range(1, r + 1), repeat=a)
                  if rng.random() < density}
        if coeffs:
            return TensorPoint(r, a, 1, c, coeffs)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("-n", type=int, default=200)
    ap.add_argument("--r", type=int, default=3)
    ap.add_argument("--a", type=int, default=2)
    ap.add_argument("--c", type=int, default=0)
    ap.add_argument("--density", type=float, default=0.3)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    m0 = collections.Counter()
    unstable = 0
    for _ in range(args.n):
        w = random_point(rng, args.r, args.a, args.c, args.density)
        if torus_semistable(w):
            continue
        unstable += 1
        m0[instability_ops(w).m0_sq] += 1
    print(f"{unstable}/{args.n} unstable")
    for v, k in sorted(m0.items()):
        print(f"  m0^2 = {fmt_rat(v):>6}  x{k}")


if __name__ == "__main__":
    main()
