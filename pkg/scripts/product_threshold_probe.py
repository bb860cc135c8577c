#!/usr/bin/env python3
"""Double eta from the product threshold and watch the probe's mu_2.

For a random pair (w1, w2) with w2 torus-semistable, prints one line per eta.
"""
import argparse
import itertools
import random

from decostab.fans import product_instability_probe, product_threshold
from decostab.kempf import torus_semistable
from decostab.ratcore import fmt_rat
from decostab.rep import TensorPoint, enumerate_weights


def pick(rng, r, a, c, density):
    while True:
        coeffs = {(idx, 1): 1 for idx in itertools.product(range(1, r + 1), repeat=a) if rng.random() < density}
        if coeffs:
            return TensorPoint(r, a, 1, c, coeffs)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--r", type=int, default=3)
    ap.add_argument("--pairs", type=int, default=5)
    ap.add_argument("--doublings", type=int, default=6)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    r = args.r
    eta0 = product_threshold(enumerate_weights(1, 1, 0, r), enumerate_weights(r, 1, 1, r), r) + 1
    done = 0
    while done < args.pairs:
        w1, w2 = pick(rng, r, 1, 0, 0.5), pick(rng, r, r, 1, 0.25)
        if not torus_semistable(w2):
            continue
        done += 1
        print(f"pair {done}: w1={sorted(i for (i, _) in w1.coeffs)} w2={sorted(i for (i, _) in w2.coeffs)}")
        eta = eta0
        for _ in range(args.doublings):
            rep = product_instability_probe(w1, w2, eta)
            if not rep.unstable:
                print(f"  eta={fmt_rat(eta)}: semistable")
                break
            print(f"  eta={fmt_rat(eta)}: lambda*={rep.lambda_star.weights} mu1={fmt_rat(rep.mu_1)} mu2={fmt_rat(rep.mu_2)}")
            eta *= 2


if __name__ == "__main__":
    main()
