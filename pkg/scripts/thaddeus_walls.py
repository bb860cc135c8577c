#!/usr/bin/env python3
"""Wall table and verdict grid for rank-2 pairs on a curve (a=b=1, c=0).

Writes CSV to stdout:  d, kind, delta, detail
"""
import argparse
import csv
import math
import sys
from fractions import Fraction

from decostab.decor import ConfigClass, DecoratedConfig, SheafNumerics, candidate_walls, default_family, delta_semistable
from decostab.ratcore import fmt_rat
from decostab.rep import TensorPoint


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--degrees", type=int, nargs="+", default=[3, 4, 5])
    ap.add_argument("--step", default="1/4", help="grid step for the verdict table")
    args = ap.parse_args()
    step = Fraction(args.step)
    out = csv.writer(sys.stdout)
    out.writerow(["d", "kind", "delta", "detail"])
    for d in args.degrees:
        bounds = {1: (0, math.ceil(d / 2))}
        rep = candidate_walls(ConfigClass(2, d, 1, 1, 0), bounds)
        for w, prov in zip(rep.walls, rep.provenance):
            src = ";".join(f"e1={fmt_rat(f.sub_degrees[0])},mu={fmt_rat(mu)}" for f, _, mu in prov)
            out.writerow([d, "wall", fmt_rat(w.coeff(0)), src])
        # phi nonzero on both coordinates
        point = TensorPoint.from_entries(2, 1, 1, 0, [((1,), 1, 1), ((2,), 1, 1)])
        cfg = DecoratedConfig(SheafNumerics.curve(2, d), 1, 1, 0, 0, point, bounds=bounds)
        fam = default_family(cfg)
        delta = step
        while delta <= d + 2:
            out.writerow([d, "verdict", fmt_rat(delta), delta_semistable(cfg, delta, fam).verdict])
            delta += step


if __name__ == "__main__":
    main()
