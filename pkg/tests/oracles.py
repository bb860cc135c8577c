"""Brute-force reference computations used by the tests.

Nothing here calls into the library's algorithms; everything is spelled
out from the definitions so the two can be compared.
"""

import itertools
import random
from fractions import Fraction

from decostab.rep import TensorPoint


def char(idx, r, c):
    return tuple(sum(1 for i in idx if i == p + 1) - c for p in range(r))


def states(w):
    return {char(idx, w.r, w.c) for idx, _ in w.coeffs}


def hm_weight(lam, w):
    return max(sum(x * y for x, y in zip(lam, chi)) for chi in states(w))


def trace_zero_box(r, bound):
    for lam in itertools.product(range(-bound, bound + 1), repeat=r):
        if sum(lam) == 0 and any(lam):
            yield lam


def best_nu_sq(w, bound=6):
    """Largest mu^2/|lam|^2 over integer trace-zero lam in the box with mu < 0, plus the argmax."""
    best, arg = Fraction(0), None
    for lam in trace_zero_box(w.r, bound):
        mu = hm_weight(lam, w)
        if mu < 0:
            v = Fraction(mu * mu, sum(x * x for x in lam))
            if v > best:
                best, arg = v, lam
    return best, arg


def gamma_entries(ranks, alphas, r):
    out = []
    for p in range(1, r + 1):
        total = Fraction(0)
        for k, al in zip(ranks, alphas):
            total += al * ((k - r) if p <= k else k)
        out.append(total)
    return out


def mu_direct(ranks, alphas, r, w, frame=None):
    """-min over admissible block tuples, straight from the definition."""
    levels = list(ranks) + [r]
    blocks = []
    for j in range(len(levels)):
        g = Fraction(0)
        for i, (k, al) in enumerate(zip(ranks, alphas)):
            g += al * ((k - r) if i >= j else k)
        blocks.append(g)
    # position of each old basis vector in the frame
    where = {old + 1: new + 1 for new, old in enumerate(frame)} if frame else {p: p for p in range(1, r + 1)}
    best = None
    for js in itertools.product(range(len(levels)), repeat=w.a):
        ok = any(all(where[i] <= levels[j] for i, j in zip(idx, js)) for idx, _ in w.coeffs)
        if ok:
            val = sum((blocks[j] for j in js), Fraction(0))
            best = val if best is None else min(best, val)
    return -best


def random_point(rng, r, a, b=1, c=0, density=0.5, values=(-1, 1)):
    while True:
        coeffs = {}
        for idx in itertools.product(range(1, r + 1), repeat=a):
            for k in range(1, b + 1):
                if rng.random() < density:
                    coeffs[(idx, k)] = rng.choice(values)
        if coeffs:
            return TensorPoint(r, a, b, c, coeffs)


def rng(seed):
    return random.Random(seed)
