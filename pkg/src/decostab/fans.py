"""Fan refinements of the dominant chamber ``{lam_1 <= ... <= lam_r, sum(lam) = 0}``.

Cones are handled through their sections by the affine slice
``<lam, rho> = 1`` with ``rho = (-(r-1), -(r-3), ..., r-1)``, which meets every
nonzero dominant ray exactly once.  The section is refined hyperplane by
hyperplane; a cell is split only when the hyperplane separates two of its
vertices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from . import exact
from .kempf import min_norm_point, project_trace_zero, torus_semistable, wolfe_min_norm_point
from .ratcore import DimensionError, dot, fmt_rat
from .rep import (
    OneParamSubgroup,
    TensorPoint,
    WeightedFlag,
    enumerate_weights,
    mu_kappa,
    pairing,
    state_weights,
    weighted_flag_of_ops,
)


class PreconditionError(ValueError):
    pass


def slice_vector(r: int) -> tuple[int, ...]:
    return tuple(2 * i - (r - 1) for i in range(r))


def chamber_walls(r: int) -> list[tuple[int, ...]]:
    """Normals ``e_{i+1} - e_i``; the chamber is where all pair nonnegatively."""
    out = []
    for i in range(r - 1):
        n = [0] * r
        n[i], n[i + 1] = -1, 1
        out.append(tuple(n))
    return out


def _canonical_normal(v: Sequence) -> Optional[tuple[int, ...]]:
    p = project_trace_zero(v)
    if not any(p):
        return None
    n = exact.primitive(p)
    lead = next(x for x in n if x != 0)
    return n if lead > 0 else tuple(-x for x in n)


def difference_hyperplanes(weight_sets: Iterable[Iterable[Sequence]]) -> list[tuple[int, ...]]:
    seen = set()
    for A in weight_sets:
        A = sorted(set(tuple(chi) for chi in A))
        for chi, chi2 in itertools.combinations(A, 2):
            n = _canonical_normal([x - y for x, y in zip(chi, chi2)])
            if n is not None:
                seen.add(n)
    return sorted(seen)


@dataclass(frozen=True)
class Cone:
    generators: tuple          # primitive integer trace-zero vectors
    facet_normals: tuple       # n with <n, lam> >= 0 on the cone
    sign_vector: tuple         # sign of each refining hyperplane on the interior

    def contains(self, lam: Sequence) -> bool:
        if sum(lam) != 0:
            return False
        return all(pairing(n, lam) >= 0 for n in self.facet_normals)

    def interior_point(self) -> tuple:
        r = len(self.generators[0])
        return tuple(sum((Fraction(g[i]) for g in self.generators), Fraction(0)) for i in range(r))

    def to_json(self) -> dict:
        return {
            "generators": [list(g) for g in self.generators],
            "facet_normals": [list(n) for n in self.facet_normals],
            "sign_vector": list(self.sign_vector),
        }


@dataclass(frozen=True)
class Fan:
    r: int
    cones: tuple
    edge_generators: tuple
    hyperplanes: tuple

    def cones_containing(self, lam: Sequence) -> list[Cone]:
        return [c for c in self.cones if c.contains(lam)]

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "hyperplanes": [list(h) for h in self.hyperplanes],
            "edge_generators": [list(e) for e in self.edge_generators],
            "cones": [c.to_json() for c in self.cones],
        }


class _Cell:
    """Section of a cone by the slice, as inequalities plus vertices."""

    def __init__(self, r: int, ineqs: list):
        self.r = r
        self.ineqs = ineqs
        self.vertices = _vertices(r, ineqs)
        self._prune()

    def _prune(self):
        dim = self.r - 2
        kept, seen = [], set()
        for n in self.ineqs:
            tight = frozenset(i for i, v in enumerate(self.vertices) if pairing(n, v) == 0)
            if tight in seen:
                continue
            pts = [self.vertices[i] for i in tight]
            if _affine_rank(pts) == dim - 1:
                kept.append(n)
                seen.add(tight)
        self.ineqs = kept


def _affine_rank(pts) -> int:
    if not pts:
        return -1
    base = pts[0]
    diffs = [[x - y for x, y in zip(p, base)] for p in pts[1:]]
    return exact.rank(diffs) if diffs else 0


def _vertices(r: int, ineqs: list) -> list[tuple]:
    rho = slice_vector(r)
    eqs = [[1] * r, list(rho)]
    out = set()
    for tight in itertools.combinations(ineqs, r - 2):
        A = eqs + [list(n) for n in tight]
        v = exact.solve(A, [0, 1] + [0] * (r - 2))
        if v is None:
            continue
        if all(pairing(n, v) >= 0 for n in ineqs):
            out.add(v)
    return sorted(out)


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def chamber_fan(weight_sets: Sequence[Iterable[Sequence]], r: int) -> Fan:
    """Common refinement of the dominant chamber by all difference hyperplanes.

    On every cone of the result, ``lam -> max_{chi in A} <lam, chi>`` is linear
    for each input set ``A``.
    """
    if r < 2:
        raise DimensionError("fans need r >= 2")
    for A in weight_sets:
        for chi in A:
            if len(chi) != r:
                raise DimensionError(f"character {chi} does not have length {r}")
    hyperplanes = difference_hyperplanes(weight_sets)
    cells = [_Cell(r, chamber_walls(r))]
    for h in hyperplanes:
        neg_h = tuple(-x for x in h)
        nxt = []
        for cell in cells:
            signs = {_sign(pairing(h, v)) for v in cell.vertices}
            if 1 in signs and -1 in signs:
                nxt.append(_Cell(r, cell.ineqs + [h]))
                nxt.append(_Cell(r, cell.ineqs + [neg_h]))
            else:
                nxt.append(cell)
        cells = nxt

    cones, edges = [], set()
    for cell in cells:
        gens = tuple(sorted(exact.primitive(v) for v in cell.vertices))
        edges.update(gens)
        centre = tuple(sum((v[i] for v in cell.vertices), Fraction(0)) for i in range(r))
        signs = tuple(_sign(pairing(h, centre)) for h in hyperplanes)
        normals = tuple(sorted(exact.primitive(n) for n in cell.ineqs))
        cones.append(Cone(gens, normals, signs))
    cones.sort(key=lambda c: (c.generators, c.facet_normals))
    return Fan(r, tuple(cones), tuple(sorted(edges)), tuple(hyperplanes))


@dataclass(frozen=True)
class TestSet:
    r: int
    entries: tuple  # tuple of (ranks, alphas)

    def flags(self) -> list[WeightedFlag]:
        return [WeightedFlag(ranks, alphas, self.r) for ranks, alphas in self.entries]

    def to_json(self) -> dict:
        return {"entries": [{"ranks": list(rk), "alphas": [fmt_rat(a) for a in al]} for rk, al in self.entries]}


TestSet.__test__ = False  # keep pytest from collecting the class


def test_set(a: int, b: int, c: int, r: int) -> TestSet:
    """Weighted-flag signatures of the edges of the fan for all weights of the representation."""
    if r < 2:
        return TestSet(r, ())
    weights = set(enumerate_weights(a, b, c, r))
    fan = chamber_fan([weights], r)
    entries = set()
    for edge in fan.edge_generators:
        flag, _ = weighted_flag_of_ops(edge)
        entries.add(flag.signature())
    return TestSet(r, tuple(sorted(entries)))


test_set.__test__ = False


def weyl_closure(weights: Iterable[Sequence]) -> set:
    out = set()
    for chi in weights:
        out.update(itertools.permutations(tuple(chi)))
    return out


def weyl_orbit(lam: Sequence) -> list[tuple]:
    return sorted(set(itertools.permutations(tuple(lam))))


def product_fan(weights_1: Iterable[Sequence], weights_2: Iterable[Sequence], r: int) -> Fan:
    return chamber_fan([weyl_closure(weights_1), weyl_closure(weights_2)], r)


def product_threshold(weights_1: Iterable[Sequence], weights_2: Iterable[Sequence], r: int) -> Fraction:
    """``max(K1, -K2)`` with K1, K2 the extreme pairings of edge generators with ``weights_1``.

    Both weight sets are closed under coordinate permutations first, so the
    dominant-chamber edges account for every torus one-parameter subgroup.
    """
    w1, w2 = weyl_closure(weights_1), weyl_closure(weights_2)
    if not w1 or not w2:
        raise ValueError("weight sets must be nonempty")
    fan = chamber_fan([w1, w2], r)
    values = [pairing(lam, chi) for lam in fan.edge_generators for chi in w1]
    return Fraction(max(max(values), -min(values)))


def product_torus_verdict(w1: TensorPoint, w2: TensorPoint, eta, fan: Optional[Fan] = None) -> str:
    """Sign of ``min mu_1 + eta*mu_2`` over all Weyl translates of the fan's edge generators.

    ``fan`` must linearize both weights on its cones; by default it is built
    from the full weight sets of the two representations.
    """
    eta = Fraction(eta)
    r = w1.r
    if fan is None:
        fan = product_fan(enumerate_weights(w1.a, w1.b, w1.c, r), enumerate_weights(w2.a, w2.b, w2.c, r), r)
    s1, s2 = state_weights(w1), state_weights(w2)
    best = None
    for edge in fan.edge_generators:
        for lam in weyl_orbit(edge):
            val = max(pairing(lam, x) for x in s1) + eta * max(pairing(lam, x) for x in s2)
            if best is None or val < best:
                best = val
    return _verdict_from_sign(best)


def _verdict_from_sign(x) -> str:
    if x < 0:
        return "unstable"
    return "stable" if x > 0 else "semistable"


def semstab_conditions(w1: TensorPoint, w2: TensorPoint) -> str:
    """Conditions a) and b) for the product, decided directly by exact LPs.

    a) ``w2`` is torus-semistable; b) every ``lam`` with ``mu_2(lam, w2) = 0``
    has ``mu_1(lam, w1) >= 0`` (``> 0`` for nonzero ``lam`` in the stable case).
    """
    r = w1.r
    if not torus_semistable(w2):
        return "unstable"
    s1, s2 = sorted(state_weights(w1)), sorted(state_weights(w2))
    ones = [[1] * r]
    # b) semistable part: no lam in {mu_2 <= 0} with mu_1 < 0
    res = exact.linprog([0] * r, A_ub=s2 + s1, b_ub=[0] * len(s2) + [-1] * len(s1), A_eq=ones, b_eq=[0])
    if res.status == "optimal":
        return "unstable"
    # b) stable part: the cone {mu_2 <= 0, mu_1 <= 0} must be {0}
    box = []
    for i in range(r):
        e = [0] * r
        e[i] = 1
        box.append(e)
        box.append([-x for x in e])
    A = s2 + s1 + box
    b = [0] * (len(s2) + len(s1)) + [1] * (2 * r)
    for i in range(r):
        for sgn in (1, -1):
            obj = [0] * r
            obj[i] = sgn
            res = exact.linprog(obj, A_ub=A, b_ub=b, A_eq=ones, b_eq=[0])
            if res.status == "optimal" and res.value > 0:
                return "semistable"
    return "stable"


@dataclass(frozen=True)
class ProbeReport:
    eta: Fraction
    unstable: bool
    lambda_star: Optional[OneParamSubgroup] = None
    mu_1: Optional[Fraction] = None
    mu_2: Optional[Fraction] = None
    combined: Optional[Fraction] = None

    def to_json(self) -> dict:
        if not self.unstable:
            return {"eta": fmt_rat(self.eta), "unstable": False, "status": f"semistable at eta={fmt_rat(self.eta)}"}
        return {
            "eta": fmt_rat(self.eta),
            "unstable": True,
            "lambda_star": list(self.lambda_star.weights),
            "mu_1": fmt_rat(self.mu_1),
            "mu_2": fmt_rat(self.mu_2),
            "combined": fmt_rat(self.combined),
        }


def product_instability_probe(w1: TensorPoint, w2: TensorPoint, eta, method: str = "wolfe") -> ProbeReport:
    """Instability direction of the pair at parameter ``eta``.

    The combined weight ``mu_1 + eta*mu_2`` is the Hilbert-Mumford weight of
    the Minkowski sums ``chi_1 + eta*chi_2``, so the optimal direction is the
    negated minimum-norm point of their projected hull.
    """
    eta = Fraction(eta)
    if eta <= 0:
        raise ValueError("eta must be positive")
    if w1.r != w2.r:
        raise DimensionError("points live over different ranks")
    if not torus_semistable(w2):
        raise PreconditionError("second point is torus-unstable")
    s1, s2 = state_weights(w1), state_weights(w2)
    sums = {project_trace_zero([x + eta * y for x, y in zip(c1, c2)]) for c1 in s1 for c2 in s2}
    finder = wolfe_min_norm_point if method == "wolfe" else min_norm_point
    p = finder(sorted(sums))
    if not any(p):
        return ProbeReport(eta, False)
    lam = OneParamSubgroup(exact.primitive(tuple(-x for x in p)))
    m1 = Fraction(mu_kappa(lam, w1))
    m2 = Fraction(mu_kappa(lam, w2))
    return ProbeReport(eta, True, lam, m1, m2, m1 + eta * m2)
