"""Numeric stability calculus for decorated sheaves.

A sheaf is modelled by its rank, degree and Hilbert polynomial; a weighted
filtration by a weighted flag plus the Hilbert polynomials (and degrees) of
its members; the decoration by a tensor point at the generic fibre.  A
filtration is evaluated against the point in a fixed frame: level ``j`` of
the flag is the span of the first ``r_j`` frame vectors.

Verdicts are always relative to the family of filtrations that was checked.
An "unstable" verdict comes with the violating filtration and is sound; the
other two only say that no member of the family was violated.
"""

from __future__ import annotations

import bisect
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Optional, Sequence

from .fans import TestSet, test_set as build_test_set
from .kempf import torus_semistable
from .ratcore import DimensionError, RatPolynomial, fmt_rat, rat
from .rep import TensorPoint, WeightedFlag, gamma_vector, permute_point, transform_point


class ParameterError(ValueError):
    pass


def _poly(x) -> RatPolynomial:
    if isinstance(x, RatPolynomial):
        return x
    if isinstance(x, (list, tuple)):
        return RatPolynomial(x)
    return RatPolynomial.constant(rat(x))


@dataclass(frozen=True)
class SheafNumerics:
    """Rank, degree and Hilbert polynomial of a torsion free sheaf.

    ``structure`` is the Hilbert polynomial of O_X; the degree is read off as
    the ``x^(dimX-1)`` coefficient of ``hilbert - rank * structure``.
    """

    rank: int
    degree: Fraction
    dimX: int
    hilbert: RatPolynomial
    structure: RatPolynomial

    def __post_init__(self):
        object.__setattr__(self, "degree", rat(self.degree))
        if self.rank < 1 or self.dimX < 1:
            raise ParameterError("need rank >= 1 and dimX >= 1")
        if self.hilbert.degree != self.dimX or self.structure.degree != self.dimX:
            raise ParameterError("Hilbert polynomials must have degree dimX")
        if self.hilbert.leading != self.rank * self.structure.leading:
            raise ParameterError("leading coefficient of P must be rank times that of O_X")
        top = self.dimX - 1
        if self.hilbert.coeff(top) - self.rank * self.structure.coeff(top) != self.degree:
            raise ParameterError("degree is inconsistent with the Hilbert polynomial")

    @classmethod
    def curve(cls, rank: int, degree, genus: int = 0) -> "SheafNumerics":
        structure = RatPolynomial([1 - genus, 1])
        hilbert = structure * rank + rat(degree)
        return cls(rank, rat(degree), 1, hilbert, structure)

    @classmethod
    def from_hilbert(cls, rank: int, hilbert, structure) -> "SheafNumerics":
        hilbert, structure = _poly(hilbert), _poly(structure)
        n = structure.degree
        return cls(rank, hilbert.coeff(n - 1) - rank * structure.coeff(n - 1), n, hilbert, structure)

    def sub_hilbert(self, rank: int, degree) -> RatPolynomial:
        """Hilbert polynomial of a subsheaf with given rank and degree.

        Lower-order terms are taken proportional to the ambient ones.
        """
        n = self.dimX
        x_top = RatPolynomial.monomial(1, n - 1)
        rest = self.hilbert - self.structure * self.rank - x_top * self.degree
        return self.structure * rank + x_top * rat(degree) + rest * Fraction(rank, self.rank)


@dataclass(frozen=True)
class FiltrationNumerics:
    flag: WeightedFlag
    sub_hilberts: tuple
    sub_degrees: tuple
    frame: Optional[tuple] = None  # 0-based permutation; None is the identity
    saturated: bool = True

    def __post_init__(self):
        object.__setattr__(self, "sub_degrees", tuple(rat(e) for e in self.sub_degrees))
        object.__setattr__(self, "sub_hilberts", tuple(_poly(p) for p in self.sub_hilberts))
        if self.frame is not None:
            object.__setattr__(self, "frame", tuple(int(i) for i in self.frame))
        s = self.flag.length
        if len(self.sub_hilberts) != s or len(self.sub_degrees) != s:
            raise DimensionError("need one Hilbert polynomial and one degree per filtration step")
        for p in self.sub_hilberts:
            if p.leading <= 0:
                raise ParameterError("sub-Hilbert polynomials need positive leading coefficient")

    @classmethod
    def shadow(cls, sheaf: SheafNumerics, flag: WeightedFlag, degrees: Sequence, frame=None) -> "FiltrationNumerics":
        if flag.ambient_rank != sheaf.rank:
            raise DimensionError("flag rank differs from sheaf rank")
        degrees = tuple(rat(e) for e in degrees)
        hilberts = tuple(sheaf.sub_hilbert(k, e) for k, e in zip(flag.ranks, degrees))
        return cls(flag, hilberts, degrees, frame)

    def to_json(self) -> dict:
        out = {"ranks": list(self.flag.ranks),
               "alphas": [fmt_rat(a) for a in self.flag.alphas],
               "degrees": [fmt_rat(e) for e in self.sub_degrees]}
        if self.frame is not None:
            out["frame"] = list(self.frame)
        return out


@dataclass(frozen=True)
class DecoratedConfig:
    sheaf: SheafNumerics
    a: int
    b: int
    c: int
    dLambda: int
    point: TensorPoint
    bounds: Optional[Mapping] = None        # rank -> (lo, hi) sub-degree interval
    basis_changes: tuple = ()               # extra frames for the generic-point test

    def __post_init__(self):
        p = self.point
        if (p.r, p.a, p.b, p.c) != (self.sheaf.rank, self.a, self.b, self.c):
            raise DimensionError("generic point does not match (r, a, b, c)")


@dataclass(frozen=True)
class ConfigClass:
    r: int
    d: int
    a: int
    b: int
    c: int
    dLambda: int = 0
    dimX: int = 1
    genus: int = 0

    def sheaf(self) -> SheafNumerics:
        if self.dimX == 1:
            return SheafNumerics.curve(self.r, self.d, self.genus)
        structure = RatPolynomial.monomial(Fraction(1, math.factorial(self.dimX)), self.dimX) + RatPolynomial.monomial(1, self.dimX - 1)
        return SheafNumerics.from_hilbert(self.r, structure * self.r + RatPolynomial.monomial(self.d, self.dimX - 1), structure)


def m_and_l(sheaf: SheafNumerics, filt: FiltrationNumerics) -> tuple[RatPolynomial, Fraction]:
    """The polynomial ``M = sum alpha_i (P r_i - P_i r)`` and its ``x^(dimX-1)`` coefficient."""
    flag = filt.flag
    if flag.ambient_rank != sheaf.rank:
        raise DimensionError("flag rank differs from sheaf rank")
    r = sheaf.rank
    M = RatPolynomial()
    for al, k, Pk in zip(flag.alphas, flag.ranks, filt.sub_hilberts):
        M = M + (sheaf.hilbert * k - Pk * r) * al
    return M, M.coeff(sheaf.dimX - 1)


def character_line_degree(sheaf: SheafNumerics, filt: FiltrationNumerics) -> Fraction:
    """Degree of the line bundle attached to the flag's character: ``sum alpha_i (d r_i - e_i r)``."""
    flag = filt.flag
    if flag.ambient_rank != sheaf.rank:
        raise DimensionError("flag rank differs from sheaf rank")
    d, r = sheaf.degree, sheaf.rank
    return sum((al * (d * k - e * r) for al, k, e in zip(flag.alphas, flag.ranks, filt.sub_degrees)), Fraction(0))


@lru_cache(maxsize=65536)
def _mu_cached(flag: WeightedFlag, frame, point: TensorPoint) -> Fraction:
    if frame is not None:
        point = permute_point(point, frame)
    blocks = gamma_vector(flag).block_values
    block_of = [flag.block_of(p) for p in range(1, flag.ambient_rank + 1)]
    best = None
    for idx, _ in point.coeffs:
        val = sum((blocks[block_of[i - 1] - 1] for i in idx), Fraction(0))
        if best is None or val < best:
            best = val
    return -best


def mu_decoration(filt, w: TensorPoint) -> Fraction:
    """``-min`` of the block-weight sums over tensor slots where the decoration survives.

    ``filt`` may be a :class:`FiltrationNumerics` (its frame is honoured) or a
    bare :class:`WeightedFlag`.
    """
    if isinstance(filt, WeightedFlag):
        flag, frame = filt, None
    else:
        flag, frame = filt.flag, filt.frame
    if flag.ambient_rank != w.r:
        raise DimensionError("flag rank differs from point rank")
    return _mu_cached(flag, frame, w)


def mu_value_set(flag: WeightedFlag, a: int) -> set:
    """Every value the decoration weight can take on ``flag``: one per multiset of blocks."""
    blocks = gamma_vector(flag).block_values
    return {-sum(combo, Fraction(0)) for combo in itertools.combinations_with_replacement(blocks, a)}


def _check_delta(delta, dimX: int) -> RatPolynomial:
    delta = _poly(delta)
    if delta.sign() <= 0:
        raise ParameterError("stability parameter must be positive")
    if delta.degree > dimX - 1:
        raise ParameterError(f"stability parameter must have degree at most {dimX - 1}")
    return delta


@dataclass(frozen=True)
class StabilityVerdict:
    verdict: str                      # "stable", "semistable" or "unstable"
    reason: str = ""
    certificate: Optional[FiltrationNumerics] = None
    value: Optional[RatPolynomial] = None
    family_size: int = 0
    relative_to_family: bool = True

    def to_json(self) -> dict:
        out = {"verdict": self.verdict, "relative_to_family": self.relative_to_family,
               "family_size": self.family_size, "reason": self.reason}
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_json()
            out["value"] = self.value.to_json()
        return out


def integer_range(lo, hi) -> range:
    return range(math.ceil(Fraction(lo)), math.floor(Fraction(hi)) + 1)


def frames(r: int) -> list[tuple]:
    return list(itertools.permutations(range(r)))


def default_family(config: DecoratedConfig, bounds: Optional[Mapping] = None,
                   flags: Optional[Iterable[WeightedFlag]] = None,
                   frame_list: Optional[Sequence] = None) -> list[FiltrationNumerics]:
    """Flags with test-set signatures x sub-degrees in ``bounds`` x coordinate frames.

    Coordinate frames are all orderings of the basis, so every coordinate
    flag of the generic point is covered.
    """
    bounds = bounds if bounds is not None else config.bounds
    if bounds is None:
        raise ParameterError("sub-degree bounds are required to build the default family")
    bounds = {int(k): v for k, v in bounds.items()}
    r = config.sheaf.rank
    if flags is None:
        flags = build_test_set(config.a, config.b, config.c, r).flags()
    if frame_list is None:
        frame_list = frames(r)
    family = []
    for flag in flags:
        ranges = []
        for k in flag.ranks:
            if k not in bounds:
                raise ParameterError(f"no sub-degree bounds for rank {k}")
            ranges.append(integer_range(*bounds[k]))
        for degrees in itertools.product(*ranges):
            for fr in frame_list:
                family.append(FiltrationNumerics.shadow(config.sheaf, flag, degrees, fr))
    return family


def _values(config: DecoratedConfig, family: Sequence[FiltrationNumerics]):
    for filt in family:
        M, _ = m_and_l(config.sheaf, filt)
        yield filt, M, mu_decoration(filt, config.point)


def delta_semistable(config: DecoratedConfig, delta, family: Optional[Sequence[FiltrationNumerics]] = None) -> StabilityVerdict:
    """Check ``M + delta * mu`` over the family, in the lexicographic order."""
    delta = _check_delta(delta, config.sheaf.dimX)
    if family is None:
        family = default_family(config)
    if not family:
        raise ParameterError("empty family of filtrations")
    boundary = False
    for filt, M, mu in _values(config, family):
        val = M + delta * mu
        s = val.sign()
        if s < 0:
            return StabilityVerdict("unstable", "M + delta*mu < 0", filt, val, len(family))
        if s == 0:
            boundary = True
    return StabilityVerdict("semistable" if boundary else "stable", "", None, None, len(family))


def asymptotically_semistable(config: DecoratedConfig, family: Optional[Sequence[FiltrationNumerics]] = None) -> StabilityVerdict:
    """a) generic point torus-semistable in every supplied frame; b) ``M >= 0`` where ``mu = 0``."""
    if family is None:
        family = default_family(config)
    points = [config.point] + [transform_point(config.point, g) for g in config.basis_changes]
    for p in points:
        if not torus_semistable(p):
            return StabilityVerdict("unstable", "generic point is torus-unstable", None, None, len(family))
    boundary = False
    for filt, M, mu in _values(config, family):
        if mu != 0:
            continue
        s = M.sign()
        if s < 0:
            return StabilityVerdict("unstable", "M < 0 on a filtration with mu = 0", filt, M, len(family))
        if s == 0:
            boundary = True
    return StabilityVerdict("semistable" if boundary else "stable", "", None, None, len(family))


@dataclass(frozen=True)
class WallReport:
    walls: tuple                      # RatPolynomials, strictly ascending
    provenance: tuple                 # per wall: tuple of (FiltrationNumerics, M, mu)
    dimX: int = 1
    m_values: tuple = ()
    mu_values: tuple = ()
    confirmed: Optional[tuple] = None

    def chambers(self) -> list[tuple]:
        """Open intervals between consecutive walls, from 0 to the top sentinel (None)."""
        bounds = [RatPolynomial()] + list(self.walls) + [None]
        return [(bounds[i], bounds[i + 1]) for i in range(len(bounds) - 1)]

    def to_json(self) -> dict:
        out = {
            "dimX": self.dimX,
            "walls": [_poly_json(w) for w in self.walls],
            "provenance": [
                [{"filtration": f.to_json(), "M": _poly_json(M), "mu": fmt_rat(mu),
                  "alpha_normalization": "weight gaps / r"} for f, M, mu in prov]
                for prov in self.provenance
            ],
            "U": [_poly_json(m) for m in self.m_values],
            "V": [fmt_rat(z) for z in self.mu_values],
        }
        if self.confirmed is not None:
            out["confirmed"] = list(self.confirmed)
        return out

    @classmethod
    def from_json(cls, data: Mapping) -> "WallReport":
        walls = tuple(sorted(_poly(w) if isinstance(w, list) else RatPolynomial.constant(rat(w)) for w in data["walls"]))
        return cls(walls, tuple(() for _ in walls), int(data.get("dimX", 1)))


def _poly_json(p: RatPolynomial):
    """Constants serialize as a bare "p/q" string, everything else as a coefficient list."""
    if p.degree <= 0:
        return fmt_rat(p.coeff(0))
    return p.to_json()


def candidate_walls(config_class: ConfigClass, degree_bounds: Mapping, matched: bool = True,
                    tset: Optional[TestSet] = None) -> WallReport:
    """Finite superset of the critical parameter values ``-M/mu``.

    ``M`` runs over filtrations with test-set signatures and sub-degrees in
    ``degree_bounds``; ``mu`` over all values the decoration weight can take on
    the same signature.  With ``matched=False`` every ``M`` is paired with
    every ``mu`` regardless of signature.
    """
    bounds = {int(k): v for k, v in degree_bounds.items()}
    if not bounds:
        raise ParameterError("empty degree bounds")
    for k, (lo, hi) in bounds.items():
        if not integer_range(lo, hi):
            raise ParameterError(f"empty degree interval for rank {k}")
    sheaf = config_class.sheaf()
    r = config_class.r
    if tset is None:
        tset = build_test_set(config_class.a, config_class.b, config_class.c, r)
    per_flag = []
    for flag in tset.flags():
        ranges = []
        for k in flag.ranks:
            if k not in bounds:
                raise ParameterError(f"no sub-degree bounds for rank {k}")
            ranges.append(integer_range(*bounds[k]))
        filts = [FiltrationNumerics.shadow(sheaf, flag, degs) for degs in itertools.product(*ranges)]
        Ms = [(f, m_and_l(sheaf, f)[0]) for f in filts]
        zs = sorted(z for z in mu_value_set(flag, config_class.a) if z != 0)
        per_flag.append((Ms, zs))

    all_M = sorted({M for Ms, _ in per_flag for _, M in Ms})
    all_z = sorted({z for _, zs in per_flag for z in zs})
    found: dict = {}
    for i, (Ms, zs) in enumerate(per_flag):
        mus = zs if matched else all_z
        for f, M in Ms:
            for z in mus:
                wall = M * (Fraction(-1) / z)
                if wall.sign() > 0:
                    found.setdefault(wall, []).append((f, M, z))
    walls = tuple(sorted(found))
    prov = tuple(tuple(found[w]) for w in walls)
    return WallReport(walls, prov, sheaf.dimX, tuple(all_M), tuple(all_z))


@dataclass(frozen=True)
class ChamberClass:
    kind: str                         # "on_wall", "chamber", "top", "bottom"
    index: Optional[int] = None       # wall index (1-based) or lower wall index of the chamber
    lower: Optional[RatPolynomial] = None
    upper: Optional[RatPolynomial] = None

    def to_json(self) -> dict:
        out = {"kind": self.kind}
        if self.index is not None:
            out["index"] = self.index
        if self.lower is not None:
            out["lower"] = _poly_json(self.lower)
        if self.upper is not None:
            out["upper"] = _poly_json(self.upper)
        if self.kind == "top":
            out["note"] = "delta-semistability agrees with asymptotic semistability"
        elif self.kind == "bottom":
            out["note"] = "delta-semistable implies the underlying sheaf is semistable"
        return out


def chamber_report(report: WallReport, delta) -> ChamberClass:
    delta = _poly(delta)
    if delta.sign() <= 0:
        raise ParameterError("stability parameter must be positive")
    walls = list(report.walls)
    pos = bisect.bisect_left(walls, delta)
    if pos < len(walls) and walls[pos] == delta:
        return ChamberClass("on_wall", pos + 1, delta, delta)
    if not walls or pos == len(walls):
        return ChamberClass("top", len(walls), walls[-1] if walls else RatPolynomial(), None)
    if pos == 0:
        return ChamberClass("bottom", 0, RatPolynomial(), walls[0])
    return ChamberClass("chamber", pos, walls[pos - 1], walls[pos])


@dataclass(frozen=True)
class Thresholds:
    delta0: Fraction
    delta1: Fraction
    C: Fraction

    def to_json(self) -> dict:
        return {"delta0": fmt_rat(self.delta0), "delta1": fmt_rat(self.delta1), "C": fmt_rat(self.C)}


def delta_bounds(config_class: ConfigClass, tset: Optional[TestSet] = None,
                 n_per_rank: Optional[Mapping] = None) -> Thresholds:
    """Effective thresholds ``delta0 <= delta1``.

    ``delta0 = max(0, deg Lambda)``; ``delta1 = max(delta0, -C)`` where ``C`` is
    the smallest value of ``sum alpha_i (d (r_i - r) - n_{r - r_i} deg(Lambda) r)``
    over the test set.  ``n_per_rank`` is indexed by quotient rank ``r - r_i``.
    """
    r, d, dl = config_class.r, config_class.d, config_class.dLambda
    if tset is None:
        tset = build_test_set(config_class.a, config_class.b, config_class.c, r)
    n = {int(k): rat(v) for k, v in (n_per_rank or {}).items()}
    delta0 = Fraction(max(0, dl))
    C = None
    for ranks, alphas in tset.entries:
        total = Fraction(0)
        for k, al in zip(ranks, alphas):
            if dl != 0 and (r - k) not in n:
                raise ParameterError(f"missing n for quotient rank {r - k}")
            nk = n.get(r - k, Fraction(0))
            total += al * (d * (k - r) - nk * dl * r)
        C = total if C is None else min(C, total)
    if C is None:
        C = Fraction(0)
    return Thresholds(delta0, max(delta0, -C), C)


def default_degree_bounds(config_class: ConfigClass, delta_cap, n_per_rank: Mapping,
                          tset: Optional[TestSet] = None) -> dict:
    """Sub-degree box for ranks ``1..r-1`` valid for parameters up to ``delta_cap``.

    Upper ends come from ``mu_max <= mu + C2``; lower ends drop subsheaves of
    such small slope that no test-set filtration through them can be
    destabilizing below ``delta_cap``.
    """
    r, d, dl, a = config_class.r, config_class.d, config_class.dLambda, config_class.a
    cap = rat(delta_cap)
    n = {int(k): rat(v) for k, v in n_per_rank.items()}
    if tset is None:
        tset = build_test_set(a, config_class.b, config_class.c, r)
    C1 = max(Fraction(d + n.get(r - k, 0) * dl, k) - Fraction(d, r) for k in range(1, r))
    C2 = max(Fraction(0), C1, cap * a * (r - 1) / r)
    C2p = C2 * (r - 1) * r
    out = {}
    for k in range(1, r):
        hi = math.floor((d * k + C2p) / r)
        B = None
        for ranks, alphas in tset.entries:
            if k not in ranks:
                continue
            ak = alphas[ranks.index(k)]
            others = sum(alphas) - ak
            val = (cap * (r - 1) * sum(alphas) + C2p * others) / ak
            B = val if B is None else max(B, val)
        if B is None:
            B = cap * (r - 1)
        lo = math.ceil((d * k - B) / r)
        out[k] = (min(lo, hi), hi)
    return out


def _sample_between(lo: RatPolynomial, hi: Optional[RatPolynomial], dimX: int) -> list[RatPolynomial]:
    if hi is None:
        step = RatPolynomial.monomial(1, dimX - 1)
        return [lo + step]
    return [(lo + hi) / 2]


def verify_walls(report: WallReport, config: Optional[DecoratedConfig] = None,
                 family: Optional[Sequence[FiltrationNumerics]] = None) -> WallReport:
    """Mark each wall confirmed when a verdict actually changes across it.

    With a config the verdict of that decorated sheaf over ``family`` is used;
    without one, the sign of ``M + delta*mu`` for each generating pair.
    """
    walls = list(report.walls)
    bounds = [RatPolynomial()] + walls + [None]
    flags = []
    for i, wall in enumerate(walls):
        below = _sample_between(bounds[i], wall, report.dimX)[0]
        above = _sample_between(wall, bounds[i + 2], report.dimX)[0]
        probes = [p for p in (below, wall, above) if p.sign() > 0]
        if config is not None:
            fam = family if family is not None else default_family(config)
            verdicts = {delta_semistable(config, p, fam).verdict for p in probes}
            flags.append(len(verdicts) > 1)
        else:
            changed = False
            for _, M, mu in report.provenance[i]:
                signs = {(M + p * mu).sign() for p in probes}
                changed = changed or len(signs) > 1
            flags.append(changed)
    return WallReport(report.walls, report.provenance, report.dimX, report.m_values, report.mu_values, tuple(flags))
