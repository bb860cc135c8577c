"""Weights of the representation (V^{(x)a})^{(+)b} (x) det(V)^{-c} of GL(V), dim V = r,
and the combinatorics of one-parameter subgroups and weighted flags.

Conventions
-----------
* Characters are integer tuples of length r in the basis e_1, ..., e_r.
* Weighted flags are ascending: the first block carries the smallest weight,
  so the dominant chamber is ``lam_1 <= ... <= lam_r``.
* Basis indices in tensor points are 1-based, as in the JSON format.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .ratcore import fmt_rat, rat

Character = tuple  # tuple[int, ...]


class InvalidPointError(ValueError):
    """A tensor point with no nonzero coefficient, or with out-of-range indices."""


def _as_int_tuple(xs) -> tuple[int, ...]:
    out = []
    for x in xs:
        f = Fraction(x)
        if f.denominator != 1:
            raise ValueError(f"expected an integer entry, got {x!r}")
        out.append(int(f))
    return tuple(out)


@dataclass(frozen=True)
class OneParamSubgroup:
    weights: tuple
    sl_constrained: bool = True

    def __post_init__(self):
        object.__setattr__(self, "weights", _as_int_tuple(self.weights))
        if not any(self.weights):
            raise ValueError("the zero vector is not a one-parameter subgroup")
        if self.sl_constrained and sum(self.weights):
            raise ValueError(f"weights {self.weights} do not sum to zero")

    @property
    def r(self) -> int:
        return len(self.weights)


@dataclass(frozen=True)
class WeightedFlag:
    """Ranks ``0 < r_1 < ... < r_s < r`` with positive rational weights."""

    ranks: tuple
    alphas: tuple
    ambient_rank: int

    def __post_init__(self):
        ranks = tuple(int(k) for k in self.ranks)
        alphas = tuple(rat(a) for a in self.alphas)
        object.__setattr__(self, "ranks", ranks)
        object.__setattr__(self, "alphas", alphas)
        if len(ranks) != len(alphas):
            raise ValueError("ranks and alphas differ in length")
        if any(a <= 0 for a in alphas):
            raise ValueError("weights must be positive")
        prev = 0
        for k in ranks:
            if k <= prev:
                raise ValueError(f"ranks {ranks} not strictly increasing and positive")
            prev = k
        if ranks and ranks[-1] >= self.ambient_rank:
            raise ValueError(f"rank {ranks[-1]} not below ambient rank {self.ambient_rank}")

    @property
    def length(self) -> int:
        return len(self.ranks)

    def signature(self) -> tuple:
        return (self.ranks, self.alphas)

    def block_of(self, p: int) -> int:
        """1-based block index of the 1-based basis position ``p``."""
        for j, k in enumerate(self.ranks, start=1):
            if p <= k:
                return j
        return len(self.ranks) + 1

    def scaled(self, t) -> "WeightedFlag":
        t = rat(t)
        return WeightedFlag(self.ranks, tuple(a * t for a in self.alphas), self.ambient_rank)

    def to_json(self) -> dict:
        return {"ranks": list(self.ranks), "alphas": [fmt_rat(a) for a in self.alphas]}


@dataclass(frozen=True)
class BlockWeightVector:
    entry_values: tuple
    block_values: tuple


@dataclass(frozen=True)
class TensorPoint:
    """Sparse point of ``(V^{(x)a})^{(+)b} (x) det(V)^{-c}``.

    ``coeffs`` maps ``(index_tuple, copy)`` to a nonzero Fraction; indices
    and copies are 1-based.
    """

    r: int
    a: int
    b: int
    c: int
    coeffs: Mapping = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (idx, k), v in dict(self.coeffs).items():
            idx = tuple(int(i) for i in idx)
            v = rat(v)
            if len(idx) != self.a:
                raise InvalidPointError(f"index tuple {idx} has length {len(idx)}, expected a={self.a}")
            if any(i < 1 or i > self.r for i in idx) or not 1 <= int(k) <= self.b:
                raise InvalidPointError(f"index {(idx, k)} out of range")
            if v != 0:
                clean[(idx, int(k))] = v
        if not clean:
            raise InvalidPointError("tensor point has no nonzero coefficient")
        object.__setattr__(self, "coeffs", dict(sorted(clean.items())))

    def __hash__(self):
        return hash((self.r, self.a, self.b, self.c, tuple(self.coeffs.items())))

    @classmethod
    def from_entries(cls, r, a, b, c, entries: Iterable) -> "TensorPoint":
        """Build from ``(idx, copy, value)`` triples."""
        coeffs: dict = {}
        for idx, k, v in entries:
            key = (tuple(idx), k)
            coeffs[key] = coeffs.get(key, Fraction(0)) + rat(v)
        return cls(r, a, b, c, coeffs)

    def to_json(self) -> dict:
        return {
            "r": self.r, "a": self.a, "b": self.b, "c": self.c,
            "coeffs": [{"idx": list(idx), "copy": k, "val": fmt_rat(v)}
                       for (idx, k), v in self.coeffs.items()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "TensorPoint":
        entries = [(e["idx"], e.get("copy", 1), e["val"]) for e in data["coeffs"]]
        return cls.from_entries(data["r"], data["a"], data.get("b", 1), data.get("c", 0), entries)

    def scaled(self, t) -> "TensorPoint":
        t = rat(t)
        if t == 0:
            raise InvalidPointError("cannot scale a point by zero")
        return TensorPoint(self.r, self.a, self.b, self.c, {k: v * t for k, v in self.coeffs.items()})

    def restricted(self, keys: Iterable) -> "TensorPoint":
        keys = set(keys)
        return TensorPoint(self.r, self.a, self.b, self.c, {k: v for k, v in self.coeffs.items() if k in keys})


def character_of(idx: Sequence[int], r: int, c: int) -> Character:
    chi = [-c] * r
    for i in idx:
        chi[i - 1] += 1
    return tuple(chi)


def enumerate_weights(a: int, b: int, c: int, r: int) -> Counter:
    """All weights of the representation with multiplicities."""
    if r < 1 or min(a, b, c) < 0:
        raise ValueError("need r >= 1 and a, b, c >= 0")
    out: Counter = Counter()
    for idx in itertools.product(range(1, r + 1), repeat=a):
        out[character_of(idx, r, c)] += b
    return out


def state_weights(w: TensorPoint) -> frozenset:
    """Characters on which ``w`` has a nonzero component."""
    if not w.coeffs:
        raise InvalidPointError("tensor point has no nonzero coefficient")
    return frozenset(character_of(idx, w.r, w.c) for idx, _ in w.coeffs)


def pairing(lam: Sequence, chi: Sequence):
    if len(lam) != len(chi):
        raise ValueError(f"length mismatch: {len(lam)} vs {len(chi)}")
    return sum(x * y for x, y in zip(lam, chi))


def mu_kappa(lam, w: TensorPoint):
    """Hilbert-Mumford weight: the largest pairing of ``lam`` with a state weight."""
    weights = lam.weights if isinstance(lam, OneParamSubgroup) else tuple(lam)
    if not any(weights):
        raise ValueError("the zero vector is not a one-parameter subgroup")
    return max(pairing(weights, chi) for chi in state_weights(w))


def gamma_vector(flag: WeightedFlag) -> BlockWeightVector:
    r = flag.ambient_rank
    entries = []
    for p in range(1, r + 1):
        g = Fraction(0)
        for k, al in zip(flag.ranks, flag.alphas):
            g += al * (k - r) if p <= k else al * k
        entries.append(g)
    blocks = []
    s = flag.length
    for j in range(1, s + 2):
        g = Fraction(0)
        for i, (k, al) in enumerate(zip(flag.ranks, flag.alphas), start=1):
            g += al * (k - r) if i >= j else al * k
        blocks.append(g)
    return BlockWeightVector(tuple(entries), tuple(blocks))


def weighted_flag_of_ops(lam) -> tuple[WeightedFlag, tuple[int, ...]]:
    """Weighted flag of a one-parameter subgroup.

    Returns the flag and the permutation ``perm`` (0-based) such that
    ``[lam[i] for i in perm]`` is ascending; basis vector ``perm[0]`` spans
    the start of the flag.
    """
    if not isinstance(lam, OneParamSubgroup):
        lam = OneParamSubgroup(tuple(lam), sl_constrained=False)
    weights = lam.weights
    r = len(weights)
    perm = tuple(sorted(range(r), key=lambda i: (weights[i], i)))
    ordered = [weights[i] for i in perm]
    ranks, alphas = [], []
    for p in range(1, r):
        if ordered[p] != ordered[p - 1]:
            ranks.append(p)
            alphas.append(Fraction(ordered[p] - ordered[p - 1], r))
    return WeightedFlag(tuple(ranks), tuple(alphas), r), perm


def permute_point(w: TensorPoint, perm: Sequence[int]) -> TensorPoint:
    """Relabel the basis so that new basis vector ``p`` is old vector ``perm[p]``.

    ``perm`` is 0-based.  With the permutation from :func:`weighted_flag_of_ops`
    the coordinate flag of the result is the weighted flag of ``lam``.
    """
    inverse = {old + 1: new + 1 for new, old in enumerate(perm)}
    return TensorPoint(w.r, w.a, w.b, w.c,
                       {(tuple(inverse[i] for i in idx), k): v for (idx, k), v in w.coeffs.items()})


def transform_point(w: TensorPoint, g: Sequence[Sequence]) -> TensorPoint:
    """Apply the basis change ``g`` (r x r rational matrix, column i = image of b_i).

    The det^{-c} factor only rescales the point and is dropped.
    """
    r = w.r
    G = [[rat(x) for x in row] for row in g]
    if len(G) != r or any(len(row) != r for row in G):
        raise ValueError("basis change must be an r x r matrix")
    out: dict = {}
    for (idx, k), v in w.coeffs.items():
        columns = [[(j + 1, G[j][i - 1]) for j in range(r) if G[j][i - 1] != 0] for i in idx]
        for combo in itertools.product(*columns):
            val = v
            for _, x in combo:
                val *= x
            key = (tuple(j for j, _ in combo), k)
            out[key] = out.get(key, Fraction(0)) + val
    return TensorPoint(r, w.a, w.b, w.c, out)
