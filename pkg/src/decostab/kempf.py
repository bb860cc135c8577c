"""Instability at the level of the diagonal torus of SL(V).

The optimal destabilizing direction of an unstable point ``w`` is the
negative of the minimum-norm point of the convex hull of its state weights,
projected to the trace-zero hyperplane.  That point is found exactly by
enumerating affinely independent subsets of the weights (there are few);
an exact Wolfe iteration is provided as a faster alternative and the test
suite checks that both agree.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import exact
from .ratcore import compare_ratios, dot, fmt_rat, Ordering
from .rep import (
    OneParamSubgroup,
    TensorPoint,
    WeightedFlag,
    character_of,
    gamma_vector,
    mu_kappa,
    pairing,
    state_weights,
    transform_point,
    weighted_flag_of_ops,
)


class SemistableError(ValueError):
    """Raised when an instability certificate is requested for a semistable point."""


def project_trace_zero(chi: Sequence) -> tuple:
    r = len(chi)
    mean = Fraction(sum(chi), r)
    return tuple(Fraction(x) - mean for x in chi)


def _affine_min_norm(points: Sequence[tuple]) -> Optional[tuple]:
    """Barycentric weights of the min-norm point of the affine hull, or None if degenerate."""
    k = len(points)
    A = [[dot(points[i], points[j]) for j in range(k)] + [Fraction(1)] for i in range(k)]
    A.append([Fraction(1)] * k + [Fraction(0)])
    rhs = [Fraction(0)] * k + [Fraction(1)]
    sol = exact.solve(A, rhs)
    if sol is None:
        return None
    return sol[:k]


def _combine(points, weights) -> tuple:
    n = len(points[0])
    return tuple(sum((wt * p[i] for p, wt in zip(points, weights)), Fraction(0)) for i in range(n))


def min_norm_point(points: Sequence[Sequence]) -> tuple:
    """Exact minimum-norm point of the convex hull of ``points``.

    Every affinely independent subset of size at most ``dim + 1`` is tried;
    the optimum lies in the relative interior of the face spanned by one of
    them.
    """
    pts = sorted({tuple(Fraction(x) for x in p) for p in points})
    if not pts:
        raise ValueError("empty point set")
    dim = len(pts[0])
    best, best_norm = None, None
    for k in range(1, min(len(pts), dim + 1) + 1):
        for subset in itertools.combinations(pts, k):
            weights = _affine_min_norm(subset)
            if weights is None or any(wt < 0 for wt in weights):
                continue
            p = _combine(subset, weights)
            n = dot(p, p)
            if best_norm is None or n < best_norm:
                best, best_norm = p, n
                if n == 0:
                    return best
    return best


def wolfe_min_norm_point(points: Sequence[Sequence], max_iter: int = 10_000) -> tuple:
    """Wolfe's minimum-norm-point algorithm run in exact arithmetic."""
    pts = sorted({tuple(Fraction(x) for x in p) for p in points})
    if not pts:
        raise ValueError("empty point set")
    start = min(pts, key=lambda p: dot(p, p))
    S, lam = [start], [Fraction(1)]
    x = start
    for _ in range(max_iter):
        xx = dot(x, x)
        if xx == 0:
            return x
        p = min(pts, key=lambda q: dot(x, q))
        if dot(x, p) >= xx or p in S:
            return x
        S.append(p)
        lam.append(Fraction(0))
        while True:
            alpha = _affine_min_norm(S)
            if alpha is None:
                # affinely dependent corral: cannot happen in exact arithmetic
                raise RuntimeError("Wolfe corral became affinely dependent")
            if all(a > 0 for a in alpha):
                lam = list(alpha)
                x = _combine(S, lam)
                break
            theta = min(l / (l - a) for l, a in zip(lam, alpha) if a <= 0)
            lam = [(1 - theta) * l + theta * a for l, a in zip(lam, alpha)]
            keep = [i for i, l in enumerate(lam) if l > 0]
            S = [S[i] for i in keep]
            lam = [lam[i] for i in keep]
            x = _combine(S, lam)
    raise RuntimeError("Wolfe iteration did not terminate")


def torus_semistable(w: TensorPoint) -> bool:
    """True iff no trace-zero ``lam`` has negative Hilbert-Mumford weight on ``w``.

    Decided by an exact LP: look for ``lam`` with ``sum(lam) = 0`` and
    ``<lam, chi> <= -1`` on every state weight.
    """
    states = sorted(state_weights(w))
    r = w.r
    res = exact.linprog([0] * r, A_ub=states, b_ub=[-1] * len(states), A_eq=[[1] * r], b_eq=[0])
    return res.status == "infeasible"


@dataclass(frozen=True)
class InstabilityCertificate:
    lambda_star: OneParamSubgroup
    mu_value: Fraction
    norm_sq: Fraction
    flag: WeightedFlag
    permutation: tuple
    chi_star_block_exponents: tuple
    frame: Optional[int] = None  # index into the caller's basis changes; None = identity

    @property
    def q(self) -> Fraction:
        return self.mu_value

    @property
    def m0_sq(self) -> Fraction:
        return self.mu_value * self.mu_value / self.norm_sq

    def to_json(self) -> dict:
        out = {
            "lambda_star": list(self.lambda_star.weights),
            "mu_value": fmt_rat(self.mu_value),
            "norm_sq": fmt_rat(self.norm_sq),
            "m0_sq": fmt_rat(self.m0_sq),
            "flag": self.flag.to_json(),
            "permutation": list(self.permutation),
            "q": fmt_rat(self.q),
            "chi_star": [fmt_rat(x) for x in self.chi_star_block_exponents],
        }
        if self.frame is not None:
            out["frame"] = self.frame
        return out


@dataclass(frozen=True)
class ResidualPoint:
    point: TensorPoint
    level_value: Fraction


def _certificate_for(w: TensorPoint, frame=None) -> Optional[InstabilityCertificate]:
    projected = [project_trace_zero(chi) for chi in state_weights(w)]
    p = min_norm_point(projected)
    if not any(p):
        return None
    lam = OneParamSubgroup(exact.primitive(tuple(-x for x in p)))
    mu = Fraction(mu_kappa(lam, w))
    n = Fraction(dot(lam.weights, lam.weights))
    flag, perm = weighted_flag_of_ops(lam)
    blocks = gamma_vector(flag).block_values
    cert = InstabilityCertificate(lam, mu, n, flag, perm, tuple(mu * g for g in blocks), frame)
    assert mu < 0 and cert.m0_sq == dot(p, p)
    return cert


def instability_ops(w: TensorPoint, basis_changes: Optional[Sequence] = None) -> InstabilityCertificate:
    """Optimal destabilizing one-parameter subgroup of ``w`` in the diagonal torus.

    With ``basis_changes`` the search also covers each ``g . w`` and returns
    the most destabilizing candidate (ties go to the earliest frame).
    """
    best = _certificate_for(w)
    for i, g in enumerate(basis_changes or ()):
        cand = _certificate_for(transform_point(w, g), frame=i)
        if cand is None:
            continue
        if best is None or compare_ratios(cand.mu_value, cand.norm_sq, best.mu_value, best.norm_sq) == Ordering.LESS:
            best = cand
    if best is None:
        raise SemistableError("point is torus-semistable; no instability certificate")
    return best


def destabilizing_certificate(w: TensorPoint) -> tuple[InstabilityCertificate, ResidualPoint]:
    """Certificate plus the component of ``w`` on the weight level attaining the maximum."""
    cert = instability_ops(w)
    lam = cert.lambda_star.weights
    keys = [key for key in w.coeffs if pairing(lam, character_of(key[0], w.r, w.c)) == cert.mu_value]
    return cert, ResidualPoint(w.restricted(keys), cert.mu_value)


def nu_squared_order(lam: Sequence, w: TensorPoint) -> tuple[Fraction, Fraction]:
    """``(mu, |lam|^2)`` for comparing normalized weights without square roots."""
    return Fraction(mu_kappa(lam, w)), Fraction(dot(lam, lam))
