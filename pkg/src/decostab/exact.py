"""Exact linear algebra and linear programming over the rationals.

Small dense routines only: the problems in this package have a handful of
variables and at most a few hundred constraints.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence


def _rows(A) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in A]


def row_reduce(A) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    M = _rows(A)
    if not M:
        return M, []
    ncols = len(M[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M, pivots


def rank(A) -> int:
    return len(row_reduce(A)[1]) if A else 0


def solve(A, b) -> Optional[tuple]:
    """Unique solution of ``A x = b``; None if singular or inconsistent."""
    if not A:
        return None
    n = len(A[0])
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, piv = row_reduce(aug)
    if n in piv:
        return None
    if len(piv) < n:
        return None
    x = [Fraction(0)] * n
    for i, c in enumerate(piv):
        x[c] = R[i][n]
    return tuple(x)


def nullspace(A, ncols: Optional[int] = None) -> list[tuple]:
    """Basis of the right kernel of ``A``."""
    if not A:
        n = ncols or 0
        return [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
    n = len(A[0])
    R, piv = row_reduce(A)
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, c in enumerate(piv):
            v[c] = -R[i][f]
        basis.append(tuple(v))
    return basis


def primitive(v: Sequence) -> tuple[int, ...]:
    """The primitive integer vector on the ray through the rational vector ``v``."""
    fr = [Fraction(x) for x in v]
    if all(x == 0 for x in fr):
        raise ValueError("zero vector has no primitive generator")
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for k in ints:
        g = gcd(g, abs(k))
    return tuple(k // g for k in ints)


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal", "infeasible" or "unbounded"
    x: Optional[tuple] = None
    value: Optional[Fraction] = None


def _pivot(T, obj, r, c):
    inv = 1 / T[r][c]
    T[r] = [x * inv for x in T[r]]
    for i in range(len(T)):
        if i != r and T[i][c] != 0:
            f = T[i][c]
            T[i] = [x - f * y for x, y in zip(T[i], T[r])]
    if obj[c] != 0:
        f = obj[c]
        obj[:] = [x - f * y for x, y in zip(obj, T[r])]


def _run(T, obj, basis, ncols) -> bool:
    """Bland's rule simplex on a maximisation tableau; False if unbounded."""
    while True:
        enter = next((j for j in range(ncols) if obj[j] < 0), None)
        if enter is None:
            return True
        best = None
        for i, row in enumerate(T):
            a = row[enter]
            if a > 0:
                ratio = row[-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return False
        r = best[1]
        _pivot(T, obj, r, enter)
        basis[r] = enter


def linprog(c, A_ub=(), b_ub=(), A_eq=(), b_eq=()) -> LPResult:
    """Maximise ``c.x`` over free ``x`` subject to ``A_ub x <= b_ub`` and ``A_eq x = b_eq``.

    Two-phase simplex with Bland's rule; every number stays a Fraction.
    """
    n = len(c)
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    n_ub = len(A_ub)
    # variables: x+ (n), x- (n), slacks (n_ub)
    for k, (a, bk) in enumerate(zip(A_ub, b_ub)):
        row = [Fraction(v) for v in a] + [-Fraction(v) for v in a] + [Fraction(int(k == j)) for j in range(n_ub)]
        rows.append(row)
        rhs.append(Fraction(bk))
    for a, bk in zip(A_eq, b_eq):
        rows.append([Fraction(v) for v in a] + [-Fraction(v) for v in a] + [Fraction(0)] * n_ub)
        rhs.append(Fraction(bk))
    ny = 2 * n + n_ub
    m = len(rows)
    for i in range(m):
        if rhs[i] < 0:
            rows[i] = [-v for v in rows[i]]
            rhs[i] = -rhs[i]

    # phase 1 with one artificial per row
    T = [rows[i] + [Fraction(int(i == j)) for j in range(m)] + [rhs[i]] for i in range(m)]
    basis = [ny + i for i in range(m)]
    total = ny + m
    obj = [Fraction(0)] * (total + 1)
    for i in range(m):
        for j in range(total + 1):
            obj[j] -= T[i][j]
    for i in range(m):
        obj[ny + i] = Fraction(0)
    _run(T, obj, basis, total)
    if obj[-1] != 0:
        return LPResult("infeasible")

    # drive artificials out, drop redundant rows
    i = 0
    while i < len(T):
        if basis[i] >= ny:
            col = next((j for j in range(ny) if T[i][j] != 0), None)
            if col is None:
                del T[i]
                del basis[i]
                continue
            _pivot(T, [Fraction(0)] * (total + 1), i, col)
            basis[i] = col
        i += 1
    T = [row[:ny] + [row[-1]] for row in T]

    cost = [Fraction(v) for v in c] + [-Fraction(v) for v in c] + [Fraction(0)] * n_ub
    obj = [-cj for cj in cost] + [Fraction(0)]
    for i, bvar in enumerate(basis):
        cb = cost[bvar]
        if cb != 0:
            obj = [o + cb * t for o, t in zip(obj, T[i])]
    if not _run(T, obj, basis, ny):
        return LPResult("unbounded")
    y = [Fraction(0)] * ny
    for i, bvar in enumerate(basis):
        y[bvar] = T[i][-1]
    x = tuple(y[j] - y[n + j] for j in range(n))
    return LPResult("optimal", x, obj[-1])


def feasible_point(A_ub=(), b_ub=(), A_eq=(), b_eq=(), n: Optional[int] = None) -> Optional[tuple]:
    """Some point of the polyhedron, or None when it is empty."""
    if n is None:
        n = len(A_ub[0]) if A_ub else len(A_eq[0])
    res = linprog([0] * n, A_ub, b_ub, A_eq, b_eq)
    return res.x if res.status == "optimal" else None
