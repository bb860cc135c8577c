import itertools
from fractions import Fraction

from hypothesis import given, strategies as st

from decostab import exact

small = st.integers(-4, 4)


def test_solve_and_nullspace():
    A = [[1, 2], [3, 4]]
    assert exact.solve(A, [5, 6]) == (Fraction(-4), Fraction(9, 2))
    assert exact.solve([[1, 2], [2, 4]], [1, 2]) is None
    ns = exact.nullspace([[1, 1, 1]])
    assert len(ns) == 2
    for v in ns:
        assert sum(v) == 0


def test_primitive():
    assert exact.primitive((Fraction(2, 3), Fraction(-4, 3))) == (1, -2)
    assert exact.primitive((0, 0, Fraction(-1, 7))) == (0, 0, -1)


def _vertex_optimum(c, A, b):
    """Best objective over all vertices of {Ax <= b} in the plane; None if empty."""
    best = None
    for i, j in itertools.combinations(range(len(A)), 2):
        x = exact.solve([A[i], A[j]], [b[i], b[j]])
        if x is None:
            continue
        if all(sum(a * xi for a, xi in zip(row, x)) <= bi for row, bi in zip(A, b)):
            val = sum(ci * xi for ci, xi in zip(c, x))
            best = val if best is None else max(best, val)
    return best


@given(st.lists(st.tuples(small, small, st.integers(-6, 6)), max_size=5), small, small)
def test_lp_matches_vertex_enumeration(rows, c1, c2):
    # box keeps the feasible region bounded, so an optimum is a vertex
    A = [[r[0], r[1]] for r in rows] + [[1, 0], [-1, 0], [0, 1], [0, -1]]
    b = [r[2] for r in rows] + [5, 5, 5, 5]
    res = exact.linprog([c1, c2], A_ub=A, b_ub=b)
    expected = _vertex_optimum([c1, c2], A, b)
    if expected is None:
        assert res.status == "infeasible"
    else:
        assert res.status == "optimal"
        assert res.value == expected
        assert all(sum(a * xi for a, xi in zip(row, res.x)) <= bi for row, bi in zip(A, b))


def test_lp_unbounded_and_equalities():
    assert exact.linprog([1, 0], A_ub=[[0, 1]], b_ub=[1]).status == "unbounded"
    res = exact.linprog([1, 1, 1], A_ub=[[1, 0, 0], [0, 1, 0]], b_ub=[2, 3], A_eq=[[1, 1, 1], [0, 0, 1]], b_eq=[4, 1])
    assert res.status == "optimal" and res.value == 4
    assert exact.feasible_point(A_eq=[[1, 1], [1, 1]], b_eq=[1, 2]) is None
