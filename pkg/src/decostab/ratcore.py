"""Exact rational scalars, vectors and lexicographically ordered polynomials.

Rationals are :class:`fractions.Fraction`; vectors are plain tuples of them.
Nothing in here touches floating point.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Fraction
RatVector = tuple  # tuple[Fraction, ...]
Scalar = Union[int, Fraction]


class DimensionError(ValueError):
    """Raised when vectors or polynomials of incompatible shape are combined."""


class Ordering(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def rat(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are refused on purpose.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot make an exact rational from {type(x).__name__}")


def fmt_rat(x: Scalar) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def ratvec(xs: Iterable) -> tuple:
    return tuple(rat(x) for x in xs)


def dot(u: Sequence, v: Sequence) -> Fraction:
    if len(u) != len(v):
        raise DimensionError(f"length mismatch: {len(u)} vs {len(v)}")
    return sum((Fraction(a) * b for a, b in zip(u, v)), Fraction(0))


def inner_and_norm(lam: Sequence, chi: Sequence) -> tuple[Fraction, Fraction]:
    """Return ``(<lam, chi>, |lam|^2)``.

    The norm is kept squared so the result stays rational.
    """
    return dot(lam, chi), dot(lam, lam)


def compare_ratios(mu1: Fraction, n1: Fraction, mu2: Fraction, n2: Fraction) -> Ordering:
    """Compare ``mu1/sqrt(n1)`` with ``mu2/sqrt(n2)`` without square roots (n1, n2 > 0)."""
    if n1 <= 0 or n2 <= 0:
        raise ValueError("squared norms must be positive")
    s1 = (mu1 > 0) - (mu1 < 0)
    s2 = (mu2 > 0) - (mu2 < 0)
    if s1 != s2:
        return Ordering.GREATER if s1 > s2 else Ordering.LESS
    if s1 == 0:
        return Ordering.EQUAL
    lhs = mu1 * mu1 * n2
    rhs = mu2 * mu2 * n1
    if lhs == rhs:
        return Ordering.EQUAL
    # same sign: larger magnitude wins for positives, loses for negatives
    bigger = lhs > rhs
    if s1 > 0:
        return Ordering.GREATER if bigger else Ordering.LESS
    return Ordering.LESS if bigger else Ordering.GREATER


class RatPolynomial:
    """Polynomial in one variable with rational coefficients.

    Coefficients are stored densely in ascending degree with no trailing
    zeros.  Comparison operators use the lexicographic order that reads the
    top-degree coefficient first, so ``2x - 100 > x + 100``.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self._coeffs = tuple(cs)

    @classmethod
    def constant(cls, c) -> "RatPolynomial":
        return cls([c])

    @classmethod
    def monomial(cls, c, degree: int) -> "RatPolynomial":
        return cls([0] * degree + [c])

    @property
    def coeffs(self) -> tuple:
        return self._coeffs

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial reports -1, below every real degree."""
        return len(self._coeffs) - 1

    def is_zero(self) -> bool:
        return not self._coeffs

    def coeff(self, k: int) -> Fraction:
        if 0 <= k < len(self._coeffs):
            return self._coeffs[k]
        return Fraction(0)

    @property
    def leading(self) -> Fraction:
        return self._coeffs[-1] if self._coeffs else Fraction(0)

    def __call__(self, x) -> Fraction:
        acc = Fraction(0)
        x = rat(x)
        for c in reversed(self._coeffs):
            acc = acc * x + c
        return acc

    @staticmethod
    def _lift(other) -> "RatPolynomial":
        if isinstance(other, RatPolynomial):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return RatPolynomial([other])
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        n = max(len(self._coeffs), len(other._coeffs))
        return RatPolynomial(self.coeff(k) + other.coeff(k) for k in range(n))

    __radd__ = __add__

    def __neg__(self):
        return RatPolynomial(-c for c in self._coeffs)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return RatPolynomial(c * other for c in self._coeffs)
        if not isinstance(other, RatPolynomial):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return RatPolynomial()
        out = [Fraction(0)] * (len(self._coeffs) + len(other._coeffs) - 1)
        for i, a in enumerate(self._coeffs):
            for j, b in enumerate(other._coeffs):
                out[i + j] += a * b
        return RatPolynomial(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if other == 0:
                raise ZeroDivisionError("polynomial divided by zero")
            return RatPolynomial(c / other for c in self._coeffs)
        return NotImplemented

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self._coeffs == other._coeffs

    def __hash__(self):
        # constants equal their scalar value, so they must hash like it too
        if len(self._coeffs) <= 1:
            return hash(self._coeffs[0] if self._coeffs else Fraction(0))
        return hash(self._coeffs)

    def __lt__(self, other):
        return lex_compare(self, self._lift(other)) == Ordering.LESS

    def __le__(self, other):
        return lex_compare(self, self._lift(other)) != Ordering.GREATER

    def __gt__(self, other):
        return lex_compare(self, self._lift(other)) == Ordering.GREATER

    def __ge__(self, other):
        return lex_compare(self, self._lift(other)) != Ordering.LESS

    def sign(self) -> int:
        """Sign in the lex order: the sign of the leading coefficient."""
        lead = self.leading
        return (lead > 0) - (lead < 0)

    def to_json(self) -> list[str]:
        return [fmt_rat(c) for c in self._coeffs]

    @classmethod
    def from_json(cls, data) -> "RatPolynomial":
        if isinstance(data, (list, tuple)):
            return cls(data)
        return cls([data])

    def __repr__(self):
        if self.is_zero():
            return "RatPolynomial(0)"
        terms = []
        for k in range(len(self._coeffs) - 1, -1, -1):
            c = self._coeffs[k]
            if c == 0:
                continue
            if k == 0:
                terms.append(fmt_rat(c))
            elif k == 1:
                terms.append(f"{fmt_rat(c)}*x")
            else:
                terms.append(f"{fmt_rat(c)}*x^{k}")
        return "RatPolynomial(" + " + ".join(terms) + ")"


def lex_compare(p: RatPolynomial, q: RatPolynomial) -> Ordering:
    """Lexicographic comparison, top-degree coefficient first."""
    n = max(len(p.coeffs), len(q.coeffs))
    for k in range(n - 1, -1, -1):
        a, b = p.coeff(k), q.coeff(k)
        if a != b:
            return Ordering.GREATER if a > b else Ordering.LESS
    return Ordering.EQUAL
