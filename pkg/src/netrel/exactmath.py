"""Exact rationals, binomial coefficients and dense polynomials in the edge failure probability."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .exceptions import DomainError

Rational = Fraction
RationalLike = Union[int, Fraction, str]

_SUPERSCRIPTS = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")


def as_rational(x: RationalLike) -> Fraction:
    """Coerce ints, Fractions and decimal strings such as ``"1e-3"`` exactly.

    Floats are refused: ``0.1`` has no exact decimal meaning and would drag
    binary rounding error into the exact pipeline.
    """
    if isinstance(x, bool) or isinstance(x, float):
        raise TypeError(f"refusing inexact value {x!r}; pass a Fraction, int or decimal string")
    try:
        return Fraction(x)
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"not a rational number: {x!r}") from exc


def binom(a: int, b: int) -> int:
    """C(a, b), zero when ``b < 0`` or ``b > a``."""
    if a < 0:
        raise DomainError(f"binom: top argument must be nonnegative, got {a}")
    if b < 0 or b > a:
        return 0
    return math.comb(a, b)


class EpsPolynomial:
    """Immutable dense univariate polynomial; ``coeffs[j]`` multiplies eps**j.

    Trailing zeros are trimmed, so the zero polynomial has no coefficients.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[RationalLike] = ()):
        cs = [c if isinstance(c, Fraction) else as_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self._coeffs = tuple(cs)

    @classmethod
    def constant(cls, c: RationalLike) -> "EpsPolynomial":
        return cls([c])

    @classmethod
    def eps(cls) -> "EpsPolynomial":
        return cls([0, 1])

    @classmethod
    def one_minus_eps(cls) -> "EpsPolynomial":
        return cls([1, -1])

    @property
    def coeffs(self) -> tuple:
        return self._coeffs

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self._coeffs) - 1

    def coeff(self, j: int) -> Fraction:
        if 0 <= j < len(self._coeffs):
            return self._coeffs[j]
        return Fraction(0)

    def is_zero(self) -> bool:
        return not self._coeffs

    def __add__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        a, b = self._coeffs, other._coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for j, c in enumerate(b):
            out[j] += c
        return EpsPolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return EpsPolynomial(-c for c in self._coeffs)

    def __sub__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        return poly_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            return NotImplemented
        result = EpsPolynomial([1])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __call__(self, x: RationalLike) -> Fraction:
        return poly_eval(self, x)

    def __eq__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(self._coeffs)

    def __repr__(self):
        return f"EpsPolynomial([{', '.join(str(c) for c in self._coeffs)}])"

    def __str__(self):
        return self.format()

    def format(self, var: str = "ε") -> str:
        """Render as e.g. ``3ε² − 2ε³`` (ascending powers, unicode minus)."""
        if not self._coeffs:
            return "0"
        parts = []
        for j, c in enumerate(self._coeffs):
            if c == 0:
                continue
            mag = abs(c)
            if j == 0:
                body = str(mag)
            else:
                power = var if j == 1 else var + str(j).translate(_SUPERSCRIPTS)
                if mag == 1:
                    body = power
                elif mag.denominator == 1:
                    body = f"{mag}{power}"
                else:
                    body = f"({mag}){power}"
            if not parts:
                parts.append(("−" if c < 0 else "") + body)
            else:
                parts.append((" − " if c < 0 else " + ") + body)
        return "".join(parts)


def _lift(x) -> EpsPolynomial:
    if isinstance(x, EpsPolynomial):
        return x
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return EpsPolynomial([x])
    return NotImplemented


def poly_mul(p: EpsPolynomial, q: EpsPolynomial) -> EpsPolynomial:
    a, b = p.coeffs, q.coeffs
    if not a or not b:
        return EpsPolynomial()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return EpsPolynomial(out)


def poly_eval(p: EpsPolynomial, x: RationalLike) -> Fraction:
    """Horner evaluation at an exact point."""
    if not isinstance(x, Fraction):
        x = as_rational(x)
    acc = Fraction(0)
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


def bernstein_sum(counts: Sequence[RationalLike], n: int) -> EpsPolynomial:
    """Expand sum_j counts[j] * eps**j * (1 - eps)**(n - j) into the monomial basis."""
    if len(counts) > n + 1:
        raise DomainError(f"{len(counts)} weights for degree {n}")
    out = [Fraction(0)] * (n + 1)
    for j, w in enumerate(counts):
        if w == 0:
            continue
        w = w if isinstance(w, Fraction) else as_rational(w)
        m = n - j
        # (1 - eps)^m = sum_i C(m, i) (-1)^i eps^i
        for i in range(m + 1):
            term = w * math.comb(m, i)
            out[j + i] += -term if i & 1 else term
    return EpsPolynomial(out)
