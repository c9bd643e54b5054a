"""Exact scalar arithmetic: rationals, binomials, and polynomials in a formal L.

Rationals are ``fractions.Fraction`` (arbitrary precision, always reduced,
positive denominator), re-exported as ``Rational``.  ``LambdaPoly`` is a
univariate polynomial in the formal symbol L with rational coefficients,
stored dense as a tuple ``(c0, c1, ...)`` with the last entry nonzero; the
empty tuple is the zero polynomial.  Keeping L formal means one symbolic
computation covers every scalar value of L at once; a concrete value can be
plugged in afterwards with :meth:`LambdaPoly.substitute`.
"""

from __future__ import annotations

import math
from fractions import Fraction

Rational = Fraction

RationalLike = Fraction | int


def binomial(n: int, k: int) -> int:
    """C(n, k) as an exact integer; 0 when k > n."""
    return math.comb(n, k)


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected a rational scalar, got {type(value).__name__}")


class LambdaPoly:
    """Polynomial in the formal scalar L over the rationals."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [_as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("LambdaPoly is immutable")

    @classmethod
    def zero(cls) -> "LambdaPoly":
        return cls()

    @classmethod
    def one(cls) -> "LambdaPoly":
        return cls((Fraction(1),))

    @classmethod
    def const(cls, value) -> "LambdaPoly":
        return cls((_as_fraction(value),))

    @classmethod
    def lam(cls, power: int = 1, coeff=1) -> "LambdaPoly":
        """coeff * L**power."""
        if power < 0:
            raise ValueError("L powers must be nonnegative")
        return cls((Fraction(0),) * power + (_as_fraction(coeff),))

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant in L")
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other) -> "LambdaPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return LambdaPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "LambdaPoly":
        return LambdaPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "LambdaPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return LambdaPoly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return LambdaPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "LambdaPoly":
        if e < 0:
            raise ValueError("negative powers are not defined")
        result = LambdaPoly.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def substitute(self, value) -> Fraction:
        """Evaluate at L = value by Horner's scheme, exactly."""
        value = _as_fraction(value)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for power in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[power]
            if c == 0:
                continue
            parts.append((c, _lambda_term(abs(c), power)))
        text = ""
        for i, (c, body) in enumerate(parts):
            if i == 0:
                text = ("-" if c < 0 else "") + body
            else:
                text += (" - " if c < 0 else " + ") + body
        return text

    def __repr__(self) -> str:
        return f"LambdaPoly({self})"


def _lambda_term(coeff: Fraction, power: int) -> str:
    lpart = "" if power == 0 else ("L" if power == 1 else f"L^{power}")
    if not lpart:
        return str(coeff)
    if coeff == 1:
        return lpart
    return f"{coeff}*{lpart}"


def _coerce(value):
    if isinstance(value, LambdaPoly):
        return value
    if isinstance(value, (Fraction, int)):
        return LambdaPoly((_as_fraction(value),))
    return NotImplemented


LAMBDA = LambdaPoly.lam()
ONE = LambdaPoly.one()
ZERO = LambdaPoly.zero()
