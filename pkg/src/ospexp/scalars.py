"""Exact arithmetic in the quadratic field Q(sqrt 2)."""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational
from typing import Union

ScalarLike = Union["Scalar", int, Fraction]

_TERM = re.compile(r"^([+-]?)(\d+(?:/\d+)?)?(\*?s)?$")


class Scalar:
    """An element ``a + b*sqrt(2)`` with ``a``, ``b`` exact rationals.

    Instances are immutable. Integers and :class:`fractions.Fraction` are
    accepted wherever a Scalar is expected.
    """

    __slots__ = ("_a", "_b")

    def __init__(self, a: int | Fraction = 0, b: int | Fraction = 0) -> None:
        self._a = Fraction(a)
        self._b = Fraction(b)

    @property
    def rat_part(self) -> Fraction:
        return self._a

    @property
    def sqrt2_part(self) -> Fraction:
        return self._b

    @classmethod
    def coerce(cls, value: ScalarLike) -> Scalar:
        if isinstance(value, Scalar):
            return value
        if isinstance(value, (int, Rational)):
            return cls(Fraction(value))
        raise TypeError(f"cannot coerce {type(value).__name__} to Scalar")

    def is_zero(self) -> bool:
        return not self._a and not self._b

    def is_rational(self) -> bool:
        return not self._b

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Scalar):
            return self._a == other._a and self._b == other._b
        if isinstance(other, (int, Rational)):
            return not self._b and self._a == other
        return NotImplemented

    def __hash__(self) -> int:
        if not self._b:
            return hash(self._a)
        return hash((self._a, self._b))

    def __add__(self, other: ScalarLike) -> Scalar:
        if isinstance(other, Scalar):
            return Scalar(self._a + other._a, self._b + other._b)
        if isinstance(other, (int, Rational)):
            return Scalar(self._a + other, self._b)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self) -> Scalar:
        return Scalar(-self._a, -self._b)

    def __sub__(self, other: ScalarLike) -> Scalar:
        if isinstance(other, (Scalar, int, Rational)):
            return self + (-Scalar.coerce(other))
        return NotImplemented

    def __rsub__(self, other: ScalarLike) -> Scalar:
        if isinstance(other, (int, Rational)):
            return Scalar.coerce(other) - self
        return NotImplemented

    def __mul__(self, other: ScalarLike) -> Scalar:
        if isinstance(other, Scalar):
            a, b, c, d = self._a, self._b, other._a, other._b
            if not b and not d:
                return Scalar(a * c)
            return Scalar(a * c + 2 * b * d, a * d + b * c)
        if isinstance(other, (int, Rational)):
            return Scalar(self._a * other, self._b * other)
        return NotImplemented

    __rmul__ = __mul__

    def conjugate(self) -> Scalar:
        """The Galois conjugate ``a - b*sqrt(2)``."""
        return Scalar(self._a, -self._b)

    def norm(self) -> Fraction:
        return self._a * self._a - 2 * self._b * self._b

    def inverse(self) -> Scalar:
        if self.is_zero():
            raise ZeroDivisionError("Scalar division by zero")
        nrm = self.norm()
        return Scalar(self._a / nrm, -self._b / nrm)

    def __truediv__(self, other: ScalarLike) -> Scalar:
        if isinstance(other, (Scalar, int, Rational)):
            return self * Scalar.coerce(other).inverse()
        return NotImplemented

    def __rtruediv__(self, other: ScalarLike) -> Scalar:
        if isinstance(other, (int, Rational)):
            return Scalar.coerce(other) * self.inverse()
        return NotImplemented

    def __pow__(self, k: int) -> Scalar:
        if k < 0:
            return self.inverse() ** (-k)
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __repr__(self) -> str:
        return f"Scalar({self._a!r}, {self._b!r})"

    def __str__(self) -> str:
        return format_scalar(self)

    def latex(self) -> str:
        def frac(q: Fraction) -> str:
            q = abs(q)
            if q.denominator == 1:
                return str(q.numerator)
            return rf"\frac{{{q.numerator}}}{{{q.denominator}}}"

        parts = []
        if self._a or not self._b:
            parts.append(("-" if self._a < 0 else "") + frac(self._a))
        if self._b:
            mag = "" if abs(self._b) == 1 else frac(self._b)
            sign = "-" if self._b < 0 else ("+" if parts else "")
            parts.append(f"{sign}{mag}\\sqrt{{2}}")
        return "".join(parts)


ZERO = Scalar(0)
ONE = Scalar(1)
SQRT2 = Scalar(0, 1)
INV_SQRT2 = Scalar(0, Fraction(1, 2))


def format_scalar(x: Scalar) -> str:
    """Text form such as ``3/4 + 1/2*s`` where ``s`` stands for sqrt(2)."""
    a, b = x.rat_part, x.sqrt2_part
    if not b:
        return str(a)
    tail = "s" if abs(b) == 1 else f"{abs(b)}*s"
    if not a:
        return tail if b > 0 else f"-{tail}"
    return f"{a} {'+' if b > 0 else '-'} {tail}"


def parse_scalar(text: str) -> Scalar:
    """Inverse of :func:`format_scalar`; whitespace is ignored.

    Accepts sums of terms ``p/q``, ``p/q*s`` and ``s`` (with optional signs).
    """
    compact = re.sub(r"\s+", "", text)
    if not compact:
        raise ValueError("empty scalar")
    pieces = re.findall(r"[+-]?[^+-]+", compact)
    if "".join(pieces) != compact:
        raise ValueError(f"malformed scalar {text!r}")
    total = ZERO
    for piece in pieces:
        m = _TERM.match(piece)
        if m is None or (m.group(2) is None and m.group(3) is None):
            raise ValueError(f"malformed scalar term {piece!r} in {text!r}")
        sign, num, root = m.groups()
        if root == "*s" and num is None:
            raise ValueError(f"malformed scalar term {piece!r} in {text!r}")
        value = Fraction(num) if num is not None else Fraction(1)
        if sign == "-":
            value = -value
        total = total + (Scalar(0, value) if root else Scalar(value))
    return total
