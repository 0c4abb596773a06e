"""Dense univariate polynomials over Q(sqrt 2).

Each polynomial carries a variable tag (``h``, ``x``, ``t`` or ``lambda``);
mixing tags in arithmetic raises :class:`VariableMismatch`.
"""

from __future__ import annotations

import math
import re
from typing import Iterable

from .scalars import ONE, ZERO, Scalar, ScalarLike, format_scalar, parse_scalar

VARIABLES = ("h", "x", "t", "lambda")


class VariableMismatch(ValueError):
    pass


class PolyParseError(ValueError):
    """Raised by :func:`parse_poly`; ``token`` names the offending input."""

    def __init__(self, message: str, token: str) -> None:
        super().__init__(message)
        self.token = token


def _trim(coeffs: list[Scalar]) -> tuple[Scalar, ...]:
    while coeffs and coeffs[-1].is_zero():
        coeffs.pop()
    return tuple(coeffs)


class Poly:
    __slots__ = ("var", "coeffs")

    def __init__(self, var: str, coeffs: Iterable[ScalarLike] = ()) -> None:
        if var not in VARIABLES:
            raise ValueError(f"unknown variable tag {var!r}")
        self.var = var
        self.coeffs = _trim([Scalar.coerce(c) for c in coeffs])

    @classmethod
    def const(cls, var: str, c: ScalarLike) -> Poly:
        return cls(var, [c])

    @classmethod
    def monomial(cls, var: str, k: int, c: ScalarLike = 1) -> Poly:
        return cls(var, [ZERO] * k + [Scalar.coerce(c)])

    @classmethod
    def gen(cls, var: str) -> Poly:
        return cls.monomial(var, 1)

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def lc(self) -> Scalar:
        return self.coeffs[-1] if self.coeffs else ZERO

    def coeff(self, k: int) -> Scalar:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else ZERO

    def _other(self, other: object) -> Poly | None:
        if isinstance(other, Poly):
            if other.var != self.var:
                raise VariableMismatch(f"{self.var!r} vs {other.var!r}")
            return other
        try:
            return Poly.const(self.var, Scalar.coerce(other))  # type: ignore[arg-type]
        except TypeError:
            return None

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Poly):
            return self.var == other.var and self.coeffs == other.coeffs
        try:
            c = Scalar.coerce(other)  # type: ignore[arg-type]
        except TypeError:
            return NotImplemented
        return self.coeffs == Poly.const(self.var, c).coeffs

    def __hash__(self) -> int:
        return hash((self.var, self.coeffs))

    def __add__(self, other: object) -> Poly:
        q = self._other(other)
        if q is None:
            return NotImplemented
        n = max(len(self.coeffs), len(q.coeffs))
        return Poly(self.var, [self.coeff(i) + q.coeff(i) for i in range(n)])

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly(self.var, [-c for c in self.coeffs])

    def __sub__(self, other: object) -> Poly:
        q = self._other(other)
        if q is None:
            return NotImplemented
        return self + (-q)

    def __rsub__(self, other: object) -> Poly:
        q = self._other(other)
        if q is None:
            return NotImplemented
        return q - self

    def __mul__(self, other: object) -> Poly:
        q = self._other(other)
        if q is None:
            return NotImplemented
        if not self.coeffs or not q.coeffs:
            return Poly(self.var)
        if len(q.coeffs) == 1:
            return self.scale(q.coeffs[0])
        out = [ZERO] * (len(self.coeffs) + len(q.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(q.coeffs):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return Poly(self.var, out)

    __rmul__ = __mul__

    def scale(self, c: ScalarLike) -> Poly:
        c = Scalar.coerce(c)
        return Poly(self.var, [a * c for a in self.coeffs])

    def __truediv__(self, c: ScalarLike) -> Poly:
        # division by scalars only; polynomial division is not needed
        return self.scale(Scalar.coerce(c).inverse())

    def __pow__(self, k: int) -> Poly:
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result, base = Poly.const(self.var, ONE), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __call__(self, value):
        """Horner evaluation at a Scalar or substitution of another Poly."""
        if isinstance(value, Poly):
            acc = Poly(value.var)
        else:
            value = Scalar.coerce(value)
            acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def compose(self, other: Poly) -> Poly:
        return self(other)

    def with_var(self, var: str) -> Poly:
        return Poly(var, self.coeffs)

    def shift(self, k: int) -> Poly:
        """Return ``f(v - k)``; ``shift(f, 1)`` is sigma and ``shift(f, -1)`` its inverse."""
        if k == 0 or self.degree < 1:
            return self
        # Taylor shift: coefficient of v^j in sum_i c_i (v - k)^i
        d = self.degree
        out = [ZERO] * (d + 1)
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            for j in range(i + 1):
                out[j] = out[j] + c * (math.comb(i, j) * (-k) ** (i - j))
        return Poly(self.var, out)

    def derivative(self) -> Poly:
        return Poly(self.var, [c * i for i, c in enumerate(self.coeffs)][1:])

    def is_even(self) -> bool:
        return all(c.is_zero() for c in self.coeffs[1::2])

    def reflect(self) -> Poly:
        """``f(-v)``."""
        return Poly(self.var, [c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs)])

    def __repr__(self) -> str:
        return f"Poly({self.var!r}, {format_poly(self)!r})"

    def __str__(self) -> str:
        return format_poly(self)

    def to_json(self) -> dict:
        return {"var": self.var, "coeffs": [format_scalar(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> Poly:
        return cls(data["var"], [parse_scalar(c) for c in data["coeffs"]])

    def latex(self) -> str:
        if not self.coeffs:
            return "0"
        sym = r"\lambda" if self.var == "lambda" else self.var
        parts: list[str] = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c.is_zero():
                continue
            body = c.latex()
            mono = "" if k == 0 else (sym if k == 1 else f"{sym}^{{{k}}}")
            if mono and c == 1:
                body = ""
            elif mono and c == -1:
                body = "-"
            elif mono and not c.is_rational() and c.rat_part:
                body = f"({body})"
            piece = body + mono
            if parts and not piece.startswith("-"):
                piece = "+" + piece
            parts.append(piece)
        return "".join(parts)


def falling_binomial(alpha: Poly, k: int) -> Poly:
    """``alpha (alpha - 1) ... (alpha - k + 1) / k!`` as a polynomial."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    out = Poly.const(alpha.var, ONE)
    for i in range(k):
        out = out * (alpha - i)
    return out / math.factorial(k)


def format_poly(p: Poly) -> str:
    if not p.coeffs:
        return "0"
    terms = []
    for k, c in enumerate(p.coeffs):
        if c.is_zero():
            continue
        text = format_scalar(c)
        if " " in text:
            text = f"({text})"
        if k == 0:
            terms.append(text)
            continue
        mono = p.var if k == 1 else f"{p.var}^{k}"
        if c == 1:
            terms.append(mono)
        elif c == -1:
            terms.append(f"-{mono}")
        else:
            terms.append(f"{text}*{mono}")
    out = terms[0]
    for t in terms[1:]:
        out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
    return out


_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_]+)|(\^)|(\*)|([+-])|(\()|(\)))")


def _tokenize(text: str) -> list[str]:
    tokens, pos = [], 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            bad = text[pos:].strip().split()[0] if text[pos:].strip() else text[pos:]
            raise PolyParseError(f"unexpected token {bad[:1]!r} at position {pos}", bad[:1])
        tokens.append(m.group(0).strip())
        pos = m.end()
    return [t for t in tokens if t]


def parse_poly(text: str, var: str = "x") -> Poly:
    """Parse sums of ``coef*var^k`` terms.

    ``coef`` is an integer or ``p/q``, optionally multiplied by ``s`` (sqrt 2)
    or a parenthesised scalar such as ``(1 + s)``. Whitespace is ignored.

    >>> str(parse_poly("1/2*x + 3*x^2"))
    '1/2*x + 3*x^2'
    """
    tokens = _tokenize(text)
    if not tokens:
        raise PolyParseError("empty polynomial", "")
    pos = 0
    coeffs: dict[int, Scalar] = {}

    def peek() -> str | None:
        return tokens[pos] if pos < len(tokens) else None

    def take() -> str:
        nonlocal pos
        tok = tokens[pos]
        pos += 1
        return tok

    first = True
    while pos < len(tokens):
        sign = 1
        tok = peek()
        if tok in ("+", "-"):
            sign = -1 if take() == "-" else 1
        elif not first:
            raise PolyParseError(f"expected '+' or '-' before {tok!r}", tok)
        first = False
        coef = Scalar(sign)
        power = 0
        factors = 0
        while True:
            tok = peek()
            if tok is None:
                break
            if re.fullmatch(r"\d+(?:/\d+)?", tok):
                take()
                coef = coef * parse_scalar(tok)
            elif tok == "s":
                take()
                coef = coef * Scalar(0, 1)
            elif tok == "(":
                take()
                inner = []
                while peek() not in (")", None):
                    inner.append(take())
                if peek() is None:
                    raise PolyParseError("unbalanced parenthesis", "(")
                take()
                try:
                    coef = coef * parse_scalar("".join(inner))
                except ValueError:
                    raise PolyParseError(f"bad scalar {''.join(inner)!r}", "".join(inner)) from None
            elif tok == var:
                take()
                k = 1
                if peek() == "^":
                    take()
                    nxt = peek()
                    if nxt is None or not nxt.isdigit():
                        raise PolyParseError(f"expected integer exponent after '^', got {nxt!r}", nxt or "^")
                    k = int(take())
                power += k
            else:
                raise PolyParseError(f"unexpected token {tok!r}", tok)
            factors += 1
            if peek() == "*":
                take()
                if peek() is None or peek() in ("+", "-", "*"):
                    raise PolyParseError("dangling '*'", "*")
                continue
            if peek() in ("+", "-", None):
                break
            nxt = peek()
            raise PolyParseError(f"unexpected token {nxt!r}", nxt)
        if factors == 0:
            raise PolyParseError("missing term", tok or "")
        coeffs[power] = coeffs.get(power, Scalar(0)) + coef
    deg = max(coeffs)
    return Poly(var, [coeffs.get(i, Scalar(0)) for i in range(deg + 1)])

