"""The first Weyl algebra in normal-ordered form.

A :class:`WeylOp` is a finite sum ``sum c_ij x^i d^j`` with all ``x`` to the
left of all ``d``. Products are re-normal-ordered with the Leibniz rule
``d^j x^k = sum_r C(j, r) k!/(k-r)! x^(k-r) d^(j-r)``, which is the closed
form of iterating ``d x = x d + 1``.

Besides the algebra itself this module provides its action on ``Q(sqrt2)[x]``,
the Fourier automorphism (``x -> d``, ``d -> -x``), the shear automorphism
(``d -> d + g'(x)``) and the twisted action on ``f(x) e^{g(x)}``.
"""

from __future__ import annotations

import math
from typing import Iterator, Mapping

from .poly import Poly
from .scalars import ONE, ZERO, Scalar, ScalarLike, format_scalar, parse_scalar

#: default guard on ``i + j`` for every term of a product
MAX_DEGREE = 64


class DegreeBoundError(ArithmeticError):
    pass


class WeylOp:
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int], ScalarLike] | None = None) -> None:
        clean: dict[tuple[int, int], Scalar] = {}
        for key, c in (terms or {}).items():
            c = Scalar.coerce(c)
            if not c.is_zero():
                clean[key] = c
        self.terms = clean

    @classmethod
    def const(cls, c: ScalarLike) -> WeylOp:
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, i: int, j: int, c: ScalarLike = 1) -> WeylOp:
        return cls({(i, j): c})

    @classmethod
    def from_poly(cls, p: Poly) -> WeylOp:
        """Multiplication by a polynomial in ``x``."""
        return cls({(i, 0): c for i, c in enumerate(p.coeffs)})

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(k == (0, 0) for k in self.terms)

    def constant_term(self) -> Scalar:
        return self.terms.get((0, 0), ZERO)

    def degree(self) -> int:
        return max((i + j for i, j in self.terms), default=-1)

    def items(self) -> Iterator[tuple[tuple[int, int], Scalar]]:
        return iter(sorted(self.terms.items()))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, WeylOp):
            return self.terms == other.terms
        try:
            return self.terms == WeylOp.const(Scalar.coerce(other)).terms  # type: ignore[arg-type]
        except TypeError:
            return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: WeylOp | ScalarLike) -> WeylOp:
        other = _coerce(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, ZERO) + c
        return WeylOp(out)

    __radd__ = __add__

    def __neg__(self) -> WeylOp:
        return WeylOp({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: WeylOp | ScalarLike) -> WeylOp:
        return self + (-_coerce(other))

    def __rsub__(self, other: ScalarLike) -> WeylOp:
        return _coerce(other) - self

    def __mul__(self, other: WeylOp | ScalarLike) -> WeylOp:
        if not isinstance(other, WeylOp):
            c = Scalar.coerce(other)
            return WeylOp({k: v * c for k, v in self.terms.items()})
        return weyl_mul(self, other)

    def __rmul__(self, other: ScalarLike) -> WeylOp:
        c = Scalar.coerce(other)
        return WeylOp({k: c * v for k, v in self.terms.items()})

    def __pow__(self, k: int) -> WeylOp:
        if k < 0:
            raise ValueError("negative power")
        result, base = WeylOp.const(ONE), self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __repr__(self) -> str:
        return f"WeylOp({format_weyl(self)!r})"

    def __str__(self) -> str:
        return format_weyl(self)

    def to_json(self) -> list[dict]:
        return [{"x": i, "d": j, "coeff": format_scalar(c)} for (i, j), c in self.items()]

    @classmethod
    def from_json(cls, data: list[dict]) -> WeylOp:
        return cls({(t["x"], t["d"]): parse_scalar(t["coeff"]) for t in data})


def _coerce(value: WeylOp | ScalarLike) -> WeylOp:
    return value if isinstance(value, WeylOp) else WeylOp.const(value)


X = WeylOp.monomial(1, 0)
D = WeylOp.monomial(0, 1)
IDENTITY = WeylOp.const(1)


def weyl_mul(a: WeylOp, b: WeylOp, max_degree: int | None = None) -> WeylOp:
    """Normal-ordered product ``a * b``."""
    bound = MAX_DEGREE if max_degree is None else max_degree
    out: dict[tuple[int, int], Scalar] = {}
    for (i, j), c in a.terms.items():
        for (k, l), e in b.terms.items():
            if i + j + k + l > bound:
                raise DegreeBoundError(f"product degree {i + j + k + l} exceeds bound {bound}")
            ce = c * e
            for r in range(min(j, k) + 1):
                mult = math.comb(j, r) * math.perm(k, r)
                key = (i + k - r, j + l - r)
                out[key] = out.get(key, ZERO) + ce * mult
    return WeylOp(out)


def weyl_act(op: WeylOp, f: Poly) -> Poly:
    """Apply ``op`` as a differential operator to ``f`` in ``x``."""
    if f.var != "x":
        raise ValueError("Weyl operators act on polynomials in x")
    result = Poly("x")
    derivs = [f]
    for (i, j), c in op.terms.items():
        while len(derivs) <= j:
            derivs.append(derivs[-1].derivative())
        result = result + Poly.monomial("x", i, c) * derivs[j]
    return result


def substitute(op: WeylOp, x_image: WeylOp, d_image: WeylOp) -> WeylOp:
    """Image of ``op`` under the algebra map fixed by ``x``, ``d`` images."""
    x_pows = [IDENTITY]
    d_pows = [IDENTITY]
    result = WeylOp()
    for (i, j), c in op.terms.items():
        while len(x_pows) <= i:
            x_pows.append(x_pows[-1] * x_image)
        while len(d_pows) <= j:
            d_pows.append(d_pows[-1] * d_image)
        result = result + (x_pows[i] * d_pows[j]) * c
    return result


def fourier(op: WeylOp) -> WeylOp:
    return substitute(op, D, -X)


def _check_normalized(g: Poly) -> None:
    if g.var != "x":
        raise ValueError("g must be a polynomial in x")
    if not g.coeff(0).is_zero():
        raise ValueError(f"g must satisfy g(0) = 0, got constant term {g.coeff(0)}")


def shear(op: WeylOp, g: Poly) -> WeylOp:
    """Image under ``x -> x``, ``d -> d + g'(x)``; requires ``g(0) = 0``."""
    _check_normalized(g)
    return substitute(op, X, D + WeylOp.from_poly(g.derivative()))


def act_on_exp(op: WeylOp, f: Poly, g: Poly) -> Poly:
    """The polynomial ``r`` with ``op (f e^g) = r e^g``."""
    return weyl_act(shear(op, g), f)


def poly_of_op(p: Poly, op: WeylOp) -> WeylOp:
    """``sum_k p_k op^k`` by Horner's rule."""
    acc = WeylOp()
    for c in reversed(p.coeffs):
        acc = acc * op + WeylOp.const(c)
    return acc


def format_weyl(op: WeylOp) -> str:
    if op.is_zero():
        return "0"
    pieces = []
    for (i, j), c in sorted(op.terms.items(), key=lambda kv: (-(kv[0][0] + kv[0][1]), -kv[0][0])):
        mono = []
        if i:
            mono.append("x" if i == 1 else f"x^{i}")
        if j:
            mono.append("d" if j == 1 else f"d^{j}")
        text = format_scalar(c)
        if " " in text:
            text = f"({text})"
        if not mono:
            pieces.append(text)
        elif c == 1:
            pieces.append("*".join(mono))
        elif c == -1:
            pieces.append("-" + "*".join(mono))
        else:
            pieces.append(text + "*" + "*".join(mono))
    out = pieces[0]
    for p in pieces[1:]:
        out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return out
