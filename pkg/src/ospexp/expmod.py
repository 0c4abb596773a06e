"""Exponential modules ``E_s(g)`` and their coordinates over ``Q(sqrt2)[h]``.

An element ``f(x) e^{g(x)}`` is represented by the polynomial ``f``. The
coordinate map ``psi`` sends it to the vector ``(f_0(h), ..., f_{n-1}(h))`` with
``f = sum_p f_p(h) . (x^p e^g)``, where ``h`` acts through the oscillator
image of the chosen sign.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterator, Sequence

from .osp import XD, XMD, H, OspElement, as_sign, phi, sign_symbol
from .poly import Poly, falling_binomial
from .scalars import SQRT2, Scalar
from .weyl import D, WeylOp, act_on_exp, shear, weyl_act

PsiVector = tuple[Poly, ...]

HALF = Fraction(1, 2)


def validate_g(g: Poly) -> None:
    """Reject anything but a nonconstant polynomial in ``x`` with ``g(0) = 0``."""
    if g.var != "x":
        raise ValueError(f"g must be a polynomial in x, got variable {g.var!r}")
    if g.degree < 1:
        raise ValueError("g must be nonconstant")
    if not g.coeff(0).is_zero():
        raise ValueError(f"g must have zero constant term, got {g.coeff(0)}")


def basis_vector(n: int, p: int) -> PsiVector:
    return tuple(Poly.const("h", 1 if i == p else 0) for i in range(n))


class ExpModule:
    """The module ``C[x] e^{g(x)}`` pulled back along ``phi(sign, .)``.

    Coordinates ``w_recur(k)`` are memoised per instance; share an instance
    across threads only after warming the cache or with external locking.
    """

    def __init__(self, sign: int | str, g: Poly) -> None:
        validate_g(g)
        self.sign = as_sign(sign)
        self.g = g
        self.rank = g.degree
        self._h_twisted = shear(phi(self.sign, H), g)
        self._w: list[PsiVector] = [basis_vector(self.rank, p) for p in range(self.rank)]

    def __repr__(self) -> str:
        return f"ExpModule({sign_symbol(self.sign)!r}, {self.g})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExpModule):
            return NotImplemented
        return self.sign == other.sign and self.g == other.g

    def __hash__(self) -> int:
        return hash((self.sign, self.g))

    @property
    def a(self) -> tuple[Scalar, ...]:
        """Coefficients ``a_0 = 0, a_1, ..., a_n`` of ``g``."""
        return self.g.coeffs

    def act(self, e: OspElement, f: Poly) -> Poly:
        return act_on_exp(phi(self.sign, e), f, self.g)

    def act_h(self, f: Poly) -> Poly:
        return weyl_act(self._h_twisted, f)

    def w_recur(self, k: int) -> PsiVector:
        """``psi(x^k e^g)`` from the reduction recurrence.

        For ``l >= n``::

            w_l = (s h - l + n - 1/2)/(n a_n) w_{l-n} - sum_{j<n} j a_j/(n a_n) w_{l-n+j}
        """
        n, a = self.rank, self.a
        lead = a[n] * n
        h = Poly.gen("h")
        while len(self._w) <= k:
            l = len(self._w)
            factor = (h.scale(self.sign) + (n - l - HALF)) / lead
            base = self._w[l - n]
            vec = [factor * base[p] for p in range(n)]
            for j in range(1, n):
                if a[j].is_zero():
                    continue
                c = a[j] * j / lead
                prev = self._w[l - n + j]
                vec = [vec[p] - prev[p].scale(c) for p in range(n)]
            self._w.append(tuple(vec))
        return self._w[k]

    def psi(self, f: Poly) -> PsiVector:
        out = [Poly("h")] * self.rank
        for k, c in enumerate(f.coeffs):
            if c.is_zero():
                continue
            wk = self.w_recur(k)
            out = [out[p] + wk[p].scale(c) for p in range(self.rank)]
        return tuple(out)

    def h_poly_act(self, q: Poly, f: Poly) -> Poly:
        """``q(h) . (f e^g)``, by Horner's rule in the twisted ``h`` operator."""
        acc = Poly("x")
        for c in reversed(q.coeffs):
            acc = self.act_h(acc) + f.scale(c)
        return acc

    def psi_inv(self, vec: Sequence[Poly]) -> Poly:
        if len(vec) != self.rank:
            raise ValueError(f"expected {self.rank} coordinates, got {len(vec)}")
        out = Poly("x")
        for p, q in enumerate(vec):
            out = out + self.h_poly_act(q, Poly.monomial("x", p))
        return out

    def lowering(self) -> OspElement:
        """An element acting as ``d - g'(x)``, so it differentiates ``f`` in ``f e^g``."""
        if self.sign == 1:
            head, step = XMD * SQRT2, XD * SQRT2
        else:
            head, step = XD * SQRT2, XMD * (-SQRT2)
        out = head
        for j in range(1, self.rank + 1):
            if not self.a[j].is_zero():
                out = out - (step ** (j - 1)) * (self.a[j] * j)
        target = D - WeylOp.from_poly(self.g.derivative())
        if phi(self.sign, out) != target:
            raise AssertionError("lowering element does not map to d - g'")
        return out

    def involution_report(self, depth: int = 12) -> dict[str, bool]:
        """Check ``E(f e^g) = f(-x) e^g`` as a grading operator on ``x^k``, ``k <= depth``.

        ``E`` must square to the identity and anticommute with ``x`` and the
        twisted ``d``; the last check fails exactly when ``g`` is not even.
        """
        twisted_d = D + WeylOp.from_poly(self.g.derivative())
        x = Poly.gen("x")
        squares = anti_x = anti_d = True
        for k in range(depth + 1):
            f = Poly.monomial("x", k)
            squares &= f.reflect().reflect() == f
            anti_x &= (x * f).reflect() == -(x * f.reflect())
            anti_d &= weyl_act(twisted_d, f).reflect() == -weyl_act(twisted_d, f.reflect())
        return {"E^2=id": squares, "Ex=-xE": anti_x, "Ed=-dE": anti_d}

    def is_supermodule(self, depth: int = 12) -> bool:
        even = self.g.is_even()
        if not even:
            return False
        return all(self.involution_report(depth).values())


def compositions(n: int, total: int) -> list[tuple[int, ...]]:
    """Ordered compositions of ``total`` with parts in ``1..n``, lexicographic."""
    if total <= 0:
        return []
    out: list[tuple[int, ...]] = []

    def rec(rest: int, prefix: tuple[int, ...]) -> None:
        if rest == 0:
            out.append(prefix)
            return
        for q in range(1, min(n, rest) + 1):
            rec(rest - q, prefix + (q,))

    rec(total, ())
    return out


def walk_weight(module: ExpModule, q: int, height: int) -> Poly:
    """Weight of a step of size ``q`` taken from ``height``."""
    n, a = module.rank, module.a
    lead = a[n] * n
    if q < n:
        return Poly.const("h", -(a[n - q] * (n - q)) / lead)
    return (Poly.gen("h").scale(module.sign) + (n - height - HALF)) / lead


def _walks(n: int, start: int, stop: int, last_n: bool, min_height: int | None) -> Iterator[tuple[int, ...]]:
    def rec(height: int, prefix: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        if height == stop and prefix:
            if not last_n or prefix[-1] == n:
                yield prefix
            return
        if min_height is not None and height < min_height:
            return
        for q in range(1, min(n, height - stop) + 1):
            yield from rec(height - q, prefix + (q,))

    yield from rec(start, ())


def w_walk(module: ExpModule, m: int, p: int, literal: bool = False) -> Poly:
    """``w_{m,p}`` as a weighted sum over descending walks from ``m`` to ``p``.

    Every step must start at a height ``>= n``, since the reduction only
    applies there. With ``literal=True`` the height restriction is dropped and
    the sum runs over all compositions of ``m - p`` (keeping the rule that
    walks to ``0`` end with a step of size ``n``); that variant agrees with
    the recurrence for ``n <= 2`` but not in general.
    """
    n = module.rank
    if not 0 <= p < n:
        raise ValueError(f"p must lie in 0..{n - 1}")
    if m < n:
        return Poly.const("h", 1 if m == p else 0)
    total = Poly("h")
    min_height = None if literal else n
    for walk in _walks(n, m, p, last_n=(p == 0), min_height=min_height):
        prod = Poly.const("h", 1)
        height = m
        for q in walk:
            prod = prod * walk_weight(module, q, height)
            if prod.is_zero():
                break
            height -= q
        total = total + prod
    return total


def rank_one_closed_form(sign: int | str, a: Scalar, k: int) -> Poly:
    """``k!/a^k binom(s h - 1/2, k)``."""
    alpha = Poly.gen("h").scale(as_sign(sign)) - HALF
    return falling_binomial(alpha, k).scale(Scalar(math.factorial(k)) / Scalar.coerce(a) ** k)


def psi_to_json(vec: Sequence[Poly]) -> dict:
    return {"rank": len(vec), "entries": [p.to_json() for p in vec]}


def psi_from_json(data: dict) -> PsiVector:
    entries = tuple(Poly.from_json(e) for e in data["entries"])
    if len(entries) != data["rank"]:
        raise ValueError("rank does not match number of entries")
    return entries

