"""Truncated generating function ``F_s(t; h) = psi(e^{tx} e^g)`` and its ODE.

``coeffs[m]`` is the ``t^m`` coefficient ``psi(x^m e^g) / m!``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .expmod import ExpModule, PsiVector
from .poly import Poly, falling_binomial
from .scalars import Scalar, ScalarLike


@dataclass(frozen=True)
class TruncatedSeries:
    order: int
    coeffs: tuple[PsiVector, ...]

    def __post_init__(self) -> None:
        if len(self.coeffs) != self.order + 1:
            raise ValueError("series must carry order + 1 coefficients")

    def derivative_coeff(self, j: int, m: int) -> PsiVector:
        """``t^m`` coefficient of ``d^j F / dt^j``."""
        factor = math.factorial(m + j) // math.factorial(m)
        return tuple(p.scale(factor) for p in self.coeffs[m + j])

    def column(self, j: int) -> list[Poly]:
        """The ``j``-th fundamental solution ``F_{s,j}`` as its ``t``-coefficients."""
        return [vec[j] for vec in self.coeffs]

    def is_zero(self) -> bool:
        return all(p.is_zero() for vec in self.coeffs for p in vec)


def gen_series(module: ExpModule, order: int) -> TruncatedSeries:
    if order < module.rank:
        raise ValueError(f"order must be at least the rank {module.rank}")
    coeffs = tuple(
        tuple(p / math.factorial(m) for p in module.w_recur(m)) for m in range(order + 1)
    )
    return TruncatedSeries(order, coeffs)


def ode_residual(module: ExpModule, order: int) -> TruncatedSeries:
    """Left side of

    ``n a_n F^(n) + sum_{j<n} j a_j F^(j) + t F' + (1/2 - s h) F``

    applied to ``gen_series(module, order)``, kept through ``t^(order - n)``.
    """
    n = module.rank
    if order < n + 1:
        raise ValueError(f"order must be at least {n + 1}")
    series = gen_series(module, order)
    a = module.a
    constant = Poly("h", [Fraction(1, 2), -module.sign])
    out = []
    for m in range(order - n + 1):
        vec = [p.scale(a[n] * n) for p in series.derivative_coeff(n, m)]
        for j in range(1, n):
            if a[j].is_zero():
                continue
            dj = series.derivative_coeff(j, m)
            vec = [v + d.scale(a[j] * j) for v, d in zip(vec, dj)]
        # t F' only shifts the index: its t^m coefficient is m * c_m
        cm = series.coeffs[m]
        vec = [v + c.scale(m) + constant * c for v, c in zip(vec, cm)]
        out.append(tuple(vec))
    return TruncatedSeries(order - n, tuple(out))


def rank_one_series(sign: int, a: ScalarLike, order: int) -> list[Poly]:
    """Coefficients of ``(1 + t/a)^(s h - 1/2)`` by the binomial series."""
    alpha = Poly("h", [Fraction(-1, 2), sign])
    a = Scalar.coerce(a)
    return [falling_binomial(alpha, k) / a**k for k in range(order + 1)]
