"""Isomorphism classes of exponential modules and the degree-2 intertwiner."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .expmod import ExpModule, validate_g
from .osp import GENERATORS, as_sign
from .poly import Poly
from .scalars import Scalar
from .weyl import D, WeylOp, poly_of_op, weyl_act


class Result(enum.Enum):
    ISOMORPHIC = "Isomorphic"
    NOT_ISOMORPHIC = "NotIsomorphic"


class Reason(enum.Enum):
    RANK_MISMATCH = "RankMismatch"
    SAME_SIGN_DIFFERENT_G = "SameSignDifferentG"
    MIXED_SIGN_DEGREE_NOT_2 = "MixedSignDegreeNot2"
    MIXED_SIGN_COEFFICIENT_MISMATCH = "MixedSignCoefficientMismatch"
    EQUAL = "Equal"
    FOURIER_DUAL = "FourierDual"


_POSITIVE = {Reason.EQUAL, Reason.FOURIER_DUAL}


@dataclass(frozen=True)
class IsoVerdict:
    result: Result
    reason: Reason

    def __post_init__(self) -> None:
        if (self.result is Result.ISOMORPHIC) != (self.reason in _POSITIVE):
            raise ValueError(f"reason {self.reason.value} contradicts {self.result.value}")

    @property
    def isomorphic(self) -> bool:
        return self.result is Result.ISOMORPHIC

    def __str__(self) -> str:
        return f"{self.result.value}({self.reason.value})"

    def to_json(self) -> dict:
        return {"result": self.result.value, "reason": self.reason.value}

    @classmethod
    def from_json(cls, data: dict) -> IsoVerdict:
        return cls(Result(data["result"]), Reason(data["reason"]))


def fourier_dual(a: Poly) -> Poly:
    """``b`` with ``b_2 = -1/(4 a_2)`` and ``b_1 = -a_1/(2 a_2)``.

    Applying the map twice gives ``a(-x)``, not ``a``.
    """
    validate_g(a)
    if a.degree != 2:
        raise ValueError("the Fourier-dual exponent is defined for quadratic g only")
    a1, a2 = a.coeff(1), a.coeff(2)
    return Poly("x", [0, -a1 / (a2 * 2), Scalar(-1) / (a2 * 4)])


def classify(s1: int | str, g1: Poly, s2: int | str, g2: Poly) -> IsoVerdict:
    validate_g(g1)
    validate_g(g2)
    s1, s2 = as_sign(s1), as_sign(s2)
    if g1.degree != g2.degree:
        return IsoVerdict(Result.NOT_ISOMORPHIC, Reason.RANK_MISMATCH)
    if s1 == s2:
        if g1 == g2:
            return IsoVerdict(Result.ISOMORPHIC, Reason.EQUAL)
        return IsoVerdict(Result.NOT_ISOMORPHIC, Reason.SAME_SIGN_DIFFERENT_G)
    if g1.degree != 2:
        return IsoVerdict(Result.NOT_ISOMORPHIC, Reason.MIXED_SIGN_DEGREE_NOT_2)
    plus, minus = (g1, g2) if s1 == 1 else (g2, g1)
    if fourier_dual(plus) == minus:
        return IsoVerdict(Result.ISOMORPHIC, Reason.FOURIER_DUAL)
    return IsoVerdict(Result.NOT_ISOMORPHIC, Reason.MIXED_SIGN_COEFFICIENT_MISMATCH)


def intertwiner(b: Poly, f: Poly) -> Poly:
    """``T(f e^a)`` in ``E_-(b)``: the operator ``f(d)`` applied to ``e^b``.

    On the polynomial model of ``E(b)``, ``d`` acts as ``d + b'``, which is
    the operator ``f(d + b'(x))`` applied to ``1``.
    """
    twisted_d = D + WeylOp.from_poly(b.derivative())
    return weyl_act(poly_of_op(f, twisted_d), Poly.const("x", 1))


def intertwiner_images(b: Poly, depth: int) -> list[Poly]:
    return [intertwiner(b, Poly.monomial("x", k)) for k in range(depth + 1)]


def verify_intertwiner_deg2(a: Poly, b: Poly, depth: int = 8) -> bool:
    """Check that ``T`` commutes with ``x_delta``, ``x_{-delta}`` and ``h`` on
    ``x^k e^a`` for ``k <= depth``, mapping ``E_+(a)`` to ``E_-(b)``."""
    if a.degree != 2 or b.degree != 2:
        raise ValueError("both exponents must be quadratic")
    source, target = ExpModule(1, a), ExpModule(-1, b)
    for k in range(depth + 1):
        v = Poly.monomial("x", k)
        tv = intertwiner(b, v)
        for gen in GENERATORS.values():
            if intertwiner(b, source.act(gen, v)) != target.act(gen, tv):
                return False
    return True
