from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from ospexp.expmod import ExpModule
from ospexp.frmat import (
    FRealization,
    adjugate,
    build_realization,
    characteristic_poly,
    check_fr_relations,
    companion_poly,
    determinant,
    identity,
    intertwining_mismatches,
    mat_mul,
    twisted_conjugate,
    verify_fr,
)
from ospexp.poly import Poly, parse_poly
from ospexp.scalars import INV_SQRT2, Scalar

from conftest import BATTERY_G, SIGNS, battery, polys, rational_scalars

h = Poly.gen("h")
HALF = Fraction(1, 2)
H_SYM = sympy.Symbol("h")
LAM = sympy.Symbol("lam")


def to_sympy(p: Poly):
    expr = 0
    for k, c in enumerate(p.coeffs):
        coef = sympy.Rational(c.rat_part.numerator, c.rat_part.denominator) + sympy.sqrt(2) * sympy.Rational(
            c.sqrt2_part.numerator, c.sqrt2_part.denominator
        )
        expr += coef * H_SYM**k
    return expr


def test_rank_two_plus_matrices():
    # Xmd e^g with g = x^2: (d + 2x)/sqrt2 . 1 = sqrt2 x, and x^2 = (h - 1/2)/2 in coordinates
    F = build_realization("+", parse_poly("x^2"))
    zero, one = Poly("h"), Poly.const("h", 1)
    assert F.x_plus == [
        [zero, ((h - HALF) / 2).scale(INV_SQRT2)],
        [one.scale(INV_SQRT2), zero],
    ]
    assert F.x_minus == [
        [zero, (h + HALF).scale(INV_SQRT2)],
        [Poly.const("h", 2).scale(INV_SQRT2), zero],
    ]


def test_rank_one_minus():
    F = build_realization("-", parse_poly("x"))
    assert F.x_plus == [[Poly.const("h", 1).scale(INV_SQRT2)]]
    # Xmd maps to -x/sqrt2 and x = -(h + 1/2) in coordinates
    assert F.x_minus == [[(h + HALF).scale(INV_SQRT2)]]


@pytest.mark.parametrize("module", battery(), ids=repr)
def test_realization_intertwines(module):
    F = build_realization(module.sign, module.g)
    assert verify_fr(F.x_plus, F.x_minus)
    assert intertwining_mismatches(module, F, depth=10) == []
    report = check_fr_relations(F, max_power=3)
    assert all(report.values()), report


@pytest.mark.parametrize("g", BATTERY_G)
@pytest.mark.parametrize("s", SIGNS)
def test_characteristic_polynomial_against_sympy(g, s):
    F = build_realization(s, parse_poly(g))
    xs = F.x_plus if s == 1 else F.x_minus
    m = sympy.Matrix([[to_sympy(p) for p in row] for row in xs])
    oracle = (LAM * sympy.eye(len(xs)) - s * sympy.sqrt(2) * m).det()
    ours = sum(to_sympy(c) * LAM**k for k, c in enumerate(companion_poly(s, parse_poly(g))))
    assert sympy.expand(oracle - ours) == 0


def test_companion_poly_coefficients():
    coeffs = companion_poly("+", parse_poly("x + x^2"))
    # lambda^2 + lambda/2 - (h - 1/2)/2
    assert coeffs == [-(h - HALF) / 2, Poly.const("h", HALF), Poly.const("h", 1)]
    assert characteristic_poly("+", parse_poly("x + x^2")) == coeffs


def test_verify_fr_rejects():
    zero = [[Poly("h")]]
    assert not verify_fr(zero, zero)
    with pytest.raises(ValueError):
        FRealization(zero, zero)


def test_determinant_and_adjugate():
    W = [[h, Poly.const("h", 1)], [h * h - 1, h]]
    assert determinant(W, Poly("h")) == Poly.const("h", 1)
    assert mat_mul(W, adjugate(W)) == identity(2)


def unit_upper_triangular(n: int):
    return st.lists(polys("h", 2, rational_scalars), min_size=n * n, max_size=n * n).map(
        lambda entries: [
            [
                Poly.const("h", 1) if i == j else (entries[i * n + j] if j > i else Poly("h"))
                for j in range(n)
            ]
            for i in range(n)
        ]
    )


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(["x^2", "x + x^2", "x^3", "x + 2*x^3"]), st.sampled_from(SIGNS), st.data())
def test_twisted_conjugate_preserves_relation(g, s, data):
    F = build_realization(s, parse_poly(g))
    W = data.draw(unit_upper_triangular(F.rank))
    G = twisted_conjugate(F, W)
    assert verify_fr(G.x_plus, G.x_minus)
    assert all(check_fr_relations(G, max_power=2).values())


def test_twisted_conjugate_rejects_singular():
    F = build_realization("+", parse_poly("x^2"))
    W = [[h, Poly("h")], [Poly("h"), Poly.const("h", 1)]]
    with pytest.raises(ValueError):
        twisted_conjugate(F, W)


@pytest.mark.parametrize("g", ["x^2", "x + 2*x^3"])
def test_json_round_trip(g):
    F = build_realization("-", parse_poly(g))
    assert FRealization.from_json(F.to_json()) == F
