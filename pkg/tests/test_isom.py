from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ospexp.expmod import ExpModule
from ospexp.isom import (
    IsoVerdict,
    Reason,
    Result,
    classify,
    fourier_dual,
    intertwiner,
    verify_intertwiner_deg2,
)
from ospexp.osp import GENERATORS
from ospexp.poly import Poly, parse_poly
from ospexp.weyl import D, WeylOp, act_on_exp, poly_of_op

from conftest import rational_scalars

x = Poly.gen("x")

# hand-classified pairs: (s1, g1, s2, g2, expected reason)
PAIRS = [
    ("+", "x", "+", "x", Reason.EQUAL),
    ("-", "x^3", "-", "x^3", Reason.EQUAL),
    ("+", "x + x^2", "+", "x + x^2", Reason.EQUAL),
    ("-", "2*x", "-", "2*x", Reason.EQUAL),
    ("+", "x", "+", "2*x", Reason.SAME_SIGN_DIFFERENT_G),
    ("-", "x^2", "-", "-x^2", Reason.SAME_SIGN_DIFFERENT_G),
    ("+", "x^3", "+", "x + x^3", Reason.SAME_SIGN_DIFFERENT_G),
    ("-", "x + x^2", "-", "x^2", Reason.SAME_SIGN_DIFFERENT_G),
    ("+", "x", "+", "x^2", Reason.RANK_MISMATCH),
    ("+", "x^2", "-", "x^3", Reason.RANK_MISMATCH),
    ("-", "x^4", "+", "x", Reason.RANK_MISMATCH),
    ("-", "x + x^2", "-", "x^3", Reason.RANK_MISMATCH),
    ("+", "x", "-", "x", Reason.MIXED_SIGN_DEGREE_NOT_2),
    ("+", "x", "-", "-x", Reason.MIXED_SIGN_DEGREE_NOT_2),
    ("-", "1/2*x", "+", "2*x", Reason.MIXED_SIGN_DEGREE_NOT_2),
    ("+", "x^3", "-", "x^3", Reason.MIXED_SIGN_DEGREE_NOT_2),
    ("-", "x^3", "+", "-x^3", Reason.MIXED_SIGN_DEGREE_NOT_2),
    ("+", "x^4 + x^2", "-", "x^4", Reason.MIXED_SIGN_DEGREE_NOT_2),
    ("+", "x^2", "-", "-1/4*x^2", Reason.FOURIER_DUAL),
    ("-", "-1/4*x^2", "+", "x^2", Reason.FOURIER_DUAL),
    ("+", "x + x^2", "-", "-1/2*x - 1/4*x^2", Reason.FOURIER_DUAL),
    ("+", "2*x^2", "-", "-1/8*x^2", Reason.FOURIER_DUAL),
    ("+", "-x^2", "-", "1/4*x^2", Reason.FOURIER_DUAL),
    ("+", "3*x + 1/2*x^2", "-", "-3*x - 1/2*x^2", Reason.FOURIER_DUAL),
    ("-", "x + 1/4*x^2", "+", "2*x - x^2", Reason.FOURIER_DUAL),
    ("+", "-2*x + 4*x^2", "-", "1/4*x - 1/16*x^2", Reason.FOURIER_DUAL),
    ("+", "x^2", "-", "x^2", Reason.MIXED_SIGN_COEFFICIENT_MISMATCH),
    ("+", "x^2", "-", "1/4*x^2", Reason.MIXED_SIGN_COEFFICIENT_MISMATCH),
    ("+", "x + x^2", "-", "1/2*x - 1/4*x^2", Reason.MIXED_SIGN_COEFFICIENT_MISMATCH),
    ("-", "-1/4*x^2", "+", "-x^2", Reason.MIXED_SIGN_COEFFICIENT_MISMATCH),
    ("+", "2*x^2", "-", "-1/4*x^2", Reason.MIXED_SIGN_COEFFICIENT_MISMATCH),
    ("+", "x + x^2", "-", "-1/4*x^2", Reason.MIXED_SIGN_COEFFICIENT_MISMATCH),
    ("+", "x^2", "-", "-x - 1/4*x^2", Reason.MIXED_SIGN_COEFFICIENT_MISMATCH),
    ("-", "x - x^2", "+", "-2*x - x^2", Reason.MIXED_SIGN_COEFFICIENT_MISMATCH),
    ("+", "x", "+", "-x", Reason.SAME_SIGN_DIFFERENT_G),
    ("-", "x^4 + x^2", "-", "x^4 + x^2", Reason.EQUAL),
    ("-", "x^2", "+", "x^3", Reason.RANK_MISMATCH),
    ("+", "x + 2*x^3", "-", "x + 2*x^3", Reason.MIXED_SIGN_DEGREE_NOT_2),
    ("+", "1/3*x^2", "-", "-3/4*x^2", Reason.FOURIER_DUAL),
    ("+", "1/3*x^2", "-", "-3/4*x^2 + x", Reason.MIXED_SIGN_COEFFICIENT_MISMATCH),
]


def test_battery_size_and_coverage():
    assert len(PAIRS) == 40
    assert {p[-1] for p in PAIRS} == set(Reason)


@pytest.mark.parametrize("s1, g1, s2, g2, reason", PAIRS)
def test_classify_battery(s1, g1, s2, g2, reason):
    verdict = classify(s1, parse_poly(g1), s2, parse_poly(g2))
    assert verdict.reason is reason
    assert verdict == classify(s2, parse_poly(g2), s1, parse_poly(g1))


@pytest.mark.parametrize("s1, g1, s2, g2, reason", [p for p in PAIRS if p[-1] in (Reason.FOURIER_DUAL, Reason.MIXED_SIGN_COEFFICIENT_MISMATCH)])
def test_intertwiner_exactly_on_dual_pairs(s1, g1, s2, g2, reason):
    a, b = (g1, g2) if s1 == "+" else (g2, g1)
    assert verify_intertwiner_deg2(parse_poly(a), parse_poly(b), depth=6) == (reason is Reason.FOURIER_DUAL)


def test_fourier_dual_example():
    assert fourier_dual(parse_poly("x^2")) == parse_poly("-1/4*x^2")
    assert fourier_dual(parse_poly("x + x^2")) == parse_poly("-1/2*x - 1/4*x^2")


@settings(max_examples=50)
@given(rational_scalars, rational_scalars)
def test_fourier_dual_twice_reflects(a1, a2):
    if a2.is_zero():
        return
    a = Poly("x", [0, a1, a2])
    assert fourier_dual(fourier_dual(a)) == a.reflect()


def test_fourier_dual_requires_quadratic():
    with pytest.raises(ValueError):
        fourier_dual(parse_poly("x^3"))


def test_intertwiner_images():
    b = parse_poly("-1/4*x^2")
    # T(x e^a) = d e^b = -x/2 e^b
    assert intertwiner(b, x) == x.scale(Fraction(-1, 2))
    assert intertwiner(b, Poly.const("x", 1)) == Poly.const("x", 1)


def test_double_shear_intertwiner_fails():
    # shearing an already-twisted derivative twice counts b' two times
    a, b = parse_poly("x^2"), parse_poly("-1/4*x^2")
    twisted_d = D + WeylOp.from_poly(b.derivative())
    naive = [act_on_exp(poly_of_op(Poly.monomial("x", k), twisted_d), Poly.const("x", 1), b) for k in range(4)]
    assert naive != [intertwiner(b, Poly.monomial("x", k)) for k in range(4)]
    source, target = ExpModule(1, a), ExpModule(-1, b)
    v = x
    naive_of = lambda f: act_on_exp(poly_of_op(f, twisted_d), Poly.const("x", 1), b)
    gen = GENERATORS["Xmd"]
    assert naive_of(source.act(gen, v)) != target.act(gen, naive_of(v))


def test_verdict_json_and_text():
    v = classify("+", parse_poly("x^2"), "-", parse_poly("-1/4*x^2"))
    assert str(v) == "Isomorphic(FourierDual)"
    assert IsoVerdict.from_json(v.to_json()) == v
    with pytest.raises(ValueError):
        IsoVerdict(Result.ISOMORPHIC, Reason.RANK_MISMATCH)
