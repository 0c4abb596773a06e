"""Words in the generators of U(osp(1|2)) and the oscillator maps into D(1).

Elements are kept as unnormalised linear combinations of words over the
alphabet ``Xd`` (x_delta), ``Xmd`` (x_{-delta}) and ``H``. No PBW reduction is
attempted: two elements are compared only through their oscillator images or
through a module action. The even root vectors are expansions,
``x_{2delta} = Xd^2`` and ``x_{-2delta} = -Xmd^2``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Callable, Iterable, TypeVar

from .scalars import INV_SQRT2, ONE, ZERO, Scalar, ScalarLike, format_scalar, parse_scalar
from .weyl import D, IDENTITY, X, WeylOp, fourier

LETTERS = ("Xd", "Xmd", "H")
Word = tuple[str, ...]
T = TypeVar("T")


def as_sign(s: int | str) -> int:
    """Normalise ``'+'``, ``'-'``, ``+1`` or ``-1`` to ``+1``/``-1``."""
    if s in ("+", 1, "+1"):
        return 1
    if s in ("-", -1, "-1"):
        return -1
    raise ValueError(f"sign must be '+' or '-', got {s!r}")


def sign_symbol(s: int | str) -> str:
    return "+" if as_sign(s) == 1 else "-"


class OspElement:
    __slots__ = ("terms",)

    def __init__(self, terms: Iterable[tuple[Word, ScalarLike]] = ()) -> None:
        merged: dict[Word, Scalar] = {}
        for word, c in terms:
            word = tuple(word)
            for letter in word:
                if letter not in LETTERS:
                    raise ValueError(f"unknown generator {letter!r}")
            merged[word] = merged.get(word, ZERO) + Scalar.coerce(c)
        self.terms: tuple[tuple[Word, Scalar], ...] = tuple(
            (w, c) for w, c in merged.items() if not c.is_zero()
        )

    @classmethod
    def scalar(cls, c: ScalarLike) -> OspElement:
        return cls([((), c)])

    def __add__(self, other: OspElement | ScalarLike) -> OspElement:
        other = _coerce(other)
        return OspElement(self.terms + other.terms)

    __radd__ = __add__

    def __neg__(self) -> OspElement:
        return OspElement((w, -c) for w, c in self.terms)

    def __sub__(self, other: OspElement | ScalarLike) -> OspElement:
        return self + (-_coerce(other))

    def __rsub__(self, other: ScalarLike) -> OspElement:
        return _coerce(other) - self

    def __mul__(self, other: OspElement | ScalarLike) -> OspElement:
        if not isinstance(other, OspElement):
            c = Scalar.coerce(other)
            return OspElement((w, a * c) for w, a in self.terms)
        return OspElement(
            (w1 + w2, c1 * c2) for w1, c1 in self.terms for w2, c2 in other.terms
        )

    def __rmul__(self, other: ScalarLike) -> OspElement:
        return self * other

    def __pow__(self, k: int) -> OspElement:
        out = OspElement.scalar(ONE)
        for _ in range(k):
            out = out * self
        return out

    def evaluate(self, images: dict[str, T], one: T) -> T:
        """Multiplicative extension of ``images`` to this element.

        ``images`` maps each letter to an element of any ring whose elements
        support ``+``, ``*`` and scaling by Scalar.
        """
        total = None
        for word, c in self.terms:
            prod = one
            for letter in word:
                prod = prod * images[letter]
            prod = prod * c
            total = prod if total is None else total + prod
        return total if total is not None else one * ZERO

    def __eq__(self, other: object) -> bool:
        if isinstance(other, OspElement):
            return dict(self.terms) == dict(other.terms)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self.terms))

    def __repr__(self) -> str:
        return f"OspElement({format_osp(self)!r})"

    def __str__(self) -> str:
        return format_osp(self)


def _coerce(value: OspElement | ScalarLike) -> OspElement:
    return value if isinstance(value, OspElement) else OspElement.scalar(value)


XD = OspElement([(("Xd",), 1)])
XMD = OspElement([(("Xmd",), 1)])
H = OspElement([(("H",), 1)])
X2D = XD * XD
XM2D = -(XMD * XMD)

HALF = Scalar(Fraction(1, 2))
QUARTER = Scalar(Fraction(1, 4))

GENERATORS = {"Xd": XD, "Xmd": XMD, "H": H}


def generator_images(s: int | str) -> dict[str, WeylOp]:
    if as_sign(s) == 1:
        return {"Xd": X * INV_SQRT2, "Xmd": D * INV_SQRT2, "H": X * D + HALF}
    return {"Xd": D * INV_SQRT2, "Xmd": X * (-INV_SQRT2), "H": -(X * D) - HALF}


def phi(s: int | str, e: OspElement) -> WeylOp:
    """Oscillator image of ``e`` in the Weyl algebra."""
    return e.evaluate(generator_images(s), IDENTITY)


def casimir(which: str, alternative: bool = False) -> OspElement:
    """The Casimir ``C`` of the even part or ``Omega`` of the whole algebra.

    ``alternative=True`` builds ``C`` as ``x_{2d} x_{-2d} - h/2 + h^2/4``.
    """
    if alternative:
        c = X2D * XM2D - H * HALF + H * H * QUARTER
    else:
        c = XM2D * X2D + H * HALF + H * H * QUARTER
    if which == "C":
        return c
    if which in ("Omega", "O", "Ω"):
        return c - (XD * XMD - XMD * XD) * QUARTER
    raise ValueError(f"unknown Casimir {which!r}")


def supercommutator(a: OspElement, b: OspElement, odd: bool) -> OspElement:
    """``ab + ba`` when both arguments are odd, ``ab - ba`` otherwise."""
    return a * b + b * a if odd else a * b - b * a


def defining_relations() -> dict[str, tuple[OspElement, OspElement]]:
    return {
        "XdXmd+XmdXd=H": (XD * XMD + XMD * XD, H),
        "HXd-XdH=Xd": (H * XD - XD * H, XD),
        "HXmd-XmdH=-Xmd": (H * XMD - XMD * H, -XMD),
    }


def bracket_table() -> dict[str, tuple[OspElement, OspElement]]:
    """Every superbracket of the root-vector basis as (lhs, rhs) pairs."""
    sc = supercommutator
    return {
        "[h,x2d]=2x2d": (sc(H, X2D, False), X2D * 2),
        "[h,xm2d]=-2xm2d": (sc(H, XM2D, False), XM2D * -2),
        "[x2d,xm2d]=h": (sc(X2D, XM2D, False), H),
        "[h,xd]=xd": (sc(H, XD, False), XD),
        "[h,xmd]=-xmd": (sc(H, XMD, False), -XMD),
        "[x2d,xmd]=-xd": (sc(X2D, XMD, False), -XD),
        "[xm2d,xd]=-xmd": (sc(XM2D, XD, False), -XMD),
        "[x2d,xd]=0": (sc(X2D, XD, False), OspElement()),
        "[xm2d,xmd]=0": (sc(XM2D, XMD, False), OspElement()),
        "[xd,xd]=2x2d": (sc(XD, XD, True), X2D * 2),
        "[xmd,xmd]=-2xm2d": (sc(XMD, XMD, True), XM2D * -2),
        "[xd,xmd]=h": (sc(XD, XMD, True), H),
    }


def check_identities(
    identities: dict[str, tuple[OspElement, OspElement]],
    realize: Callable[[OspElement], object],
) -> dict[str, bool]:
    return {name: realize(lhs) == realize(rhs) for name, (lhs, rhs) in identities.items()}


def check_relations(s: int | str) -> dict[str, bool]:
    """Pass/fail per relation and bracket identity under ``phi(s, .)``.

    For ``s = -`` the report also contains ``Phi-=theta*Phi+`` checks on the
    three generators.
    """
    sign = as_sign(s)
    report = check_identities({**defining_relations(), **bracket_table()}, lambda e: phi(sign, e))
    if sign == -1:
        for name, gen in GENERATORS.items():
            report[f"phi-({name})=fourier(phi+({name}))"] = phi(-1, gen) == fourier(phi(1, gen))
    return report


def format_osp(e: OspElement) -> str:
    if not e.terms:
        return "0"
    parts = []
    for word, c in e.terms:
        body = " ".join(word)
        text = format_scalar(c)
        if not body:
            parts.append(text)
        elif c == 1:
            parts.append(body)
        elif c == -1:
            parts.append("-" + body)
        else:
            parts.append(f"({text}) {body}" if " " in text else f"{text} {body}")
    out = parts[0]
    for p in parts[1:]:
        out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return out


def parse_osp(text: str) -> OspElement:
    """Parse forms such as ``"1/2*s Xd Xmd - H + 3/4"``.

    Terms are separated by ``+``/``-``; a term is an optional scalar prefix
    (``p/q``, ``s``, ``p/q*s`` or a parenthesised scalar) followed by a
    space-separated word.
    """
    stripped = text.strip()
    if not stripped:
        raise ValueError("empty element")
    chunks = re.findall(r"\s*([+-]?)\s*((?:\([^)]*\)|[^+-])+)", stripped)
    if "".join(s + b for s, b in chunks).replace(" ", "") != stripped.replace(" ", ""):
        raise ValueError(f"malformed element {text!r}")
    terms = []
    for sign, body in chunks:
        coef = Scalar(-1 if sign == "-" else 1)
        paren = re.match(r"\(([^)]*)\)\s*\*?\s*(.*)$", body.strip())
        if paren:
            coef = coef * parse_scalar(paren.group(1))
            body = paren.group(2)
        word = []
        for tok in body.replace("*", " ").split():
            if tok in LETTERS:
                word.append(tok)
            elif word:
                raise ValueError(f"scalar {tok!r} after generator in {body!r}")
            else:
                coef = coef * parse_scalar(tok)
        terms.append((tuple(word), coef))
    return OspElement(terms)
