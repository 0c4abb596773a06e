"""Rank-n realisations ``F(X+, X-)`` by matrices over ``Q(sqrt2)[h]``.

On ``C[h]^n`` the generators act by ``x_delta . f = X+(h) f(h-1)``,
``x_{-delta} . f = X-(h) f(h+1)`` and ``h . f = h f``. Such a pair defines a
module exactly when ``X+(h) X-(h-1) + X-(h) X+(h+1) = h I``.

Matrices are plain lists of rows of :class:`~ospexp.poly.Poly` in ``h``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, TypeVar

from .expmod import ExpModule, validate_g
from .osp import GENERATORS, OspElement, as_sign, bracket_table, check_identities, defining_relations
from .poly import Poly
from .scalars import INV_SQRT2, SQRT2, Scalar, ScalarLike

Matrix = list[list[Poly]]
R = TypeVar("R")


def zeros(n: int) -> Matrix:
    return [[Poly("h") for _ in range(n)] for _ in range(n)]


def identity(n: int, c: ScalarLike = 1) -> Matrix:
    return [[Poly.const("h", c if i == j else 0) for j in range(n)] for i in range(n)]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n, m, k = len(a), len(b), len(b[0]) if b else 0
    if any(len(row) != m for row in a):
        raise ValueError("dimension mismatch in matrix product")
    out = []
    for i in range(n):
        row = []
        for j in range(k):
            acc = Poly("h")
            for t in range(m):
                if not a[i][t].is_zero() and not b[t][j].is_zero():
                    acc = acc + a[i][t] * b[t][j]
            row.append(acc)
        out.append(row)
    return out


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    if len(a) != len(b) or any(len(r) != len(s) for r, s in zip(a, b)):
        raise ValueError("dimension mismatch in matrix sum")
    return [[x + y for x, y in zip(r, s)] for r, s in zip(a, b)]


def mat_scale(a: Matrix, c: ScalarLike) -> Matrix:
    return [[x.scale(c) for x in row] for row in a]


def mat_shift(a: Matrix, k: int) -> Matrix:
    """Entrywise ``W(h - k)``."""
    return [[x.shift(k) for x in row] for row in a]


def mat_vec(a: Matrix, v: Sequence[Poly]) -> list[Poly]:
    if any(len(row) != len(v) for row in a):
        raise ValueError("dimension mismatch in matrix-vector product")
    out = []
    for row in a:
        acc = Poly("h")
        for x, y in zip(row, v):
            if not x.is_zero() and not y.is_zero():
                acc = acc + x * y
        out.append(acc)
    return out


def determinant(a: Sequence[Sequence[R]], zero: R) -> R:
    """Cofactor expansion along the first row; works over any commutative ring."""
    n = len(a)
    if n == 0:
        raise ValueError("empty matrix")
    if n == 1:
        return a[0][0]
    total = zero
    for j in range(n):
        minor = [row[:j] + row[j + 1 :] for row in a[1:]]
        term = a[0][j] * determinant(minor, zero)
        total = total + term if j % 2 == 0 else total - term
    return total


def adjugate(a: Matrix) -> Matrix:
    n = len(a)
    if n == 1:
        return [[Poly.const("h", 1)]]
    adj = zeros(n)
    for i in range(n):
        for j in range(n):
            minor = [row[:j] + row[j + 1 :] for k, row in enumerate(a) if k != i]
            c = determinant(minor, Poly("h"))
            adj[j][i] = c if (i + j) % 2 == 0 else -c
    return adj


def _check_square(a: Matrix, name: str) -> int:
    n = len(a)
    if n == 0 or any(len(row) != n for row in a):
        raise ValueError(f"{name} must be a nonempty square matrix")
    return n


def verify_fr(x_plus: Matrix, x_minus: Matrix) -> bool:
    """Exact check of ``X+(h) X-(h-1) + X-(h) X+(h+1) = h I``."""
    n = _check_square(x_plus, "X+")
    if _check_square(x_minus, "X-") != n:
        raise ValueError("X+ and X- differ in size")
    lhs = mat_add(mat_mul(x_plus, mat_shift(x_minus, 1)), mat_mul(x_minus, mat_shift(x_plus, -1)))
    h = Poly.gen("h")
    return all(lhs[i][j] == (h if i == j else Poly("h")) for i in range(n) for j in range(n))


@dataclass(frozen=True)
class FRealization:
    x_plus: Matrix
    x_minus: Matrix

    def __post_init__(self) -> None:
        if not verify_fr(self.x_plus, self.x_minus):
            raise ValueError("matrices do not satisfy X+ sigma X- + X- sigma^-1 X+ = h I")

    @property
    def rank(self) -> int:
        return len(self.x_plus)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FRealization):
            return NotImplemented
        return self.x_plus == other.x_plus and self.x_minus == other.x_minus

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "x_plus": [[p.to_json() for p in row] for row in self.x_plus],
            "x_minus": [[p.to_json() for p in row] for row in self.x_minus],
        }

    @classmethod
    def from_json(cls, data: dict) -> FRealization:
        xp = [[Poly.from_json(p) for p in row] for row in data["x_plus"]]
        xm = [[Poly.from_json(p) for p in row] for row in data["x_minus"]]
        if len(xp) != data["rank"]:
            raise ValueError("rank does not match matrix size")
        return cls(xp, xm)


def build_realization(sign: int | str, g: Poly) -> FRealization:
    """Companion-type matrices for ``E_sign(g)`` in the basis ``x^p e^g``, ``p < n``."""
    validate_g(g)
    s = as_sign(sign)
    n = g.degree
    a = g.coeffs
    lead = a[n] * n
    h = Poly.gen("h")
    companion = zeros(n)
    for i in range(1, n):
        companion[i][i - 1] = Poly.const("h", 1)
    for i in range(1, n):
        companion[i][n - 1] = Poly.const("h", -(a[i] * i) / lead)
    companion[0][n - 1] = (h.scale(s) - Scalar(1) / 2) / lead
    # the shifting matrix has g' in its first column and the superdiagonal
    # h + 1/2 (for +) or -(h - 1/2) (for -)
    shifting = zeros(n)
    for i in range(n):
        shifting[i][0] = Poly.const("h", a[i + 1] * (i + 1))
    diag = h + Scalar(1) / 2 if s == 1 else -(h - Scalar(1) / 2)
    for i in range(n - 1):
        shifting[i][i + 1] = diag
    if s == 1:
        return FRealization(mat_scale(companion, INV_SQRT2), mat_scale(shifting, INV_SQRT2))
    return FRealization(mat_scale(shifting, INV_SQRT2), mat_scale(companion, -INV_SQRT2))


def fr_act(F: FRealization, gen: str, v: Sequence[Poly]) -> list[Poly]:
    """Action of ``Xd``, ``Xmd``, ``H``, ``X2d`` or ``Xm2d`` on a coordinate vector."""
    if len(v) != F.rank:
        raise ValueError(f"expected a vector of length {F.rank}, got {len(v)}")
    if gen == "H":
        h = Poly.gen("h")
        return [h * f for f in v]
    if gen == "Xd":
        return mat_vec(F.x_plus, [f.shift(1) for f in v])
    if gen == "Xmd":
        return mat_vec(F.x_minus, [f.shift(-1) for f in v])
    if gen == "X2d":
        m = mat_mul(F.x_plus, mat_shift(F.x_plus, 1))
        return mat_vec(m, [f.shift(2) for f in v])
    if gen == "Xm2d":
        m = mat_mul(F.x_minus, mat_shift(F.x_minus, -1))
        return [-f for f in mat_vec(m, [f.shift(-2) for f in v])]
    raise ValueError(f"unknown generator {gen!r}")


def fr_act_element(F: FRealization, e: OspElement, v: Sequence[Poly]) -> list[Poly]:
    """Action of an arbitrary word combination; words act right to left."""
    out = [Poly("h")] * F.rank
    for word, c in e.terms:
        w = list(v)
        for letter in reversed(word):
            w = fr_act(F, letter, w)
        out = [o + x.scale(c) for o, x in zip(out, w)]
    return out


def check_fr_relations(F: FRealization, max_power: int = 4) -> dict[str, bool]:
    """Relations and bracket identities as operator identities on ``h^j e_p``."""
    vectors = []
    for p in range(F.rank):
        for j in range(max_power + 1):
            vec = [Poly("h")] * F.rank
            vec[p] = Poly.monomial("h", j)
            vectors.append(vec)
    identities = {**defining_relations(), **bracket_table()}
    return check_identities(
        identities, lambda e: tuple(tuple(fr_act_element(F, e, v)) for v in vectors)
    )


class _LambdaPoly:
    """Polynomial in lambda with coefficients in ``Q(sqrt2)[h]``; only ring ops."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Sequence[Poly]) -> None:
        c = list(coeffs)
        while c and c[-1].is_zero():
            c.pop()
        self.c = c

    def _get(self, i: int) -> Poly:
        return self.c[i] if i < len(self.c) else Poly("h")

    def __add__(self, o: _LambdaPoly) -> _LambdaPoly:
        return _LambdaPoly([self._get(i) + o._get(i) for i in range(max(len(self.c), len(o.c)))])

    def __sub__(self, o: _LambdaPoly) -> _LambdaPoly:
        return _LambdaPoly([self._get(i) - o._get(i) for i in range(max(len(self.c), len(o.c)))])

    def __mul__(self, o: _LambdaPoly) -> _LambdaPoly:
        if not self.c or not o.c:
            return _LambdaPoly([])
        out = [Poly("h")] * (len(self.c) + len(o.c) - 1)
        for i, x in enumerate(self.c):
            for j, y in enumerate(o.c):
                out[i + j] = out[i + j] + x * y
        return _LambdaPoly(out)


def companion_poly(sign: int | str, g: Poly) -> list[Poly]:
    """Coefficients (in ``h``, indexed by the power of lambda) of

    ``p_s(lambda; h) = lambda^n + sum_{j<n} j a_j/(n a_n) lambda^j - (s h - 1/2)/(n a_n)``.

    Raises AssertionError unless ``det(lambda I - s sqrt2 X_s(h))`` equals it.
    """
    validate_g(g)
    s = as_sign(sign)
    n = g.degree
    a = g.coeffs
    lead = a[n] * n
    coeffs = [Poly.const("h", a[j] * j / lead) for j in range(n)]
    coeffs[0] = -(Poly.gen("h").scale(s) - Scalar(1) / 2) / lead
    coeffs.append(Poly.const("h", 1))
    if characteristic_poly(sign, g) != coeffs:
        raise AssertionError("determinant identity fails")
    return coeffs


def characteristic_poly(sign: int | str, g: Poly) -> list[Poly]:
    """``det(lambda I - s sqrt2 X_s(h))`` by cofactor expansion."""
    s = as_sign(sign)
    F = build_realization(s, g)
    xs = F.x_plus if s == 1 else F.x_minus
    m = mat_scale(xs, SQRT2 * s)
    n = len(m)
    lam = [
        [
            _LambdaPoly([-m[i][j]] + ([Poly.const("h", 1)] if i == j else []))
            for j in range(n)
        ]
        for i in range(n)
    ]
    return determinant(lam, _LambdaPoly([])).c


def twisted_conjugate(F: FRealization, W: Matrix) -> FRealization:
    """``(W^-1 X+ sigma(W), W^-1 X- sigma^-1(W))`` for ``W`` in ``GL_n(C[h])``."""
    n = _check_square(W, "W")
    if n != F.rank:
        raise ValueError("W and the realization differ in size")
    det = determinant(W, Poly("h"))
    if det.degree != 0:
        raise ValueError(f"W is not invertible over C[h]: det = {det}")
    w_inv = mat_scale(adjugate(W), det.coeffs[0].inverse())
    return FRealization(
        mat_mul(w_inv, mat_mul(F.x_plus, mat_shift(W, 1))),
        mat_mul(w_inv, mat_mul(F.x_minus, mat_shift(W, -1))),
    )


def intertwining_mismatches(module: ExpModule, F: FRealization, depth: int) -> list[tuple[str, int]]:
    """Pairs ``(generator, k)`` with ``psi(gen . x^k e^g) != fr_act(F, gen, psi(x^k e^g))``.

    The left side is computed in the Weyl algebra, the right side with matrices.
    """
    bad = []
    for name, gen in GENERATORS.items():
        for k in range(depth + 1):
            f = Poly.monomial("x", k)
            lhs = module.psi(module.act(gen, f))
            if list(lhs) != fr_act(F, name, module.psi(f)):
                bad.append((name, k))
    return bad


def matrix_latex(m: Matrix, prefactor: Scalar | None = None) -> str:
    rows = [" & ".join(p.latex() for p in row) for row in m]
    body = "\\begin{bmatrix}\n" + " \\\\\n".join(rows) + "\n\\end{bmatrix}"
    if prefactor is None:
        return body
    return f"{prefactor.latex()}{body}"


def matrix_text(m: Matrix) -> str:
    cells = [[str(p) for p in row] for row in m]
    width = max(len(c) for row in cells for c in row)
    return "\n".join("[ " + "  ".join(c.rjust(width) for c in row) + " ]" for row in cells)

