"""Command-line front end.

Exit status: 0 when every check passes, 1 when any verification fails,
2 on malformed input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Callable

from .expmod import ExpModule, psi_to_json, w_walk
from .frmat import (
    build_realization,
    check_fr_relations,
    companion_poly,
    intertwining_mismatches,
    mat_scale,
    matrix_latex,
    matrix_text,
)
from .isom import classify, intertwiner_images, verify_intertwiner_deg2
from .osp import as_sign, casimir, check_relations, parse_osp, phi, sign_symbol
from .poly import Poly, PolyParseError, parse_poly
from .scalars import SQRT2, Scalar
from .series import ode_residual

DEPTH_ENV = "OSPEXP_DEPTH"

GRAMMAR = """\
polynomial grammar: a sum of terms COEF*x^K separated by + or -.
COEF is an integer or p/q, optionally times s (sqrt 2) or a parenthesised
scalar, e.g. "x + 2*x^3", "-1/4*x^2", "1/2*s*x", "(1 + s)*x^2".
Whitespace is ignored; g must be nonconstant with zero constant term.
"""


class InputError(Exception):
    pass


def default_depth() -> int:
    raw = os.environ.get(DEPTH_ENV)
    if raw is None:
        return 12
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"{DEPTH_ENV} must be an integer, got {raw!r}") from None


def _poly(text: str, what: str) -> Poly:
    try:
        return parse_poly(text, "x")
    except PolyParseError as exc:
        raise InputError(f"cannot parse {what} {text!r}: {exc} (offending token {exc.token!r})") from None


def _module(sign: str, g_text: str) -> ExpModule:
    g = _poly(g_text, "g")
    try:
        return ExpModule(sign, g)
    except ValueError as exc:
        raise InputError(f"invalid g {g_text!r}: {exc}") from None


def _signed(text: str) -> tuple[int, Poly]:
    sign, sep, body = text.partition(":")
    if not sep or sign.strip() not in ("+", "-"):
        raise InputError(f"expected SIGN:POLY such as '+:x^2', got {text!r}")
    g = _poly(body, "g")
    try:
        ExpModule(sign.strip(), g)
    except ValueError as exc:
        raise InputError(f"invalid g {body!r}: {exc}") from None
    return as_sign(sign.strip()), g


def _emit(args: argparse.Namespace, payload: dict, text: Callable[[], str], latex: Callable[[], str] | None = None) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    elif args.format == "latex":
        if latex is None:
            raise InputError(f"--format latex is not available for {args.command}")
        print(latex())
    else:
        print(text())


def cmd_matrices(args: argparse.Namespace) -> int:
    M = _module(args.sign, args.g)
    F = build_realization(M.sign, M.g)

    def text() -> str:
        return f"X+(h) =\n{matrix_text(F.x_plus)}\nX-(h) =\n{matrix_text(F.x_minus)}"

    def latex() -> str:
        # pull out the +-1/sqrt2 prefactor as in the usual display
        minus_sign = -1 if M.sign == -1 else 1
        return (
            "X_+(h) = \\tfrac{1}{\\sqrt{2}}"
            + matrix_latex(mat_scale(F.x_plus, SQRT2))
            + f"\n\nX_-(h) = {'-' if minus_sign < 0 else ''}\\tfrac{{1}}{{\\sqrt{{2}}}}"
            + matrix_latex(mat_scale(F.x_minus, SQRT2 * minus_sign))
        )

    _emit(args, {"sign": sign_symbol(M.sign), "g": M.g.to_json(), "realization": F.to_json()}, text, latex)
    return 0


def cmd_psi(args: argparse.Namespace) -> int:
    M = _module(args.sign, args.g)
    f = _poly(args.f, "f")
    vec = M.psi(f)

    def text() -> str:
        return "\n".join(f"f_{p}(h) = {q}" for p, q in enumerate(vec))

    def latex() -> str:
        return "\\begin{bmatrix}" + " \\\\ ".join(q.latex() for q in vec) + "\\end{bmatrix}"

    _emit(args, psi_to_json(vec), text, latex)
    return 0


def cmd_w(args: argparse.Namespace) -> int:
    M = _module(args.sign, args.g)
    ks = [args.k] if args.k is not None else list(range(args.depth + 1))
    rows = {k: M.w_recur(k) for k in ks}
    status = 0
    if args.walk:
        for k in ks:
            for p in range(M.rank):
                if w_walk(M, k, p) != rows[k][p]:
                    print(f"walk mismatch at m={k}, p={p}", file=sys.stderr)
                    status = 1

    def text() -> str:
        lines = []
        for k, vec in rows.items():
            lines.extend(f"w[{k},{p}](h) = {q}" for p, q in enumerate(vec))
        return "\n".join(lines)

    def latex() -> str:
        s = sign_symbol(M.sign)
        return "\n".join(
            f"w^{{({s})}}_{{{k},{p}}}(h) = {q.latex()}" for k, vec in rows.items() for p, q in enumerate(vec)
        )

    payload = {"sign": sign_symbol(M.sign), "g": M.g.to_json(), "w": {str(k): psi_to_json(v) for k, v in rows.items()}}
    _emit(args, payload, text, latex)
    return status


def verify_module(M: ExpModule, depth: int) -> dict[str, bool]:
    """Every available check for one module, keyed by a short label."""
    report: dict[str, bool] = {}
    for name, ok in check_relations(M.sign).items():
        report[f"relation {name}"] = ok
    c, omega = phi(M.sign, casimir("C")), phi(M.sign, casimir("Omega"))
    report["casimir C = -3/16"] = c == Scalar(Fraction(-3, 16))
    report["casimir Omega = -1/16"] = omega == Scalar(Fraction(-1, 16))
    cc, oo = c.constant_term(), omega.constant_term()
    report["quadratic casimir relation"] = cc * cc * 4 - (oo * 8 - 1) * cc + oo * 2 * (oo * 2 - 1) == 0
    try:
        F = build_realization(M.sign, M.g)
        report["X+ sigma X- + X- sigma^-1 X+ = h I"] = True
    except ValueError:
        report["X+ sigma X- + X- sigma^-1 X+ = h I"] = False
        return report
    try:
        companion_poly(M.sign, M.g)
        report["det(lambda - s sqrt2 X_s) = p_s"] = True
    except AssertionError:
        report["det(lambda - s sqrt2 X_s) = p_s"] = False
    report["matrix action matches Weyl oracle"] = not intertwining_mismatches(M, F, depth)
    report["relations hold for matrix action"] = all(check_fr_relations(F).values())
    report["walk sum equals recurrence"] = all(
        w_walk(M, m, p) == M.w_recur(m)[p] for m in range(depth + 1) for p in range(M.rank)
    )
    report["psi_inv . psi = id"] = all(
        M.psi_inv(M.psi(Poly.monomial("x", k))) == Poly.monomial("x", k) for k in range(depth + 1)
    )
    return report


def cmd_verify(args: argparse.Namespace) -> int:
    M = _module(args.sign, args.g)
    report = verify_module(M, args.depth)
    image = None
    if args.element:
        try:
            e = parse_osp(args.element)
        except ValueError as exc:
            raise InputError(f"cannot parse element {args.element!r}: {exc}") from None
        image = str(phi(M.sign, e))

    def text() -> str:
        lines = [f"{'PASS' if ok else 'FAIL'}  {name}" for name, ok in report.items()]
        if image is not None:
            lines.append(f"phi({args.element}) = {image}")
        return "\n".join(lines)

    payload = {"sign": sign_symbol(M.sign), "g": M.g.to_json(), "checks": report, "passed": all(report.values())}
    if image is not None:
        payload["image"] = image
    _emit(args, payload, text)
    return 0 if all(report.values()) else 1


def cmd_isom(args: argparse.Namespace) -> int:
    s1, g1 = _signed(args.a)
    s2, g2 = _signed(args.b)
    verdict = classify(s1, g1, s2, g2)
    payload: dict = {"verdict": verdict.to_json()}
    status = 0
    images: list[Poly] = []
    if verdict.reason.value == "FourierDual":
        a, b = (g1, g2) if s1 == 1 else (g2, g1)
        ok = verify_intertwiner_deg2(a, b, args.depth)
        payload["intertwiner_verified"] = ok
        images = intertwiner_images(b, args.depth)
        payload["intertwiner_images"] = [p.to_json() for p in images]
        status = 0 if ok else 1

    def text() -> str:
        lines = [str(verdict)]
        if images:
            lines.append(f"intertwiner verified to depth {args.depth}: {payload['intertwiner_verified']}")
            lines.extend(f"T(x^{k} e^a) = ({p}) e^b" for k, p in enumerate(images))
        return "\n".join(lines)

    _emit(args, payload, text)
    return status


def cmd_ode_check(args: argparse.Namespace) -> int:
    M = _module(args.sign, args.g)
    if args.order < M.rank + 1:
        raise InputError(f"--order must be at least {M.rank + 1}")
    residual = ode_residual(M, args.order)
    verified = -1
    for vec in residual.coeffs:
        if any(not p.is_zero() for p in vec):
            break
        verified += 1
    ok = verified == residual.order
    payload = {"sign": sign_symbol(M.sign), "g": M.g.to_json(), "verified_order": verified, "residual_zero": ok}
    _emit(args, payload, lambda: f"residual zero through t^{verified}: {'PASS' if ok else 'FAIL'}")
    return 0 if ok else 1


def cmd_supermodule(args: argparse.Namespace) -> int:
    M = _module(args.sign, args.g)
    result = M.is_supermodule(args.depth)
    report = M.involution_report(args.depth)
    # for odd g the twisted derivative check is expected to fail
    consistent = result == M.g.is_even() and (not M.g.is_even() or all(report.values()))
    payload = {"sign": sign_symbol(M.sign), "g": M.g.to_json(), "supermodule": result, "involution": report}

    def text() -> str:
        lines = [f"supermodule: {result}"]
        lines.extend(f"  {name}: {ok}" for name, ok in report.items())
        return "\n".join(lines)

    _emit(args, payload, text)
    return 0 if consistent else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ospexp",
        description="Exponential modules of osp(1|2) over Q(sqrt 2).",
        epilog=GRAMMAR,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def module_cmd(name: str, help_text: str, formats=("text", "json")) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text, epilog=GRAMMAR, formatter_class=argparse.RawDescriptionHelpFormatter)
        p.add_argument("--sign", choices=["+", "-"], required=True)
        p.add_argument("--g", required=True, help="exponent polynomial in x")
        p.add_argument("--format", choices=formats, default="text")
        p.add_argument("--depth", type=int, default=None, help=f"truncation depth (default ${DEPTH_ENV} or 12)")
        return p

    module_cmd("matrices", "print X+(h), X-(h)", ("text", "json", "latex"))
    p = module_cmd("psi", "coordinates of f(x) e^g", ("text", "json", "latex"))
    p.add_argument("--f", required=True, help="polynomial f in x")
    p = module_cmd("w", "coordinate polynomials w[k,p](h)", ("text", "json", "latex"))
    p.add_argument("--k", type=int, default=None, help="single index (default: 0..depth)")
    p.add_argument("--walk", action="store_true", help="cross-check against the walk sum")
    p = module_cmd("verify", "run every check for one module")
    p.add_argument("--element", default=None, help='word combination such as "Xd Xmd + Xmd Xd"')
    p = module_cmd("ode-check", "generating-function ODE residual")
    p.add_argument("--order", type=int, default=12)
    module_cmd("supermodule", "Z2-grading criterion")

    p = sub.add_parser("isom", help="isomorphism verdict for two modules")
    p.add_argument("--a", required=True, help="SIGN:POLY, e.g. '+:x^2'")
    p.add_argument("--b", required=True, help="SIGN:POLY, e.g. '-:-1/4*x^2'")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--depth", type=int, default=None)
    return parser


COMMANDS = {
    "matrices": cmd_matrices,
    "psi": cmd_psi,
    "w": cmd_w,
    "verify": cmd_verify,
    "isom": cmd_isom,
    "ode-check": cmd_ode_check,
    "supermodule": cmd_supermodule,
}


def _attach_values(argv: list[str]) -> list[str]:
    # SIGN:POLY values may start with '-', which argparse would read as a flag
    out, i = [], 0
    while i < len(argv):
        if argv[i] in ("--a", "--b", "--g", "--f", "--element") and i + 1 < len(argv):
            out.append(f"{argv[i]}={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    argv = _attach_values(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        if args.depth is None:
            args.depth = 8 if args.command == "isom" else default_depth()
        if args.depth < 0:
            raise InputError("--depth must be nonnegative")
        return COMMANDS[args.command](args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
