import json

import pytest

from ospexp import cli
from ospexp.expmod import ExpModule, psi_from_json
from ospexp.frmat import FRealization, build_realization
from ospexp.poly import Poly, parse_poly


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_psi_text(capsys):
    code, out, _ = run(capsys, "psi", "--sign", "+", "--g", "x^2", "--f", "x^3")
    assert code == 0
    assert out.splitlines() == ["f_0(h) = 0", "f_1(h) = -3/4 + 1/2*h"]


def test_psi_json_round_trip(capsys):
    code, out, _ = run(capsys, "psi", "--sign", "-", "--g", "x + 2*x^3", "--f", "x^5 - x", "--format", "json")
    assert code == 0
    vec = psi_from_json(json.loads(out))
    assert vec == ExpModule("-", parse_poly("x + 2*x^3")).psi(parse_poly("x^5 - x"))


def test_matrices_json_round_trip(capsys):
    code, out, _ = run(capsys, "matrices", "--sign", "-", "--g", "x^2", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert FRealization.from_json(data["realization"]) == build_realization("-", parse_poly("x^2"))


def test_matrices_latex(capsys):
    code, out, _ = run(capsys, "matrices", "--sign", "+", "--g", "x^2", "--format", "latex")
    assert code == 0
    assert "\\begin{bmatrix}" in out


def test_w_walk(capsys):
    code, out, _ = run(capsys, "w", "--sign", "+", "--g", "x + x^2", "--k", "4", "--walk")
    assert code == 0
    assert "w[4,0](h) = 1/4 - 5/8*h + 1/4*h^2" in out


def test_isom_negative_coefficients(capsys):
    code, out, _ = run(capsys, "isom", "--a", "+:x^2", "--b", "-:-1/4*x^2", "--depth", "3")
    assert code == 0
    assert out.splitlines()[0] == "Isomorphic(FourierDual)"


def test_isom_json(capsys):
    code, out, _ = run(capsys, "isom", "--a", "-:-x^3", "--b", "+:x^3", "--format", "json")
    assert code == 0
    assert json.loads(out)["verdict"] == {"result": "NotIsomorphic", "reason": "MixedSignDegreeNot2"}


@pytest.mark.parametrize("sign, g", [("+", "x"), ("-", "x^3"), ("+", "x + x^2")])
def test_verify_passes(capsys, sign, g):
    code, out, _ = run(capsys, "verify", "--sign", sign, "--g", g, "--depth", "4", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["passed"] and all(data["checks"].values())


def test_verify_element(capsys):
    code, out, _ = run(capsys, "verify", "--sign", "+", "--g", "x", "--depth", "2", "--element", "Xd Xmd + Xmd Xd")
    assert code == 0
    assert "phi(Xd Xmd + Xmd Xd) = x*d + 1/2" in out


def test_verify_failure_exit_code(capsys, monkeypatch):
    monkeypatch.setattr(cli, "verify_module", lambda M, depth: {"forced": False})
    code, out, _ = run(capsys, "verify", "--sign", "+", "--g", "x")
    assert code == 1
    assert "FAIL" in out


def test_ode_check_and_supermodule(capsys):
    assert run(capsys, "ode-check", "--sign", "-", "--g", "x + x^2", "--order", "6")[0] == 0
    code, out, _ = run(capsys, "supermodule", "--sign", "-", "--g", "x^3", "--format", "json")
    assert code == 0
    assert json.loads(out)["supermodule"] is False


@pytest.mark.parametrize(
    "argv, token",
    [
        (["psi", "--sign", "+", "--g", "x^2 + 3y", "--f", "x"], "'y'"),
        (["psi", "--sign", "+", "--g", "x", "--f", "x $"], "'$'"),
        (["isom", "--a", "x^2", "--b", "-:x^2"], "x^2"),
    ],
)
def test_input_errors(capsys, argv, token):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert token in err


def test_constant_term_rejected(capsys):
    code, _, err = run(capsys, "matrices", "--sign", "+", "--g", "1 + x")
    assert code == 2
    assert "constant term" in err


def test_bad_usage_exit_code(capsys):
    assert run(capsys, "psi", "--sign", "+")[0] == 2


def test_depth_from_environment(monkeypatch, capsys):
    monkeypatch.setenv("OSPEXP_DEPTH", "2")
    code, out, _ = run(capsys, "w", "--sign", "+", "--g", "x", "--format", "json")
    assert code == 0
    assert sorted(json.loads(out)["w"], key=int) == ["0", "1", "2"]
