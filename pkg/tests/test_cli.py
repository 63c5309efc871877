import contextlib
import io
import json

from gmpy2 import mpq

from mouldlab.cli import main
from mouldlab.core.expr import parse
from mouldlab.operad import MouldComponent, ari, unit


def run(*argv):
    out = io.StringIO()
    err = io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        try:
            code = main(list(argv))
        except SystemExit as exc:
            code = exc.code
    return code, out.getvalue(), err.getvalue()


def test_push_pin():
    code, out, err = run("push", "1/(u1*(u1+u2))")
    assert (code, out, err) == (0, "1/((u1+u2)*u2)\n", "")


def test_plants_count_pin():
    code, out, err = run("plants", "count", "4")
    assert (code, out, err) == (0, "plants=80 based=51\n", "")


def test_eval_normalizes_and_round_trips():
    code, out, _ = run("eval", "1/(u1*u2) + 1/(u1*(u1+u2))")
    assert code == 0
    assert out == "(u1+2*u2)/(u1*(u1+u2)*u2)\n"
    assert parse(out.strip()) == parse("1/(u1*u2)") + parse("1/(u1*(u1+u2))")


def test_compose():
    code, out, _ = run("compose", "-i", "1", "1/(u1*(u1+u2))", "1/u1")
    assert code == 0 and out == "1/(u1*(u1+u2))\n"
    code, _, err = run("compose", "-i", "3", "1/u1", "1/u1")
    assert code == 2
    assert "out of range" in err


def test_product_ops():
    code, out, _ = run("product", "--op", "succ", "1/u1", "1/u1")
    assert code == 0 and out == "1/(u1*(u1+u2))\n"
    code, out, _ = run("product", "--op", "mu", "1/u1", "1/u1")
    assert code == 0 and out == "1/(u1*u2)\n"
    code, out, _ = run("product", "--op", "ari", "1/u1", "1/u1")
    assert code == 0 and out == "0\n"
    code, out, _ = run("product", "--op", "ari", "1/u1", "1/(u1*(u1+u2))", "--json")
    assert code == 0
    payload = json.loads(out)
    expected = ari(unit(), MouldComponent(2, parse("1/(u1*(u1+u2))")))
    assert payload["arity"] == 3
    assert parse(payload["value"]) == expected.value


def test_deriv():
    assert run("deriv", "1/(u1*u2)") == (0, "2/u1\n", "")
    assert run("deriv", "1/u1") == (0, "1\n", "")


def test_json_flag_before_subcommand():
    code, out, _ = run("--json", "eval", "1/u1")
    assert code == 0
    assert json.loads(out) == {"arity": 1, "value": "1/u1"}
    code, out, _ = run("--json", "plants", "count", "4")
    assert code == 0
    assert json.loads(out) == {"based": 51, "degree": 4, "plants": 80}


def test_check_exit_codes():
    assert run("check", "alternal", "1/u1") == (0, "alternal: true\n", "")
    code, out, _ = run("check", "nice-poles", "1/(u1+u3)")
    assert code == 1 and out == "nice-poles: false\n"
    code, out, _ = run("check", "homogeneous", "1/(u1*u2)", "--json")
    assert code == 0
    assert json.loads(out) == {"check": "homogeneous", "ok": True, "weight": -2}


def test_trees_commands():
    code, out, _ = run("trees", "enumerate", "2")
    assert code == 0 and out == "(L,(L,L))\n((L,L),L)\n"
    code, out, _ = run("trees", "enumerate", "2", "--planar")
    assert code == 0 and out == "(L,(L,L))\n((L,L),L)\n(L,L,L)\n"
    code, out, _ = run("trees", "psi", "(L,(L,L))")
    assert code == 0 and out == "1/((u1+u2)*u2)\n"
    code, out, _ = run("trees", "pi", "4163527")
    assert code == 0 and out == "((L,((L,L),L)),((L,L),(L,L)))\n"
    code, out, _ = run("trees", "expand", "1/(u1*u2)")
    assert code == 0 and out == "1 * ((L,L),L)\n1 * (L,(L,L))\n"
    code, _, err = run("trees", "expand", "1/(u1+u2)")
    assert code == 1 and "not in the span" in err
    code, out, _ = run("trees", "tamari", "(((L,L),L),L)", "(L,(L,(L,L)))")
    assert code == 0
    assert out.splitlines()[0] == "leq: true"
    assert len(out.splitlines()) == 6


def test_plants_commands():
    code, out, _ = run("plants", "enumerate", "2")
    assert code == 0 and len(out.splitlines()) == 3
    code, out, _ = run("plants", "enumerate", "3", "--based")
    assert code == 0 and len(out.splitlines()) == 9
    code, out, _ = run("plants", "series", "5")
    assert code == 0
    assert out == (
        "plants: x+3*x^2+14*x^3+80*x^4+510*x^5+O(x^6)\n"
        "based: x+2*x^2+9*x^3+51*x^4+324*x^5+O(x^6)\n"
    )
    code, out, _ = run("plants", "series", "5", "--json")
    assert code == 0
    assert json.loads(out)["plants"] == ["0", "1", "3", "14", "80", "510"]
    left = '{"n":2,"denom":[[0,1],[0,2]]}'
    code, out, _ = run("plants", "graft", left, left, "2")
    assert code == 0
    lines = out.splitlines()
    assert json.loads(lines[0]) == {
        "n": 3,
        "denom": [[0, 1], [0, 3], [1, 2]],
        "numer": [],
    }
    assert lines[1] == "1/(u1*(u1+u2+u3)*u2)"
    code, out, _ = run("plants", "conjecture", "2")
    assert code == 0
    assert out.splitlines()[-1] == "all_pass=true"


def test_gallery_commands():
    code, out, _ = run("gallery", "cm", "3")
    assert code == 0 and out == "(u1-2*u2+u3)/(u1*(u1+u2+u3)*u2*u3)\n"
    code, out, _ = run("gallery", "ty", "3", "--t", "2")
    assert code == 0 and out == "(u1+2*u2+4*u3)/(u1*(u1+u2+u3)*u2*u3)\n"
    code, out, _ = run("gallery", "pq", "2", "1")
    assert code == 0 and out == "1/(u1*(u1+u2+u3)*u3)\n"


def test_series_command():
    code, out, _ = run("series", "forgetful", "--gallery", "as", "--order", "5")
    assert code == 0 and out == "x+x^2+x^3+x^4+x^5+O(x^6)\n"
    code, out, _ = run("series", "forgetful", "1/u1", "1/(u1*u2)")
    assert code == 0 and out == "x+x^2+O(x^3)\n"
    code, _, _ = run("series", "forgetful", "1/u2")
    assert code == 2


def test_verify_command():
    code, out, _ = run("verify", "operad", "--max-degree", "2", "--seed", "5")
    assert code == 0
    assert out.startswith("PASS operad axioms:")


def test_usage_errors():
    code, _, err = run("eval", "1/(u1")
    assert code == 2 and err.startswith("parse error:")
    code, _, _ = run("badcmd")
    assert code == 2
    code, _, _ = run("eval", "1/u1", "--bogus")
    assert code == 2


def test_seed_env(monkeypatch):
    monkeypatch.setenv("MOULDLAB_SEED", "definitely-not-a-number")
    code, _, err = run("verify", "dend")
    assert code == 2 and "MOULDLAB_SEED" in err
    monkeypatch.setenv("MOULDLAB_SEED", "7")
    code, out, _ = run("verify", "dend")
    assert code == 0
    assert all(line.startswith("PASS") for line in out.splitlines())
