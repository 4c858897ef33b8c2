import json
import subprocess
import sys

import jsonschema
import pytest

import schemas
from clocked.cli import main, read_term
from clocked.errors import BadArity
from clocked.terms import Var, app
from clocked.zoo import Y0, bohm_y, y_vec


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


# -- reduce -----------------------------------------------------------------

def test_reduce_three_identities(capsys):
    code, out, _ = run(capsys, "reduce", "I I I")
    lines = out.splitlines()
    assert code == 0
    assert lines[:3] == ["ClockedBeta @ 0 : (# I) I", "TauLift @ ε : # (I I)",
                         "ClockedBeta @ 0 : #^2 I"]
    assert lines[-1] == "final: #^2 I  (normal form after 3 steps)"


def test_reduce_normal_form(capsys):
    code, out, _ = run(capsys, "reduce", "x")
    assert code == 0 and out.strip() == "final: x  (normal form after 0 steps)"


def test_reduce_atomic(capsys):
    code, out, _ = run(capsys, "reduce", "--mode", "atomic", r"(\x. x) y")
    assert code == 0
    assert out.splitlines()[-1] == "final: <>(y)  (normal form after 1 step)"


def test_reduce_step_limit(capsys):
    code, out, _ = run(capsys, "reduce", "--max-steps", "3", "Y1 f")
    assert code == 0 and "step limit reached after 3 steps" in out


def test_reduce_without_zoo(capsys):
    code, out, _ = run(capsys, "reduce", "--no-zoo", "I I I")
    assert out.strip() == "final: I I I  (normal form after 0 steps)"


def test_reduce_json_agrees_with_text(capsys):
    _, text, _ = run(capsys, "reduce", "I I I")
    code, data = run_json(capsys, "reduce", "I I I")
    jsonschema.validate(data, schemas.REDUCE)
    assert [s["rule"] for s in data["steps"]] == [line.split(" @ ")[0]
                                                  for line in text.splitlines()[:-1]]
    assert data["stepCount"] == 3 and data["halted"] == "normal"


def test_reduce_random_is_seeded(capsys):
    _, a = run_json(capsys, "reduce", "--strategy", "random", "--seed", "3", "--max-steps", "8", "Y1 f")
    _, b = run_json(capsys, "reduce", "--strategy", "random", "--seed", "3", "--max-steps", "8", "Y1 f")
    assert a == b


# -- tree -------------------------------------------------------------------

def test_tree_curry(capsys):
    code, out, _ = run(capsys, "tree", "--depth", "4", "Y0 f")
    assert code == 0
    assert out.splitlines() == ["τ^2 f/1", "  τ^1 f/1", "    τ^1 f/1", "      τ^1 f/1", "        …"]


def test_tree_omega(capsys):
    code, out, _ = run(capsys, "tree", "Omega")
    assert code == 0 and out.strip() == "⊥ (certified)"


def test_tree_depth_zero(capsys):
    code, out, _ = run(capsys, "tree", "--depth", "0", "x")
    assert code == 0 and out.strip() == "…"


def test_tree_fuel_exhausted_is_inconclusive(capsys):
    code, out, _ = run(capsys, "tree", "--fuel", "5", r"(\x. x x x) (\x. x x x)")
    assert code == 3 and "fuel exhausted" in out


def test_tree_json(capsys):
    code, data = run_json(capsys, "tree", "--depth", "3", "--mode", "atomic", "bohmY 1 @ x")
    jsonschema.validate(data, schemas.TREE_OUTPUT)
    assert data["mode"] == "atomic" and isinstance(data["tree"]["ann"], list)


# -- compare ----------------------------------------------------------------

def test_compare_bohm(capsys):
    code, out, _ = run(capsys, "compare", "bohmY 2 @ x", "bohmY 3 @ x")
    assert code == 0 and out.startswith("NotConvertible")
    assert "evidence standard:" in out


def test_compare_identical(capsys):
    code, out, _ = run(capsys, "compare", "I", "I")
    assert code == 3 and out.startswith("Inconclusive")


def test_compare_atomic_vectors(capsys):
    code, data = run_json(capsys, "compare", "--mode", "atomic", "yVec 0 @ x", "yVec 1 @ x")
    jsonschema.validate(data, schemas.COMPARE)
    assert code == 0 and data["verdict"] == "NotConvertible"
    assert data["trees"]["m"]["ann"] != data["trees"]["n"]["ann"]


def test_compare_from_file(capsys, tmp_path):
    path = tmp_path / "pair.txt"
    path.write_text("bohmY 1 @ x\n\n-- second term\nbohmY 2 @ x\n", encoding="utf-8")
    code, out, _ = run(capsys, "compare", "--file", str(path))
    assert code == 0 and out.startswith("NotConvertible")


# -- simple -----------------------------------------------------------------

@pytest.mark.parametrize("term,status,code", [
    ("bohmY 2", "simple", 0),
    (r"(\x. x x)(I I)", "notSimple @ ε", 0),
    ("Omega", "simple", 0),
])
def test_simple(capsys, term, status, code):
    got, out, _ = run(capsys, "simple", term)
    assert got == code and out.startswith(status)


def test_simple_unknown(capsys):
    code, data = run_json(capsys, "simple", "--fuel", "5", r"(\x. x x x) (\x. x x x)")
    jsonschema.validate(data, schemas.SIMPLE_OUTPUT)
    assert code == 3 and data["status"] == "unknown"


# -- zoo and errors ---------------------------------------------------------

def test_zoo_listing(capsys):
    code, out, _ = run(capsys, "zoo")
    assert code == 0 and "Y0 = \\f. (\\x. f (x x)) (\\x. f (x x))" in out
    _, data = run_json(capsys, "zoo")
    jsonschema.validate(data, schemas.ZOO)
    assert {e["name"] for e in data["entries"]} >= {"I", "Omega", "bohmY", "yVec"}


def test_parse_error_exit_code(capsys):
    code, _, err = run(capsys, "reduce", "(x y")
    assert code == 2 and "line 1, column 5" in err


def test_wrong_term_count(capsys):
    with pytest.raises(SystemExit) as info:
        main(["compare", "x"])
    assert info.value.code == 2


def test_bad_depth(capsys):
    with pytest.raises(SystemExit):
        main(["tree", "--depth", "-1", "x"])


def test_read_term_sugar():
    assert read_term("bohmY 2") == bohm_y(2)
    assert read_term("yVec 0 1 @ f g") == app(y_vec((0, 1)), Var("f"), Var("g"))
    assert read_term("Y0 f") == app(Y0, Var("f"))
    assert read_term("Y0", expand=False) == Var("Y0")
    with pytest.raises(BadArity):
        read_term("bohmY 1 2")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "clocked", "reduce", "I I I"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[-1].startswith("final: #^2 I")
