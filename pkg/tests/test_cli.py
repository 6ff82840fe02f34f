import json
import subprocess
import sys
import time

import pytest

from plethys.biring import TensorIvPoly, coadd
from plethys.cli import main
from plethys.exact import Lattice
from plethys.ivpoly import IvPoly
from plethys.lambda_ring import LambdaTrunc
from plethys.plethory import FinOrder
from plethys.witt import EvalHom

C2 = '{"basis":"binomial","coeffs":{"2":"1"}}'
HALF_SUM = '{"arity":2,"terms":[{"exp":[1,0],"c":"1/2"},{"exp":[0,1],"c":"1/2"}]}'


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out, json.loads(out)


def test_coadd_example(capsys):
    code, _, doc = run(capsys, "coadd", "--poly", C2)
    assert code == 0 and doc["schema_version"] == 1
    assert TensorIvPoly.from_json(doc["result"]["expansion"]) == coadd(IvPoly.binomial(2))


def test_member_example(capsys):
    code, _, doc = run(capsys, "member", "--arity", "2", "--poly", HALF_SUM)
    assert code == 2
    assert doc["error"]["type"] == "NotIntegerValued"
    assert doc["error"]["witness"] == [1, 0]


def test_axioms_example(capsys):
    code, _, doc = run(capsys, "axioms", "--degree", "8")
    assert code == 0 and doc["result"]["verdict"] == "pass"


def test_suite_quick(capsys):
    start = time.perf_counter()
    code, _, doc = run(capsys, "suite", "quick")
    assert time.perf_counter() - start < 10
    assert code == 0 and doc["result"]["passed"]
    assert [r["criterion"] for r in doc["result"]["criteria"]] == list(range(1, 11))


def test_suite_requires_name(capsys):
    code, _, doc = run(capsys, "suite")
    assert code == 1 and doc["error"]["type"] == "SchemaError"
    code, _, _ = run(capsys, "suite", "bogus")
    assert code == 1


def test_unknown_command(capsys):
    code, _, doc = run(capsys, "frobnicate")
    assert code == 1 and doc["error"]["field"] == "argv"


def test_schema_error_points_at_field(capsys):
    code, _, doc = run(capsys, "expand", "--poly", '{"coeffs":["1","0.5"]}')
    assert code == 1 and doc["error"]["field"] == "coeffs[1]"
    code, _, doc = run(capsys, "coadd", "--poly", "{not json")
    assert code == 1 and doc["error"]["field"] == "poly"
    code, _, doc = run(capsys, "witt-census", "--prime", "2", "--degree", "3")
    assert code == 1 and doc["error"]["field"] == "exponent"


def test_domain_and_budget_exit_codes(capsys, monkeypatch):
    assert run(capsys, "expand", "--poly", '{"coeffs":["0","1/2"]}')[0] == 2
    assert run(capsys, "wpc-check", "--order", "Z[i]")[0] == 0
    assert run(capsys, "witt-eval", "--prime", "2", "--exponent", "3", "--degree", "4", "--alpha", "1",
               "--precision", "3")[0] == 2
    assert run(capsys, "compose", "--poly", C2, "--inner", C2, "--degree", "3")[0] == 3
    monkeypatch.setenv("PLETHYS_BUDGET", "10")
    code, _, doc = run(capsys, "witt-census", "--prime", "2", "--exponent", "1", "--degree", "4")
    assert code == 3 and doc["error"]["type"] == "BudgetExceeded"
    assert run(capsys, "witt-census", "--prime", "2", "--exponent", "1", "--degree", "4", "--budget", "1000")[0] == 0


CASES = [
    ("expand", "--poly", '{"coeffs":["0","0","1"]}'),
    ("coadd", "--poly", C2),
    ("comul", "--poly", C2),
    ("compose", "--poly", C2, "--inner", C2),
    ("member", "--poly", '{"arity":2,"terms":[{"exp":[1,1],"c":"1"}]}'),
    ("wpc-check", "--order", "Z[1/2]", "--bound", "12"),
    ("w-lower", "--order", "Z[i]", "--bound", "3", "--max-iters", "2"),
    ("w-upper", "--order", "Z[i]", "--candidates", '[["1","0"],["0","1"]]', "--bound", "10"),
    ("theta-check", "--arity", "2", "--degree", "3"),
    ("axioms", "--degree", "6", "--kind", "plethory"),
    ("witt-eval", "--prime", "2", "--exponent", "3", "--degree", "2", "--alpha", "8", "--poly", C2),
    ("witt-census", "--prime", "2", "--exponent", "1", "--degree", "4"),
    ("torsion-check", "--prime", "3"),
    ("bin-fixed", "--modulus", "2", "--degree", "4", "--sweep", "8"),
    ("bin-compare", "--prime", "2", "--degree", "4", "--sweep", "8"),
]


@pytest.mark.parametrize("argv", CASES, ids=[c[0] for c in CASES])
def test_byte_stable(capsys, argv):
    code1, out1, _ = run(capsys, *argv)
    code2, out2, _ = run(capsys, *argv)
    assert code1 == code2 == 0
    assert out1 == out2
    assert out1 == json.dumps(json.loads(out1), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def test_round_trip_readers(capsys):
    r = run(capsys, *CASES[0])[2]["result"]
    assert IvPoly.from_json(r["expansion"]) == IvPoly.from_dict({1: 1, 2: 2})
    r = run(capsys, *CASES[3])[2]["result"]
    assert IvPoly.from_json(r["composite"]) == IvPoly.from_dict({3: 3, 4: 3})
    r = run(capsys, *CASES[4])[2]["result"]
    assert TensorIvPoly.from_json(r["expansion"]).as_dict() == {(1, 1): 1}
    for case in (CASES[5], CASES[7]):
        r = run(capsys, *case)[2]["result"]
        FinOrder.from_json(r["order"])
    r = run(capsys, *CASES[6])[2]["result"]
    assert "order" not in r and Lattice.from_json(r["lattice"]).contains(("1/2", "1/6"))
    r = run(capsys, "w-lower", "--order", "ZxZ")[2]["result"]
    assert FinOrder.from_json(r["order"]).same_ring(FinOrder.split())
    r = run(capsys, *CASES[7])[2]["result"]
    assert Lattice.from_json(r["order"]["lattice"]) == Lattice.from_generators(2, [(1, 0)])
    r = run(capsys, *CASES[10])[2]["result"]
    assert EvalHom.from_json(r["hom"]).alpha.residue == 8 and r["value"] == "4"
    r = run(capsys, *CASES[13])[2]["result"]
    for coeffs in r["fixed"] + r["embedded"]:
        LambdaTrunc.from_json({"m": r["m"], "N": r["N"], "coeffs": coeffs})
    # the CLI also accepts its own outputs back as inputs
    r = run(capsys, *CASES[7])[2]["result"]
    code, _, doc = run(capsys, "wpc-check", "--order", json.dumps(r["order"]), "--bound", "3")
    assert code == 0
    r = run(capsys, *CASES[0])[2]["result"]
    code, _, doc = run(capsys, "coadd", "--poly", json.dumps(r["expansion"]))
    assert code == 0


def test_input_and_output_files(capsys, tmp_path):
    params = tmp_path / "params.json"
    params.write_text(json.dumps({"prime": 3, "exponent": 1, "degree": 3}))
    out = tmp_path / "out.json"
    assert main(["witt-census", "--input", str(params), "--output", str(out)]) == 0
    assert capsys.readouterr().out == ""
    doc = json.loads(out.read_text())
    assert doc["result"]["count"] == doc["result"]["count_doubled"]
    params.write_text(json.dumps({"poly": {"basis": "binomial", "coeffs": {"2": "1"}}}))
    assert main(["coadd", "--input", str(params)]) == 0
    capsys.readouterr()
    params.write_text(json.dumps({"nonsense": 1}))
    assert main(["coadd", "--input", str(params)]) == 1


def test_console_entry_points():
    for cmd in (["plethys"], [sys.executable, "-m", "plethys"]):
        proc = subprocess.run(cmd + ["torsion-check", "--prime", "2"], capture_output=True, text=True)
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["result"]["verdict"] == "pass"
