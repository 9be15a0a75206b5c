import json

import pytest

from octzorn.cli import main

X = '{"m1":[["1","2"],["3","4"]],"m2":[["0","1"],["1","0"]],"ring":{"kind":"Z"}}'
J = '{"m1":[["0","0"],["0","0"]],"m2":[["1","0"],["0","1"]],"ring":{"kind":"Z"}}'


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_oct_mul(capsys):
    code, out, _ = run(capsys, "oct", "mul", "--x", X, "--y", J, "--json")
    assert code == 0
    assert json.loads(out) == {"m1": [["0", "-1"], ["-1", "0"]], "m2": [["4", "-2"], ["-3", "1"]], "ring": {"kind": "Z"}}


def test_oct_norm_trace_inv(capsys):
    assert run(capsys, "oct", "norm", "--x", X)[1].strip() == "-1"
    assert json.loads(run(capsys, "oct", "trace", "--x", X, "--json")[1]) == {"trace": "5"}
    assert json.loads(run(capsys, "oct", "inv", "--x", J, "--json")[1])["m2"] == [["1", "0"], ["0", "1"]]


def test_oct_bad_input(capsys):
    code, _, err = run(capsys, "oct", "norm", "--x", "{nope")
    assert code == 2 and "ParseError" in err
    code, _, err = run(capsys, "oct", "mul", "--x", X)
    assert code == 2


def test_ring_command(capsys):
    code, out, _ = run(capsys, "ring", '{"kind":"Fp","p":7}', "--json")
    assert (code, out) == (0, '{"kind":"Fp","p":7}\n')
    code, _, err = run(capsys, "ring", '{"kind":"Fp","p":4}')
    assert code == 2 and "InvalidPrime" in err


def test_suslin_command(capsys):
    code, out, _ = run(capsys, "suslin", "--v", "a0,a1", "--w", "b0,b1", "--json")
    data = json.loads(out)
    assert code == 0 and data["det"] == "a0*b0 + a1*b1" and data["det_identity"]
    assert run(capsys, "suslin", "--v", "a0,a1", "--w", "b0")[0] == 2


def test_zorn_commands(capsys):
    code, out, _ = run(capsys, "zorn", "iso", "--json")
    data = json.loads(out)
    assert code == 0 and data["pairs"] == 64 and data["failures"] == [] and data["ok"]
    code, out, _ = run(capsys, "zorn", "check", "--row", "x,0,0,1", "--witness", "0,0,0,1", "--json", "--pairs", "3")
    data = json.loads(out)
    assert code == 0 and data["composition_failures"] == 0 and data["lagrangian_ok"]


def test_g2_commands(capsys):
    code, out, _ = run(capsys, "g2", "derivations", "--field", "Fp", "--p", "7", "--json")
    assert code == 0 and json.loads(out)["dimension"] == 14
    code, out, _ = run(capsys, "g2", "derivations", "--fix-c", "--json")
    assert json.loads(out)["dimension"] == 8
    code, out, _ = run(capsys, "g2", "phi", "--g", "0,1,0,-1,0,0,0,0,1", "--check", "--samples", "5", "--json")
    assert code == 0 and json.loads(out)["failures"] == 0
    assert run(capsys, "g2", "phi", "--g", "2,0,0,0,1,0,0,0,1")[0] == 2
    one = '{"m1":[["1","0"],["0","1"]],"m2":[["0","0"],["0","0"]],"ring":{"kind":"Fp","p":5}}'
    code, out, _ = run(capsys, "g2", "leftmult", "--x", one, "--json")
    assert code == 0 and json.loads(out)["orthogonal"]
    code, _, err = run(capsys, "g2", "leftmult", "--x", J)
    assert code == 2 and "NonUnitNorm" in err


def test_census_and_group_order(capsys):
    code, out, _ = run(capsys, "census", "--q", "2", "--report", "json")
    data = json.loads(out)
    assert code == 0 and len(data) == 5 and all(r["match"] for r in data)
    code, out, _ = run(capsys, "census", "--q", "2")
    assert out.splitlines()[0].split() == ["label", "q", "observed", "predicted", "match"]
    assert json.loads(run(capsys, "group-order", "G2", "--q", "2", "--json")[1]) == {"group": "G2", "orders": {"2": 12096}}
    assert run(capsys, "group-order", "E8")[0] == 2


def test_census_budget_exceeded(capsys):
    code, _, err = run(capsys, "census", "--q", "3", "--budget", "10")
    assert code == 2 and "BudgetExceeded" in err


def test_mk_commands(capsys):
    code, out, _ = run(capsys, "mk", "build", "--f", "x^3+x+1", "--q", "2", "--json", "--check-cover")
    data = json.loads(out)
    assert code == 0
    assert data["F1"] == "x0^3 + x0*x1^2 + x1^3" and data["cover"]["observed"] == 0
    assert json.loads(run(capsys, "mk", "search", "--json")[1]) == {"q": 7, "f": "x^3 + 2"}
    assert run(capsys, "mk", "build", "--f", "x^2+1", "--q", "3")[0] == 2
    assert json.loads(run(capsys, "mk", "build", "--f", "x^3+2", "--q", "7", "--a", "3", "--g-exponent", "11", "--json")[1])["g_exponent_flagged"]


def test_row_witness(capsys):
    code, out, _ = run(capsys, "row-witness", "--n", "3", "--json")
    data = json.loads(out)
    assert code == 0 and data["v"][0] == "x1^3" and data["residual"] == "0"


def test_suite_filter(capsys):
    code, out, _ = run(capsys, "suite", "--filter", "constructions.s*", "--json")
    data = json.loads(out)
    assert code == 0 and [e["label"] for e in data["entries"]] == ["constructions.suslin"]
    code, out, _ = run(capsys, "suite", "--filter", "nothing*")
    assert code == 0 and out.strip().endswith("0/0 passed, 0 failed")
