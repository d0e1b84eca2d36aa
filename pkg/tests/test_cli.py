import json

import pytest

from kimloci.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_refined_json(capsys):
    code, out, _ = run(capsys, "verify", "refined", "--s", "2", "--pmin", "3", "--pmax", "40", "--precision", "8")
    assert code == 0
    doc = json.loads(out)
    assert doc["status"] == "verified" and doc["s"] == [2]
    assert {r["p"] for r in doc["results"]} == {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}


def test_verify_refined_empty_path(capsys):
    code, out, _ = run(capsys, "verify", "refined", "--s", "3", "--pmax", "30", "--format", "text")
    assert code == 0 and "empty" in out.splitlines()[-1]


def test_verify_unrefined_to_file(capsys, tmp_path):
    path = tmp_path / "u.json"
    code, _, err = run(capsys, "verify", "unrefined", "--pmax", "60", "--jobs", "2", "--out", str(path))
    assert code == 0 and "verified" in err
    doc = json.loads(path.read_text())
    assert all(r["locus"] == [] for r in doc["results"])


def test_injected_failures_set_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", "refined", "--pmax", "30", "--inject", "counterexample")
    assert code == 1 and json.loads(out)["status"] == "counterexample"
    code, out, _ = run(capsys, "verify", "unrefined", "--pmax", "30", "--inject", "precision-failure",
                       "--max-precision", "16")
    assert code == 2 and json.loads(out)["status"] == "precision-failure"


@pytest.mark.parametrize("argv", [
    ["verify", "refined", "--s", "2,3", "--pmax", "10"],
    ["verify", "sideways"],
    ["depth1"],
    ["eval", "log", "--p", "5", "--z", "0"],
    ["eval", "li", "--p", "9", "--z", "3"],
    ["equations", "--depth", "0"],
    ["points", "--s", "4"],
    ["nonsense"],
])
def test_usage_errors_exit_64(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        raise SystemExit(main(argv))
    assert exc.value.code == 64


def test_depth1(capsys):
    code, out, _ = run(capsys, "depth1", "--p", "7")
    assert code == 0 and out.startswith("p = 7: depth-1 locus {omega(3), omega(5)}")


def test_equations(capsys):
    code, out, _ = run(capsys, "equations", "--s", "2", "--depth", "4", "--sigma", "1")
    assert code == 0
    assert out.splitlines()[:5] == ["log -> 0", "Li_1 -> a[t2]*y2", "Li_2 -> 0", "Li_3 -> a[s3]*z3", "Li_4 -> 0"]
    code, out, _ = run(capsys, "equations", "--s", "2", "--depth", "2", "--json")
    doc = json.loads(out)
    assert doc["dimension"] == 2 and doc["vanishing"] == []
    code, out, _ = run(capsys, "equations", "--s", "2", "--depth", "1", "--specialize", "3", "--precision", "5")
    assert out.splitlines()[0] == "log -> (8*3^1 + O(3^5))*x2"


def test_points(capsys):
    code, out, _ = run(capsys, "points", "--s", "2", "--bound", "4")
    rows = out.splitlines()
    assert code == 0 and [r.split()[0] for r in rows[:3]] == ["-1", "1/2", "2"]
    assert "(x2,y2)=(0,-1)" in rows[0] and "(1)" in rows[0]


def test_eval(capsys):
    assert run(capsys, "eval", "log", "--p", "3", "--precision", "5", "--z", "2")[1].strip() == "8*3^1 + O(3^5)"
    assert run(capsys, "eval", "teich", "--p", "5", "--precision", "3", "--z", "2")[1].strip() == "57*5^0 + O(5^3)"
    assert run(capsys, "eval", "li", "--p", "5", "--precision", "3", "--z", "5")[1].strip() == "16*5^1 + O(5^3)"
    out = run(capsys, "eval", "li", "--p", "5", "--z", "2", "--n", "2")[1]
    assert "li_2(2) = 1 mod 5" in out and "= 4 mod 5" in out


def test_orbit(capsys):
    assert run(capsys, "orbit", "--z", "-1")[1].strip() == "-1 1/2 2"
