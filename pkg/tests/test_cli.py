import json

import pytest

from legatlas import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main


def test_weyl_dim(capsys):
    assert main(["weyl-dim", "--type", "C3", "--weight", "0,0,2"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "84"


def test_dim_orbit_with_two_factors(capsys):
    assert main(["dim-orbit", "--type", "A1+F4", "--weight", "2;1,0,0,0"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == str(1 + 15)


def test_z_dim(capsys):
    assert main(["z-dim", "--type", "B3", "--label", "partition:3,2^2"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "11"


def test_jordan_witness(capsys):
    assert main(["jordan", "--witness", "B3_G2"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "[3,2^2]"
    assert "궤도 차원 12" in out


def test_jordan_file(tmp_path, capsys):
    path = tmp_path / "m.txt"
    path.write_text("0 1 0\n0 0 1\n0 0 0\n", encoding="utf-8")
    assert main(["jordan", "--file", str(path)]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "[3]"
    assert main(["jordan", "--file", str(path), "--family", "so"]) == EXIT_FAIL


def test_jordan_not_nilpotent(tmp_path):
    path = tmp_path / "m.txt"
    path.write_text("1 0\n0 1\n", encoding="utf-8")
    assert main(["jordan", "--file", str(path)]) == EXIT_USAGE


def test_fold(capsys):
    assert main(["fold", "--name", "A2lm1_to_Cl(2)", "--fiber", "1,1"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines == ["0 1 1 → 1 1", "1 1 0 → 1 1"]


def test_verify_tables_json(capsys):
    assert main(["verify-tables", "--table", "3", "--json", "--params-max", "2"]) == EXIT_OK
    rows = [json.loads(line) for line in capsys.readouterr().out.splitlines()]
    assert rows
    assert all(row["pass"] for row in rows)
    assert {"T3.04", "T3.05"} <= {row["id"] for row in rows}


def test_verify_tables_failure(tmp_path, capsys):
    row = {"id": "X.01", "g": ["G2"], "h": ["A1"], "rho": [[10]], "expected_dim_Om": 1,
           "z_label": "long", "expected_dim_Zm": 5, "legendrian": True, "symmetric": False, "source": "test"}
    path = tmp_path / "bad.jsonl"
    path.write_text(json.dumps(row) + "\n", encoding="utf-8")
    assert main(["verify-tables", "--file", str(path)]) == EXIT_FAIL
    out = capsys.readouterr().out
    assert "[오류] legendrian" in out
    assert "완료:" in out


def test_verify_theorems_and_example():
    assert main(["verify-theorems", "--params-max", "2"]) == EXIT_OK
    assert main(["verify-example"]) == EXIT_OK


@pytest.mark.parametrize("argv", [
    ["weyl-dim", "--type", "Q9", "--weight", "1"],
    ["weyl-dim", "--type", "A2", "--weight", "1"],
    ["weyl-dim", "--type", "A2", "--weight", "a,b"],
    ["z-dim", "--type", "E7", "--label", "bc:2A1"],
    ["fold", "--name", "E7_to_F4", "--fiber", "1"],
    ["jordan", "--file", "/nonexistent/m.txt"],
    ["verify-tables", "--file", "/nonexistent/rows.jsonl"],
])
def test_input_errors(argv, capsys):
    assert main(argv) == EXIT_USAGE
    assert "[오류]" in capsys.readouterr().err


def test_usage_errors_exit_2():
    with pytest.raises(SystemExit) as e:
        main(["weyl-dim", "--type", "A2"])
    assert e.value.code == 2
    with pytest.raises(SystemExit) as e:
        main(["verify-tables", "--params-max", "-1"])
    assert e.value.code == 2
    with pytest.raises(SystemExit) as e:
        main(["verify-tables", "--table", "1", "--file", "rows.jsonl"])
    assert e.value.code == 2
