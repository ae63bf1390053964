import json

import pytest

from atlas import load_dataset
from errors import ExpressionError
from paramexpr import (
    evaluate,
    evaluate_condition,
    expand_params,
    grid,
    parse_factor,
    reductive_of,
    substitute,
)


def test_evaluate():
    assert evaluate("2*n-3", {"n": 5}) == 7
    assert evaluate(4) == 4
    assert evaluate("(p+q)*2", {"p": 1, "q": 2}) == 6


@pytest.mark.parametrize("expr", ["n/2", "m+1", "__import__('os')", "import os", "", True, 1.5])
def test_evaluate_rejects(expr):
    with pytest.raises(ExpressionError):
        evaluate(expr, {"n": 3})


@pytest.mark.parametrize("expr", ["print(1)", "open(x)", "input()", "exec(n)", "n+abs(n)"])
def test_builtins_are_not_called(expr, capsys):
    with pytest.raises(ExpressionError) as e:
        evaluate(expr, {"n": 3, "x": 1})
    assert "정의되지 않은 이름" in str(e.value)
    assert capsys.readouterr().out == ""


def test_builtin_in_dataset_row_is_rejected(tmp_path, capsys):
    row = {"id": "X.01", "g": ["G2"], "h": ["A1"], "rho": [[10]], "expected_dim_Om": "print(31337)",
           "z_label": "long", "expected_dim_Zm": 5, "legendrian": False, "symmetric": False, "source": "test"}
    path = tmp_path / "rows.jsonl"
    path.write_text(json.dumps(row) + "\n", encoding="utf-8")
    with pytest.raises(ExpressionError):
        load_dataset(path)
    assert "31337" not in capsys.readouterr().out


def test_evaluate_condition():
    assert not evaluate_condition("p*q > 4", {"p": 2, "q": 2})
    assert evaluate_condition("p*q > 4", {"p": 3, "q": 2})
    assert evaluate_condition("n == 5", {"n": 5})
    with pytest.raises(ExpressionError):
        evaluate_condition("n", {"n": 5})


def test_expand_params_dependent_bounds():
    envs = expand_params({"p": [2, None], "q": [2, "p"]}, 2)
    assert [(e["p"], e["q"]) for e in envs] == [(2, 2), (3, 2), (3, 3), (4, 2), (4, 3), (4, 4)]


def test_expand_params_respects_max():
    assert [e["l"] for e in expand_params({"l": [2, 3]}, 10)] == [2, 3]
    assert expand_params({}, 5) == [{}]
    with pytest.raises(ExpressionError):
        expand_params({"L": [1, 2]}, 1)
    with pytest.raises(ExpressionError):
        expand_params({"l": [1]}, 1)


def test_grid_applies_where():
    envs = grid({"p": [2, 3], "q": [2, "p"]}, 5, "p*q > 4")
    assert [(e["p"], e["q"]) for e in envs] == [(3, 2), (3, 3)]


def test_substitute():
    assert substitute("partition:2^2,1^(2*l-4)", {"l": 3}, "z_label") == "partition:2^2,1^2"


def test_parse_factor():
    assert parse_factor("so(n)", {"n": 6}).type.name == "D3"
    assert parse_factor("sp(2*p)", {"p": 1}).type.name == "A1"
    assert parse_factor("T(1)", {}).type.torus_rank == 1
    assert parse_factor("E6", {}).type.name == "E6"
    assert parse_factor("B3", {}).type.name == "B3"
    assert parse_factor("A(l-1)", {"l": 4}).type.name == "A3"


def test_parse_factor_errors():
    with pytest.raises(ExpressionError):
        parse_factor("A(p-1)", {"p": 1})
    with pytest.raises(ExpressionError):
        parse_factor("bogus", {})
    with pytest.raises(ExpressionError):
        parse_factor(3, {})


def test_standard_weights():
    assert parse_factor("so(4)", {}).standard() == ((1,), (1,))
    assert parse_factor("so(3)", {}).standard() == ((2,),)
    assert parse_factor("A(3)", {}).standard() == ((1, 0, 0),)


def test_reductive_of():
    specs = [parse_factor("A1", {}), parse_factor("so(n)", {"n": 5}), parse_factor("T(1)", {})]
    assert reductive_of(specs).name == "A1+B2+T1"
