import json
from dataclasses import replace

import pytest

import config
from atlas import (
    CHECKS,
    build_record,
    expects_root,
    h0_p1,
    load_dataset,
    load_templates,
    verify_all,
    verify_curve_example,
    verify_pair,
)
from errors import ParseError, SchemaError
from rootcore import ReductiveType, SimpleType, parse_type, weight

CURVE_ROW = {
    "id": "X.01", "g": ["G2"], "h": ["A1"], "rho": [[10]],
    "expected_dim_Om": 1, "z_label": "long", "expected_dim_Zm": 5,
    "legendrian": False, "symmetric": False, "source": "test",
}


def _write(tmp_path, *rows):
    path = tmp_path / "rows.jsonl"
    path.write_text("\n".join(r if isinstance(r, str) else json.dumps(r) for r in rows) + "\n", encoding="utf-8")
    return path


# ── 로드 ──────────────────────────────────────────────────
def test_table1_has_38_templates():
    templates = load_templates(config.DATA_DIR / config.TABLE_FILES["1"])
    assert len(templates) == 38
    assert templates[0].id == "T1.01"
    assert templates[-1].id == "T1.38"


def test_empty_file(tmp_path):
    path = _write(tmp_path, "# 주석만", "")
    assert load_templates(path) == []
    assert load_dataset(path) == []


def test_parse_error_reports_line(tmp_path):
    path = _write(tmp_path, CURVE_ROW, "{not json")
    with pytest.raises(ParseError) as e:
        load_templates(path)
    assert e.value.line == 2


def test_non_object_line(tmp_path):
    with pytest.raises(ParseError):
        load_templates(_write(tmp_path, "[1, 2]"))


@pytest.mark.parametrize("change, field", [
    ({"z_label": None}, "z_label"),
    ({"legendrian": "yes"}, "legendrian"),
    ({"colour": "red"}, "colour"),
    ({"kind": "weird"}, "kind"),
    ({"rho": None}, "rho"),
])
def test_schema_errors(tmp_path, change, field):
    row = {k: v for k, v in {**CURVE_ROW, **change}.items() if v is not None}
    with pytest.raises(SchemaError) as e:
        load_templates(_write(tmp_path, row))
    assert e.value.field == field


def test_duplicate_id(tmp_path):
    with pytest.raises(SchemaError) as e:
        load_templates(_write(tmp_path, CURVE_ROW, CURVE_ROW))
    assert e.value.field == "id"
    assert e.value.line == 2


def test_bad_s_relations(tmp_path):
    path = _write(tmp_path, {**CURVE_ROW, "s_relations": ["<", ">"]})
    with pytest.raises(SchemaError) as e:
        load_dataset(path)
    assert e.value.field == "s_relations"


def test_underivable_marks_are_schema_errors(tmp_path):
    row = {**CURVE_ROW, "marked_nodes": [[1]]}
    del row["rho"]
    # dim m = 11 은 계수 10 이 필요 (탐색 상한 6)
    with pytest.raises(SchemaError) as e:
        load_dataset(_write(tmp_path, row))
    assert e.value.field == "marked_nodes"
    assert "X.01" in str(e.value)


# ── 전개 ──────────────────────────────────────────────────
def test_family_expansion(table1):
    ids = {r.id for r in table1}
    assert "T1.11[n=3]" in ids
    assert "T1.01[p=2,q=2]" not in ids
    r = next(r for r in table1 if r.id == "T1.11[n=3]")
    assert r.h.name == "A1+A1"
    assert [v.coords for v in r.rho] == [(2,), (4,)]
    assert r.params == {"n": 3}


def test_params_window(tmp_path):
    row = {**CURVE_ROW, "g": ["C(n)"], "h": ["A(1)", "so(n)"], "params": {"n": [3, None]},
           "rho": [[2], "2*std"], "expected_dim_Om": "n-1", "expected_dim_Zm": "2*n-1", "legendrian": True}
    records = load_dataset(_write(tmp_path, row), params_max=2)
    assert [r.params["n"] for r in records] == [3, 4, 5]
    assert all(verify_pair(r).passed for r in records)


def test_cases_override(table1):
    by_id = {r.id: r for r in table1}
    assert by_id["T1.04[n=5]"].legendrian
    assert not by_id["T1.04[n=6]"].legendrian


# ── 행 검증 ────────────────────────────────────────────────
@pytest.mark.parametrize("table", list(config.TABLE_FILES))
def test_bundled_tables_pass(table):
    records = load_dataset(config.DATA_DIR / config.TABLE_FILES[table])
    assert records
    failures = [(rep.record_id, c.name, c.detail) for rep in verify_all(records) for c in rep.failures]
    assert failures == []


def test_c2_a1_row(by_id):
    rep = verify_pair(by_id["T1.06"])
    assert rep.passed
    assert rep.check("dim_m").computed == 7
    assert rep.check("dim_Om").computed == 1
    assert rep.check("dim_Zm").computed == 3


def test_g2_a1_row_is_not_legendrian(by_id):
    rep = verify_pair(by_id["T1.31"])
    assert rep.passed
    assert rep.check("dim_Om").computed == 1
    assert rep.check("dim_Zm").computed == 5
    assert rep.check("legendrian").computed is False


def test_e6_f4_row(by_id):
    r = by_id["T3.04"]
    assert r.expected_dim_m == 26
    rep = verify_pair(r)
    assert rep.passed
    assert rep.check("dim_Om").computed == 15
    assert rep.check("dim_Zm").computed == 31
    assert rep.status("s_comparison") == "skip"


def test_b3_g2_row(by_id):
    rep = verify_pair(by_id["T1.23"])
    assert rep.passed
    assert rep.check("dim_m").computed == 7
    assert rep.check("dim_Om").computed == 5
    assert rep.check("dim_Zm").computed == 11
    assert rep.check("s_comparison").computed == ("<",)


def test_derived_marks(by_id):
    assert by_id["T2.06"].rho_derived
    assert by_id["T2.06"].rho[0].coords == (0, 0, 0, 1)
    assert [v.coords for v in by_id["T2.04"].rho] == [(3,), (1,)]
    assert by_id["T4.03[l=2]"].rho[0].coords == (2,)


def test_hermitian_rows(by_id):
    r = by_id["T4.03[l=3]"]
    assert r.kind == "hermitian"
    assert r.h.torus_rank == 1
    assert r.expected_dim_m == (r.g.dim - r.h.dim) // 2
    rep = verify_pair(r)
    assert rep.passed
    assert rep.status("rho_root_class") == "skip"


def test_odd_hermitian_difference(by_id):
    r = replace(by_id["T4.03[l=2]"], h=parse_type("A1"))
    with pytest.raises(SchemaError):
        r.expected_dim_m


# ── 주입한 오류는 해당 검사에서 잡힌다 ─────────────────────
@pytest.mark.parametrize("row, change, check", [
    ("T1.06", {"rho": weight([(4,)])}, "dim_m"),
    ("T1.06", {"expected_dim_Om": 2}, "dim_Om"),
    ("T1.06", {"expected_dim_Zm": 4}, "dim_Zm"),
    ("T1.06", {"legendrian": False}, "legendrian"),
    ("T1.23", {"g": ReductiveType((SimpleType("D", 7),))}, "rho_root_class"),
    ("T1.23", {"s_relations": (">",)}, "s_comparison"),
    ("T1.06", {"rho": weight([(5,)])}, "root_lattice"),
])
def test_injected_faults(by_id, row, change, check):
    rep = verify_pair(replace(by_id[row], **change))
    assert not rep.passed
    assert rep.status(check) == "fail"


def test_legendrian_flag_mismatch_loads_then_fails(tmp_path):
    records = load_dataset(_write(tmp_path, {**CURVE_ROW, "legendrian": True}))
    rep = verify_pair(records[0])
    assert [c.name for c in rep.failures] == ["legendrian"]


def test_report_has_all_checks(by_id):
    rep = verify_pair(by_id["T1.06"])
    assert [c.name for c in rep.checks] == list(CHECKS)
    d = rep.to_dict()
    assert d["pass"] is True
    assert set(d["checks"]) == set(CHECKS)


def test_verify_all_order_is_stable(table1):
    subset = table1[:12]
    one = [rep.record_id for rep in verify_all(subset, workers=1)]
    many = [rep.record_id for rep in verify_all(subset, workers=4)]
    assert one == many == sorted(one)


def test_expects_root():
    assert expects_root(parse_type("G2+G2"), parse_type("G2"))
    assert expects_root(parse_type("B3"), parse_type("G2"))
    assert expects_root(parse_type("A5"), parse_type("C3"))
    assert expects_root(parse_type("D5"), parse_type("B4"))
    assert not expects_root(parse_type("C2"), parse_type("A1"))
    assert not expects_root(parse_type("C5"), parse_type("A1+B2"))


def test_build_record_without_params():
    template = load_templates(config.DATA_DIR / config.TABLE_FILES["3"])[3]
    r = build_record(template)
    assert r.id == "T3.04"
    assert r.symmetric


# ── 곡선 예제 ──────────────────────────────────────────────
def test_curve_example(table1):
    rep = verify_curve_example(table1)
    assert rep.passed
    assert rep.record_id == "T1.31"
    assert rep.check("curve_degree").computed == 10
    assert rep.check("weights_of_m").computed == 11
    assert rep.check("h0_sum").computed == 23
    assert rep.check("dim_M").computed == 11
    assert rep.check("rank_S").computed == 2
    assert rep.check("line_bundle_degrees").computed == [4, 6]


def test_curve_example_pieces_follow_degree(by_id):
    rep = verify_curve_example([replace(by_id["T1.31"], rho=weight([(12,)]))])
    assert rep.check("weights_of_m").computed == 13
    assert rep.check("line_bundle_degrees").computed == [4, 6, 8]
    assert rep.status("line_bundle_degrees") == "fail"
    assert rep.status("rank_S") == "fail"
    assert not rep.passed


def test_curve_example_without_dataset():
    rep = verify_curve_example()
    assert rep.passed
    assert rep.record_id == "G2/A1"


def test_h0_p1():
    assert h0_p1(0) == 1
    assert h0_p1(10) == 11
    assert h0_p1(-1) == 0
