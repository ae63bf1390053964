"""분류 데이터셋 로드와 행 검증

JSON Lines 한 줄이 표의 한 행(또는 무한 족 하나)이다.
load_templates 는 줄 단위 템플릿을, load_dataset 은 파라미터를 전개한 PairRecord 목록을 돌려준다.
"""

import json
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import config
from errors import EmptyMarking, LegatlasError, ParseError, SchemaError
from niporb import OrbitLabel, z_dim_from_label, z_long_dim
from paramexpr import FactorSpec, all_conditions, evaluate, grid, parse_factor, reductive_of, substitute
from repdim import derive_marks, flag_dim_marked, is_root, nonorthogonal_count, orbit_dim, weyl_dim
from rootcore import (
    Basis,
    ReductiveType,
    SimpleType,
    Weight,
    build_root_system,
    coefficient_sum,
    convert_basis,
    dominant_short_root,
    highest_root,
    so_alias,
    weight,
)

KINDS = ("isotropy", "hermitian", "diagonal")
CHECKS = ("dim_m", "dim_Om", "dim_Zm", "legendrian", "rho_root_class", "s_comparison", "root_lattice")
RELATIONS = ("<", "=", ">")

_REQUIRED = {
    "id": str,
    "g": list,
    "h": list,
    "expected_dim_Om": (int, str),
    "z_label": str,
    "expected_dim_Zm": (int, str),
    "legendrian": bool,
    "symmetric": bool,
    "source": str,
}
_OPTIONAL = {
    "table": (int, str),
    "kind": str,
    "rho": list,
    "marked_nodes": list,
    "params": dict,
    "where": (list, str),
    "cases": list,
    "z_alt_label": str,
    "s_relations": list,
    "note": str,
}
_OVERRIDABLE = {"h", "rho", "marked_nodes", "expected_dim_Om", "z_label", "z_alt_label",
                "expected_dim_Zm", "legendrian", "s_relations", "source"}
_STD = re.compile(r"^\s*(?:(.+?)\s*\*\s*)?std\s*$")


# ── 레코드 ────────────────────────────────────────────────
@dataclass(frozen=True)
class RowTemplate:
    """전개 전의 데이터셋 한 줄"""

    id: str
    table: str
    line: int
    data: dict = field(compare=False)

    @property
    def is_family(self) -> bool:
        return bool(self.data.get("params"))


@dataclass(frozen=True)
class PairRecord:
    id: str
    table: str
    kind: str
    g: ReductiveType
    h: ReductiveType
    rho: Weight
    expected_dim_Om: int
    z_label: OrbitLabel
    expected_dim_Zm: int
    legendrian: bool
    symmetric: bool
    source: str
    params: dict = field(default_factory=dict, compare=False)
    marked_nodes: tuple[frozenset[int], ...] | None = None
    rho_derived: bool = False
    z_alt_label: OrbitLabel | None = None
    s_relations: tuple[str, ...] = ()
    template_id: str = ""
    line: int | None = None

    @property
    def expected_dim_m(self) -> int:
        """isotropy/diagonal: dim g - dim h, hermitian: (dim g - dim h)/2"""
        diff = self.g.dim - self.h.dim
        if self.kind == "hermitian":
            if diff % 2:
                raise SchemaError("h", f"{self.id}: dim g - dim h = {diff} 가 홀수")
            return diff // 2
        return diff

    def rho_text(self) -> str:
        return " ⊕ ".join(f"{t.name}:{v}" for t, v in zip(self.h.simple_factors, self.rho)) or "0"


def _check_fields(data: dict, line: int):
    for key, kind in _REQUIRED.items():
        if key not in data:
            raise SchemaError(key, "필수 필드가 없음", line)
        if not isinstance(data[key], kind):
            raise SchemaError(key, f"타입이 맞지 않음 ({type(data[key]).__name__})", line)
    for key, value in data.items():
        if key in _REQUIRED:
            continue
        if key not in _OPTIONAL:
            raise SchemaError(key, "알 수 없는 필드", line)
        if value is not None and not isinstance(value, _OPTIONAL[key]):
            raise SchemaError(key, f"타입이 맞지 않음 ({type(value).__name__})", line)
    kind = data.get("kind", "isotropy")
    if kind not in KINDS:
        raise SchemaError("kind", f"'{kind}' 는 {KINDS} 중 하나여야 함", line)
    if "rho" not in data and "marked_nodes" not in data:
        raise SchemaError("rho", "rho 와 marked_nodes 가 모두 없음", line)
    for case in data.get("cases") or []:
        if not isinstance(case, dict) or "when" not in case:
            raise SchemaError("cases", "각 case 는 'when' 을 가진 객체여야 함", line)
        extra = set(case) - _OVERRIDABLE - {"when"}
        if extra:
            raise SchemaError("cases", f"덮어쓸 수 없는 필드: {sorted(extra)}", line)


def load_templates(path) -> list[RowTemplate]:
    """JSON Lines 파일 → 템플릿 목록. 빈 줄과 '#' 줄은 건너뛴다.

    Raises:
        ParseError: JSON 이 아닌 줄
        SchemaError: 필드가 스키마에 맞지 않는 줄
    """
    templates = []
    seen: set[str] = set()
    text = Path(path).read_text(encoding="utf-8")
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as e:
            raise ParseError(f"JSON 오류: {e.msg}", line=lineno) from e
        if not isinstance(data, dict):
            raise ParseError("각 줄은 JSON 객체여야 함", line=lineno)
        _check_fields(data, lineno)
        if data["id"] in seen:
            raise SchemaError("id", f"중복 id '{data['id']}'", lineno)
        seen.add(data["id"])
        templates.append(RowTemplate(data["id"], str(data.get("table", "")), lineno, data))
    return templates


# ── 인자별 무게 해석 ──────────────────────────────────────
def _factor_types(spec: FactorSpec) -> tuple[SimpleType, ...]:
    return spec.type.simple_factors


def _resolve_rho_entry(entry, spec: FactorSpec, env: dict, line: int) -> list[tuple[int, ...]]:
    """h 인자 표기 하나에 대한 rho 항목 → 그 인자가 만드는 단순 인자별 좌표"""
    types = _factor_types(spec)
    if not types:
        return []
    if isinstance(entry, (int, str)) and not isinstance(entry, bool):
        text = str(entry).strip()
        if text == "delta":
            coords = []
            for t in types:
                rs = build_root_system(ReductiveType((t,)))
                delta = convert_basis(rs, highest_root(rs, 0), Basis.FUNDAMENTAL)
                coords.append(tuple(int(c) for c in delta.coords))
            return coords
        if text == "0":
            return [(0,) * t.rank for t in types]
        m = _STD.match(text)
        if m:
            k = evaluate(m.group(1), env, "rho") if m.group(1) else 1
            return [tuple(k * c for c in coords) for coords in spec.standard()]
        raise SchemaError("rho", f"'{spec.text}' 에 대한 항목 '{text}' 를 해석할 수 없음", line)
    if isinstance(entry, dict):
        if len(types) != 1:
            raise SchemaError("rho", f"'{spec.text}' 는 단순 인자가 {len(types)}개라 희소 표기를 쓸 수 없음", line)
        coords = [0] * types[0].rank
        for key, value in entry.items():
            node = evaluate(key, env, "rho")
            if not 1 <= node <= types[0].rank:
                raise SchemaError("rho", f"{types[0].name} 에 노드 {node} 없음", line)
            coords[node - 1] += evaluate(value, env, "rho")
        return [tuple(coords)]
    if isinstance(entry, list):
        rows = entry if len(types) > 1 else [entry]
        if len(rows) != len(types) or any(not isinstance(r, list) for r in rows):
            raise SchemaError("rho", f"'{spec.text}' 의 좌표 배열 모양이 맞지 않음", line)
        result = []
        for t, row in zip(types, rows):
            coords = tuple(evaluate(c, env, "rho") for c in row)
            if len(coords) != t.rank:
                raise SchemaError("rho", f"{t.name} 좌표 길이 {len(coords)} ≠ {t.rank}", line)
            result.append(coords)
        return result
    raise SchemaError("rho", f"'{spec.text}' 에 대한 항목 타입을 해석할 수 없음", line)


def _resolve_marks_entry(entry, spec: FactorSpec, env: dict, line: int) -> list[frozenset[int]]:
    types = _factor_types(spec)
    if not types:
        return []
    if entry == "std":
        return [frozenset(i + 1 for i, c in enumerate(coords) if c) for coords in spec.standard()]
    if isinstance(entry, list):
        rows = entry if len(types) > 1 and all(isinstance(r, list) for r in entry) else [entry]
        if len(rows) != len(types):
            raise SchemaError("marked_nodes", f"'{spec.text}' 의 표시 모양이 맞지 않음", line)
        result = []
        for t, row in zip(types, rows):
            nodes = frozenset(evaluate(n, env, "marked_nodes") for n in row)
            if any(not 1 <= n <= t.rank for n in nodes):
                raise SchemaError("marked_nodes", f"{t.name} 범위를 벗어난 노드 {sorted(nodes)}", line)
            result.append(nodes)
        return result
    raise SchemaError("marked_nodes", f"'{spec.text}' 에 대한 항목을 해석할 수 없음", line)


def _per_spec(values, specs, name: str, line: int) -> list:
    if not isinstance(values, list) or len(values) != len(specs):
        raise SchemaError(name, f"h 인자 {len(specs)}개에 항목 {len(values) if isinstance(values, list) else '?'}개", line)
    return values


def _instance_id(template: RowTemplate, env: dict) -> str:
    if not env:
        return template.id
    return template.id + "[" + ",".join(f"{k}={v}" for k, v in env.items()) + "]"


def build_record(template: RowTemplate, env: dict | None = None,
                 mark_bound: int | None = None) -> PairRecord:
    """템플릿 + 파라미터 값 → PairRecord (case 덮어쓰기, 표시 계수 복원 포함)"""
    env = env or {}
    line = template.line
    data = dict(template.data)
    for case in data.get("cases") or []:
        if all_conditions(case["when"], env, "cases"):
            data.update({k: v for k, v in case.items() if k != "when"})
            break

    g_specs = [parse_factor(s, env, "g") for s in data["g"]]
    h_specs = [parse_factor(s, env, "h") for s in data["h"]]
    g, h = reductive_of(g_specs), reductive_of(h_specs)
    kind = data.get("kind", "isotropy")

    marks = None
    if data.get("marked_nodes") is not None:
        marks = []
        for entry, spec in zip(_per_spec(data["marked_nodes"], h_specs, "marked_nodes", line), h_specs):
            marks.extend(_resolve_marks_entry(entry, spec, env, line))
        marks = tuple(marks)

    expected_om = evaluate(data["expected_dim_Om"], env, "expected_dim_Om")
    expected_zm = evaluate(data["expected_dim_Zm"], env, "expected_dim_Zm")
    try:
        label = OrbitLabel.parse(substitute(data["z_label"], env, "z_label"))
        alt = data.get("z_alt_label")
        alt_label = OrbitLabel.parse(substitute(alt, env, "z_alt_label")) if alt else None
    except LegatlasError as e:
        raise SchemaError("z_label", str(e), line) from e

    record = PairRecord(
        id=_instance_id(template, env),
        table=template.table,
        kind=kind,
        g=g,
        h=h,
        rho=(),
        expected_dim_Om=expected_om,
        z_label=label,
        expected_dim_Zm=expected_zm,
        legendrian=data["legendrian"],
        symmetric=data["symmetric"],
        source=data["source"],
        params=dict(env),
        marked_nodes=marks,
        z_alt_label=alt_label,
        template_id=template.id,
        line=line,
    )

    if data.get("rho") is not None:
        coords = []
        for entry, spec in zip(_per_spec(data["rho"], h_specs, "rho", line), h_specs):
            coords.extend(_resolve_rho_entry(entry, spec, env, line))
        rho, derived = weight(coords), False
    else:
        rs = build_root_system(h)
        try:
            rho = derive_marks(rs, [marks[k] for k in range(len(h.simple_factors))],
                               record.expected_dim_m, mark_bound or config.MARK_SEARCH_BOUND)
        except EmptyMarking as e:
            raise SchemaError("marked_nodes", f"{record.id}: {e}", line) from e
        except SchemaError as e:
            raise SchemaError(e.field, f"{record.id}: {e}", line) from e
        derived = True

    relations = data.get("s_relations") or [">"] * len(h.simple_factors)
    if len(relations) != len(h.simple_factors) or any(r not in RELATIONS for r in relations):
        raise SchemaError("s_relations", f"h 의 단순 인자마다 {RELATIONS} 중 하나가 필요함", line)

    return PairRecord(**{**record.__dict__, "rho": rho, "rho_derived": derived,
                         "s_relations": tuple(relations)})


def expand_template(template: RowTemplate, params_max: int | None = None,
                    so_cap: int | None = None) -> list[PairRecord]:
    """무한 족은 파라미터 창 안에서, dim g ≤ dim so(so_cap) 인 것만 전개"""
    data = template.data
    window = config.PARAMS_MAX if params_max is None else params_max
    cap = config.SO_CAP if so_cap is None else so_cap
    if not template.is_family:
        if data.get("where") and not all_conditions(data["where"], {}):
            return []
        return [build_record(template)]
    limit = so_alias(cap).dim
    records = []
    for env in grid(data["params"], window, data.get("where")):
        g = reductive_of([parse_factor(s, env, "g") for s in data["g"]])
        if g.dim > limit:
            continue
        records.append(build_record(template, env))
    return records


def load_dataset(path, params_max: int | None = None, so_cap: int | None = None) -> list[PairRecord]:
    """파일을 읽어 무한 족을 전개한 레코드 목록"""
    records = []
    for template in load_templates(path):
        records.extend(expand_template(template, params_max, so_cap))
    return records


def bundled_path(table: str) -> Path:
    return config.DATA_DIR / config.TABLE_FILES[str(table)]


def load_bundled(tables=None, params_max: int | None = None) -> list[PairRecord]:
    """data/ 아래 번들 데이터셋. tables 를 주지 않으면 전부."""
    records = []
    for key in tables or config.TABLE_FILES:
        records.extend(load_dataset(bundled_path(key), params_max))
    return records


# ── 검증 ──────────────────────────────────────────────────
@dataclass
class CheckResult:
    name: str
    status: str
    expected: object = None
    computed: object = None
    detail: str = ""

    def to_dict(self) -> dict:
        return {"status": self.status, "expected": _plain(self.expected),
                "computed": _plain(self.computed), "detail": self.detail}


@dataclass
class VerificationReport:
    record_id: str
    checks: list[CheckResult] = field(default_factory=list)
    source: str = ""

    @property
    def passed(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    def status(self, name: str) -> str:
        for c in self.checks:
            if c.name == name:
                return c.status
        raise KeyError(name)

    def check(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    @property
    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if c.status == "fail"]

    def to_dict(self) -> dict:
        return {
            "id": self.record_id,
            "source": self.source,
            "pass": self.passed,
            "checks": {c.name: c.to_dict() for c in self.checks},
        }


def _plain(value):
    if isinstance(value, Fraction):
        return str(value) if value.denominator != 1 else int(value)
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value


def _compare(name: str, expected, computed, detail: str = "") -> CheckResult:
    return CheckResult(name, "pass" if expected == computed else "fail", expected, computed, detail)


def expects_root(g: ReductiveType, h: ReductiveType) -> bool:
    """ρ 가 h 의 루트여야 하는 경우: g 가 단순이 아니거나, 아래 네 쌍"""
    if not g.is_simple:
        return True
    if not h.is_simple:
        return False
    big, small = g.simple_factors[0], h.simple_factors[0]
    if (big.name, small.name) in (("B3", "G2"), ("E6", "F4")):
        return True
    if big.family == "A" and small.family == "C" and big.rank == 2 * small.rank - 1:
        return True
    return big.family == "D" and small.family == "B" and big.rank == small.rank + 1


def _relation(a, b) -> str:
    return "<" if a < b else ">" if a > b else "="


def verify_pair(r: PairRecord) -> VerificationReport:
    """(a)~(g) 검사를 순서대로 실행. 실패는 예외가 아니라 보고서 항목이다."""
    report = VerificationReport(r.id, source=r.source)
    rs = build_root_system(r.h)
    computed: dict[str, int] = {}

    def run(name, fn):
        try:
            result = fn()
        except LegatlasError as e:
            result = CheckResult(name, "fail", detail=f"{type(e).__name__}: {e}")
        report.checks.append(result)

    def check_dim_m():
        return _compare("dim_m", r.expected_dim_m, weyl_dim(rs, r.rho),
                        "ρ 는 표시 계수에서 복원됨" if r.rho_derived else "")

    def check_dim_om():
        value = orbit_dim(rs, r.rho)
        computed["dim_Om"] = value
        notes = []
        ok = value == r.expected_dim_Om
        direct = nonorthogonal_count(rs, r.rho)
        if direct != value:
            ok = False
            notes.append(f"내적으로 센 값 {direct}")
        if r.marked_nodes is not None:
            flag = flag_dim_marked(rs, r.marked_nodes)
            notes.append(f"표시 도형 차원 {flag}")
            ok = ok and flag == value
        return CheckResult("dim_Om", "pass" if ok else "fail", r.expected_dim_Om, value, ", ".join(notes))

    def check_dim_zm():
        value = z_dim_from_label(r.g, r.z_label)
        computed["dim_Zm"] = value
        ok = value == r.expected_dim_Zm
        detail = str(r.z_label)
        if r.z_alt_label is not None:
            alt = z_dim_from_label(r.g, r.z_alt_label)
            detail += f", {r.z_alt_label} → {alt}"
            if alt != value:
                ok = False
                detail += " (두 라벨의 차원이 다름)"
        return CheckResult("dim_Zm", "pass" if ok else "fail", r.expected_dim_Zm, value, detail)

    def check_legendrian():
        if "dim_Om" not in computed or "dim_Zm" not in computed:
            return CheckResult("legendrian", "fail", r.legendrian, None, "앞선 차원 계산 실패")
        value = 2 * computed["dim_Om"] + 1 == computed["dim_Zm"]
        return _compare("legendrian", r.legendrian, value,
                        f"2·{computed['dim_Om']}+1 vs {computed['dim_Zm']}")

    def check_root_class():
        if r.kind == "hermitian":
            return CheckResult("rho_root_class", "skip", detail="Hermitian 행")
        expected = expects_root(r.g, r.h)
        found = is_root(rs, r.rho)
        if not expected:
            detail = "ρ 가 h 의 루트" if found.found else ""
            return CheckResult("rho_root_class", "fail" if found.found else "pass", False, found.found, detail)
        if not found.found:
            return CheckResult("rho_root_class", "fail", True, False, "ρ 가 h 의 루트가 아님")
        k = found.factor
        target = dominant_short_root(rs, k) if r.g.is_simple else highest_root(rs, k)
        actual = convert_basis(rs, r.rho[k], Basis.SIMPLE_ROOT)
        what = "δ_short" if r.g.is_simple else "δ"
        ok = actual.coords == target.coords
        return CheckResult("rho_root_class", "pass" if ok else "fail", True, True,
                           f"ρ = {actual}, {what} = {target}")

    def check_s():
        if r.symmetric or r.kind == "hermitian":
            return CheckResult("s_comparison", "skip", detail="대칭 쌍")
        s_rho = sum((coefficient_sum(convert_basis(rs, v, Basis.SIMPLE_ROOT)) for v in r.rho), Fraction(0))
        got = tuple(
            _relation(s_rho, coefficient_sum(highest_root(rs, k)))
            for k in range(len(rs.factors))
        )
        return _compare("s_comparison", r.s_relations, got, f"s(ρ) = {s_rho}")

    def check_lattice():
        if r.symmetric or r.kind == "hermitian":
            return CheckResult("root_lattice", "skip", detail="대칭 쌍")
        integral = all(convert_basis(rs, v, Basis.SIMPLE_ROOT).is_integral for v in r.rho)
        return _compare("root_lattice", True, integral)

    for name, fn in zip(CHECKS, (check_dim_m, check_dim_om, check_dim_zm, check_legendrian,
                                 check_root_class, check_s, check_lattice)):
        run(name, fn)
    return report


def verify_all(records: list[PairRecord], workers: int | None = None) -> list[VerificationReport]:
    """레코드별 verify_pair. 결과는 id 순으로 합친다."""
    workers = workers or config.WORKERS
    if workers <= 1:
        reports = [verify_pair(r) for r in records]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(verify_pair, records))
    return sorted(reports, key=lambda rep: rep.record_id)


# ── 곡선 예제 (G2, A1) ────────────────────────────────────
def h0_p1(degree: int) -> int:
    """P^1 위 O(d) 의 대역 단면 차원 (d ≥ -1)"""
    return max(degree + 1, 0)


def verify_curve_example(records: list[PairRecord] | None = None) -> VerificationReport:
    """(G2, A1) 행의 차원 셈: 곡선 차수, m 의 무게, 선다발 차수, 11 + 5 + 7 = 23, dim M = 11"""
    row = None
    for r in records or []:
        if r.g.name == "G2" and r.h.name == "A1":
            row = r
            break
    rho = row.rho if row is not None else weight([(10,)])
    g, h = ReductiveType((SimpleType("G", 2),)), ReductiveType((SimpleType("A", 1),))
    rs = build_root_system(h)
    report = VerificationReport(row.id if row else "G2/A1", source=row.source if row else "")

    degree = int(rho[0].coords[0])
    report.checks.append(_compare("curve_degree", 10, degree, "L|_O ≅ O(ρ(α^∨))"))

    # m 의 무게는 kα (α = 2π1), k = -degree/2 .. degree/2
    half = degree // 2
    ks = list(range(-half, half + 1))
    report.checks.append(_compare("weights_of_m", weyl_dim(rs, rho), len(ks),
                                  f"k = {ks[0]}..{ks[-1]}"))

    contact_rank = z_long_dim(g.simple_factors[0]) - 1
    report.checks.append(_compare("contact_rank", 4, contact_rank, "rank D = dim Z_long - 1"))

    # D 는 m_{-half} 를, TO^⊥ 는 m_{-(half-1)} 을 버린다. h 와 k ≥ -1 로 나누면 S 가 남는다
    s_weights = [k for k in reversed(ks) if -(half - 2) <= k <= -2]
    report.checks.append(_compare("rank_S", contact_rank - 2, len(s_weights), "rank D - 2"))
    # m_k 가 주는 선다발 차수는 -2k (α = 2π1)
    pieces = [-2 * k for k in s_weights]
    report.checks.append(_compare("line_bundle_degrees", [4, 6], pieces,
                                  ", ".join(f"m_{k}" for k in s_weights)))

    total = h0_p1(degree) + sum(h0_p1(d) for d in pieces)
    report.checks.append(_compare("h0_sum", 23, total,
                                  f"{h0_p1(degree)} + {' + '.join(str(h0_p1(d)) for d in pieces)}"))

    dim_family = g.dim - h.dim
    report.checks.append(_compare("dim_M", 11, dim_family, f"{g.dim} - {h.dim}"))
    report.checks.append(_compare("family_not_maximal", True, total > dim_family, f"{total} > {dim_family}"))
    return report
