"""분류 정리의 항목 목록과 데이터셋 대조

두 목록이 있다.
  long    : 비대칭 isotropy 행 중 르장드르이고 Z = Z_long 인 것 (a)~(l)
  nonlong : 르장드르이고 Z ≠ Z_long 인 것 (a)~(g)
항목은 (g 의 형, h 의 단순 인자별 ρ 좌표의 중복집합) 으로 행과 맞춘다.
"""

from dataclasses import dataclass, field
from typing import Callable

from atlas import PairRecord
from niporb import OrbitKind, classical_ambient
from rootcore import (
    Basis,
    ReductiveType,
    SimpleType,
    build_root_system,
    convert_basis,
    highest_root,
    so_alias,
    sp_alias,
    standard_weight,
)

Signature = tuple[tuple[str, tuple[int, ...]], ...]


def signature(r: PairRecord) -> Signature:
    """h 의 단순 인자 이름과 ρ 좌표 (정렬)"""
    return tuple(sorted(
        (t.name, tuple(int(c) for c in v.coords))
        for t, v in zip(r.h.simple_factors, r.rho)
    ))


def _sig(*pairs) -> Signature:
    return tuple(sorted((name, tuple(coords)) for name, coords in pairs))


def _unit(rank: int, node: int, coeff: int = 1) -> tuple[int, ...]:
    return tuple(coeff if i == node - 1 else 0 for i in range(rank))


def _std_sig(t: ReductiveType, family: str, n: int, scale: int = 1) -> list:
    return [(s.name, tuple(scale * c for c in coords))
            for s, coords in zip(t.simple_factors, standard_weight(family, n))]


def _simple_g(r: PairRecord) -> SimpleType | None:
    return r.g.simple_factors[0] if r.g.is_simple else None


def _fixed(g: str, *pairs) -> Callable[[PairRecord], bool]:
    expected = _sig(*pairs)
    return lambda r: r.g.name == g and signature(r) == expected


# ── long 목록 ─────────────────────────────────────────────
def _c_with_a1_so(r: PairRecord) -> bool:
    """(C_l, A1 + so(l)), ρ = [2] ⊕ 2·표준, l ≥ 3"""
    g = _simple_g(r)
    if g is None or g.family != "C" or g.rank < 3:
        return False
    l = g.rank
    expected = _sig(("A1", (2,)), *_std_sig(so_alias(l), "so", l, 2))
    return signature(r) == expected


def _a_with_two_factors(r: PairRecord) -> bool:
    """(A_{2l-1}, A_{l-1} + A1), ρ = (π1 + π_{l-1}) ⊕ 2π1, l ≥ 3"""
    g = _simple_g(r)
    if g is None or g.family != "A" or g.rank % 2 == 0 or g.rank < 5:
        return False
    l = (g.rank + 1) // 2
    first = tuple(a + b for a, b in zip(_unit(l - 1, 1), _unit(l - 1, l - 1)))
    return signature(r) == _sig((f"A{l - 1}", first), ("A1", (2,)))


def _d_with_a1_c(r: PairRecord) -> bool:
    """(D_2n, A1 + C_n), ρ = [2] ⊕ π2, n ≥ 3"""
    g = _simple_g(r)
    if g is None or g.family != "D" or g.rank % 2 or g.rank < 6:
        return False
    n = g.rank // 2
    return signature(r) == _sig(("A1", (2,)), (f"C{n}", _unit(n, 2)))


LONG_ITEMS = {
    "a": ("(C2, A1), 6π1", _fixed("C2", ("A1", (6,)))),
    "b": ("(C7, C3), 2π3", _fixed("C7", ("C3", (0, 0, 2)))),
    "c": ("(C10, A5), 2π3", _fixed("C10", ("A5", _unit(5, 3, 2)))),
    "d": ("(C16, D6), 2π5", _fixed("C16", ("D6", _unit(6, 5, 2)))),
    "e": ("(C28, E7), 2π1", _fixed("C28", ("E7", _unit(7, 1, 2)))),
    "f": ("(C_l, A1+so(l))", _c_with_a1_so),
    "g": ("(A_{2l-1}, A_{l-1}+A1)", _a_with_two_factors),
    "h": ("(A15, D5), π4+π5", _fixed("A15", ("D5", (0, 0, 0, 1, 1)))),
    "i": ("(A9, A4), π2+π3", _fixed("A9", ("A4", (0, 1, 1, 0)))),
    "j": ("(D8, B4), π3", _fixed("D8", ("B4", (0, 0, 1, 0)))),
    "k": ("(D_2n, A1+C_n)", _d_with_a1_c),
    "l": ("(E7, A1+F4), [2] ⊕ π1", _fixed("E7", ("A1", (2,)), ("F4", _unit(4, 1)))),
}


# ── nonlong 목록 ──────────────────────────────────────────
def _diagonal(r: PairRecord) -> bool:
    """(X+X, diag X), ρ = δ"""
    g = r.g.simple_factors
    if len(g) != 2 or g[0] != g[1] or r.g.torus_rank or r.h != ReductiveType((g[0],)):
        return False
    rs = build_root_system(r.h)
    delta = convert_basis(rs, highest_root(rs, 0), Basis.FUNDAMENTAL)
    return r.rho[0].coords == delta.coords


def _c_split(r: PairRecord) -> bool:
    """(C_l, sp(2p) + sp(2l-2p)), 표준 ⊕ 표준"""
    g = _simple_g(r)
    if g is None or g.family != "C":
        return False
    l = g.rank
    for p in range(1, l):
        expected = _sig(*_std_sig(sp_alias(2 * p), "sp", 2 * p), *_std_sig(sp_alias(2 * l - 2 * p), "sp", 2 * l - 2 * p))
        if signature(r) == expected:
            return True
    return False


def _a_over_c(r: PairRecord) -> bool:
    """(A_{2l-1}, C_l), π2"""
    g = _simple_g(r)
    if g is None or g.family != "A" or g.rank % 2 == 0:
        return False
    l = (g.rank + 1) // 2
    return l >= 2 and signature(r) == _sig((f"C{l}", _unit(l, 2)))


def _so_codim_one(r: PairRecord) -> bool:
    """(so(N), so(N-1)), 표준 표현

    N 은 g = so(N) 의 행렬 크기 (랭크가 아님). N ≥ 5 인 것만: B2 = so(5) 부터.
    """
    g = _simple_g(r)
    if g is None or g.family not in ("B", "D"):
        return False
    _, n = classical_ambient(g)
    return n >= 5 and signature(r) == _sig(*_std_sig(so_alias(n - 1), "so", n - 1))


NONLONG_ITEMS = {
    "a": ("(X+X, diag X), δ", _diagonal),
    "b": ("(C_l, C_p+C_{l-p})", _c_split),
    "c": ("(A_{2l-1}, C_l), π2", _a_over_c),
    "d": ("(so(N), so(N-1)), 행렬 크기 N ≥ 5", _so_codim_one),
    "e": ("(F4, B4), π4", _fixed("F4", ("B4", (0, 0, 0, 1)))),
    "f": ("(E6, F4), π1", _fixed("E6", ("F4", _unit(4, 1)))),
    "g": ("(B3, G2), π1", _fixed("B3", ("G2", (1, 0)))),
}


def _long_selection(r: PairRecord) -> bool:
    return (not r.symmetric and r.kind == "isotropy" and r.legendrian
            and r.z_label.kind is OrbitKind.LONG)


def _nonlong_selection(r: PairRecord) -> bool:
    return r.legendrian and r.z_label.kind is not OrbitKind.LONG


THEOREM_LISTS = {
    "long": (LONG_ITEMS, _long_selection),
    "nonlong": (NONLONG_ITEMS, _nonlong_selection),
}


# ── 대조 ──────────────────────────────────────────────────
@dataclass
class TheoremReport:
    name: str
    matched: dict[str, list[str]] = field(default_factory=dict)
    missing: list[str] = field(default_factory=list)  # 행이 없는 항목
    extra: list[str] = field(default_factory=list)  # 어떤 항목에도 없는 행

    @property
    def passed(self) -> bool:
        return not self.missing and not self.extra

    @property
    def item_count(self) -> int:
        return len(self.matched) + len(self.missing)

    def to_dict(self) -> dict:
        return {"list": self.name, "pass": self.passed, "items": self.item_count,
                "matched": self.matched, "missing": self.missing, "extra": self.extra}


def verify_theorem_list(name: str, records: list[PairRecord]) -> TheoremReport:
    items, selection = THEOREM_LISTS[name]
    report = TheoremReport(name)
    hits: dict[str, list[str]] = {key: [] for key in items}
    for r in records:
        if not selection(r):
            continue
        keys = [key for key, (_, predicate) in items.items() if predicate(r)]
        if not keys:
            report.extra.append(r.id)
        for key in keys:
            hits[key].append(r.id)
    for key, ids in hits.items():
        if ids:
            report.matched[key] = sorted(ids)
        else:
            report.missing.append(f"({key}) {items[key][0]}")
    return report


def verify_theorems(records: list[PairRecord]) -> list[TheoremReport]:
    """두 목록 모두 양방향으로 대조"""
    return [verify_theorem_list(name, records) for name in THEOREM_LISTS]
