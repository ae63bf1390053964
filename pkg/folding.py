"""딘킨 도형 접기와 루트 제한

접기는 노드 대응표로만 저장한다. 제한된 루트의 k 번째 좌표는
k 로 가는 원본 노드 계수의 합이다.
"""

from dataclasses import dataclass

from errors import LegatlasError
from rootcore import (
    Basis,
    ReductiveType,
    SimpleType,
    WeightVector,
    build_root_system,
)

FOLDING_NAMES = ("A2lm1_to_Cl", "Dpp1_to_Bp", "E6_to_F4", "D4_to_G2", "B3_to_G2")


@dataclass(frozen=True)
class FoldingMap:
    name: str
    source: SimpleType
    target: SimpleType
    node_map: tuple[int, ...]  # node_map[i-1] = 원본 노드 i 가 가는 대상 노드 (1부터)

    def __post_init__(self):
        if len(self.node_map) != self.source.rank:
            raise LegatlasError(f"{self.name}: 대응표 길이가 {self.source.name} 랭크와 다름")
        if set(self.node_map) != set(range(1, self.target.rank + 1)):
            raise LegatlasError(f"{self.name}: {self.target.name} 노드 전체로 가지 않음")

    def fiber_of_node(self, k: int) -> tuple[int, ...]:
        return tuple(i for i, target in enumerate(self.node_map, start=1) if target == k)


def _a_fold(l: int) -> FoldingMap:
    if l < 2:
        raise LegatlasError(f"A2lm1_to_Cl({l}): l ≥ 2 필요")
    return FoldingMap(
        f"A2lm1_to_Cl({l})",
        SimpleType("A", 2 * l - 1),
        SimpleType("C", l),
        tuple(min(i, 2 * l - i) for i in range(1, 2 * l)),
    )


def _d_fold(p: int) -> FoldingMap:
    if p < 2:
        raise LegatlasError(f"Dpp1_to_Bp({p}): p ≥ 2 필요")
    return FoldingMap(
        f"Dpp1_to_Bp({p})",
        SimpleType("D", p + 1),
        SimpleType("B", p),
        tuple(range(1, p)) + (p, p),
    )


_FIXED = {
    "E6_to_F4": (SimpleType("E", 6), SimpleType("F", 4), (1, 2, 3, 2, 1, 4)),
    "D4_to_G2": (SimpleType("D", 4), SimpleType("G", 2), (1, 2, 1, 1)),
    "B3_to_G2": (SimpleType("B", 3), SimpleType("G", 2), (1, 2, 1)),
}


def builtin_folding(name: str, param: int | None = None) -> FoldingMap:
    """'A2lm1_to_Cl(3)' 또는 ('A2lm1_to_Cl', 3)"""
    if param is None and "(" in name:
        name, _, rest = name.partition("(")
        param = int(rest.rstrip(")"))
    if name == "A2lm1_to_Cl":
        return _a_fold(param)
    if name == "Dpp1_to_Bp":
        return _d_fold(param)
    if name in _FIXED:
        source, target, node_map = _FIXED[name]
        return FoldingMap(name, source, target, node_map)
    raise LegatlasError(f"알 수 없는 접기 '{name}' (가능: {', '.join(FOLDING_NAMES)})")


def restrict_root(f: FoldingMap, beta) -> WeightVector:
    """원본 루트(단순근 좌표)를 대상 단순근 좌표로 제한"""
    coords = beta.coords if isinstance(beta, WeightVector) else tuple(beta)
    if len(coords) != f.source.rank:
        raise LegatlasError(f"{f.source.name} 루트의 길이가 아님: {coords}")
    out = [0] * f.target.rank
    for c, k in zip(coords, f.node_map):
        out[k - 1] += c
    return WeightVector(0, tuple(out), Basis.SIMPLE_ROOT)


def _source_roots(f: FoldingMap) -> list[tuple[int, ...]]:
    rs = build_root_system(ReductiveType((f.source,)))
    return sorted(rs.factors[0].roots)


def fiber_over(f: FoldingMap, w) -> list[WeightVector]:
    """w 로 제한되는 원본 루트 전체 (사전식 순서)"""
    target = tuple(w.coords) if isinstance(w, WeightVector) else tuple(w)
    return [
        WeightVector(0, beta, Basis.SIMPLE_ROOT)
        for beta in _source_roots(f)
        if restrict_root(f, beta).coords == target
    ]


def restricted_roots(f: FoldingMap) -> set[tuple]:
    """원본 양의 루트들의 제한 (0 은 나오지 않음)"""
    rs = build_root_system(ReductiveType((f.source,)))
    return {restrict_root(f, beta).coords for beta in rs.factors[0].positive_roots}
