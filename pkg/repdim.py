"""표현론 차원 계산: Weyl 차원 공식, 최고 무게 궤도 차원, 루트 판정"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import lcm

from errors import EmptyMarking, FactorMismatch, NonDominantWeight, SchemaError, ZeroWeight
from rootcore import (
    Basis,
    RootSystem,
    SimpleType,
    Weight,
    WeightVector,
    convert_basis,
    node_lengths,
    weight,
)


def weyl_vector(rs: RootSystem) -> Weight:
    """양의 루트 합의 절반 = 기본 무게의 합"""
    return weight([(1,) * f.simple.rank for f in rs.factors])


def _scaled_half_lengths(t: SimpleType) -> tuple[int, ...]:
    """|α_i|²/2 에 공통 분모를 곱한 정수 (비율만 필요)"""
    halves = [length / 2 for length in node_lengths(t)]
    scale = lcm(*(h.denominator for h in halves))
    return tuple(int(h * scale) for h in halves)


def _dominant_coords(rs: RootSystem, lam: Weight, allow_zero: bool = True) -> list[tuple[int, ...]]:
    """인자별 기본 무게 좌표를 정수로 꺼내고 지배성 검사"""
    if len(lam) != len(rs.factors):
        raise FactorMismatch(f"{rs.type.name} 에 인자 {len(lam)}개짜리 무게")
    coords = []
    for k, v in enumerate(lam):
        if v.factor_index != k:
            raise FactorMismatch(f"인자 순서가 맞지 않음: {v.factor_index} ≠ {k}")
        v = convert_basis(rs, v, Basis.FUNDAMENTAL)
        if any(c < 0 or c.denominator != 1 for c in v.coords):
            raise NonDominantWeight(f"{rs.factors[k].simple.name}: {v} 는 지배적 정수 무게가 아님")
        coords.append(tuple(int(c) for c in v.coords))
    if not allow_zero and not any(any(c) for c in coords):
        raise ZeroWeight(f"{rs.type.name} 의 모든 인자에서 0인 무게")
    return coords


def weyl_dim(rs: RootSystem, lam: Weight) -> int:
    """Π_{α>0} (λ+ϖ, α)/(ϖ, α). 토러스는 1을 곱한다."""
    coords = _dominant_coords(rs, lam)
    numerator, denominator = 1, 1
    for f, m in zip(rs.factors, coords):
        if not any(m):
            continue
        d = _scaled_half_lengths(f.simple)
        shifted = [(mi + 1) * di for mi, di in zip(m, d)]
        for beta in f.positive_roots:
            numerator *= sum(c * s for c, s in zip(beta, shifted) if c)
            denominator *= sum(c * di for c, di in zip(beta, d) if c)
    value = Fraction(numerator, denominator)
    assert value.denominator == 1, f"Weyl 공식이 정수가 아님: {value}"
    return int(value)


def orbit_dim(rs: RootSystem, lam: Weight) -> int:
    """P(V_λ) 의 닫힌 궤도 차원 = #{α>0 : (λ, α) ≠ 0}"""
    coords = _dominant_coords(rs, lam, allow_zero=False)
    total = 0
    for f, m in zip(rs.factors, coords):
        support = [i for i, c in enumerate(m) if c]
        if not support:
            continue
        total += sum(1 for beta in f.positive_roots if any(beta[i] for i in support))
    return total


def nonorthogonal_count(rs: RootSystem, lam: Weight) -> int:
    """#{α ∈ R+ : (λ, α) ≠ 0} 를 내적으로 직접 센다 (orbit_dim 과 같아야 함)"""
    coords = _dominant_coords(rs, lam, allow_zero=False)
    total = 0
    for f, m in zip(rs.factors, coords):
        d = _scaled_half_lengths(f.simple)
        for beta in f.positive_roots:
            if sum(mi * c * di for mi, c, di in zip(m, beta, d)) != 0:
                total += 1
    return total


def flag_dim_marked(rs: RootSystem, marked) -> int:
    """표시된 노드(1부터)에 0이 아닌 계수를 갖는 양의 루트 수

    marked: 인자별 노드 집합의 목록
    """
    if len(marked) != len(rs.factors):
        raise FactorMismatch(f"{rs.type.name} 에 인자 {len(marked)}개짜리 표시")
    if not any(marked):
        raise EmptyMarking(f"{rs.type.name}: 표시된 노드가 없음")
    total = 0
    for f, nodes in zip(rs.factors, marked):
        idx = [n - 1 for n in nodes]
        for n in nodes:
            if not 1 <= n <= f.simple.rank:
                raise FactorMismatch(f"{f.simple.name} 에 노드 {n} 없음")
        total += sum(1 for beta in f.positive_roots if any(beta[i] for i in idx))
    return total


def tangent_sum_dim(dim_m: int, dim_om: int) -> int:
    """T_o Z_m 안에서 m 과 O_m 접공간이 만드는 공간의 차원"""
    return dim_m + dim_om


def tangent_intersection_dim(dim_zm: int, dim_m: int, dim_om: int) -> int:
    """접촉 분포 안에서의 교집합 차원. O_m 이 르장드르면 dim O_m 과 같다."""
    return dim_zm + (dim_m - 1) - tangent_sum_dim(dim_m, dim_om)


# ── 루트 판정 ──────────────────────────────────────────────
@dataclass(frozen=True)
class RootCheck:
    found: bool
    factor: int | None = None
    length: Fraction | None = None

    @property
    def is_long(self) -> bool:
        return self.found and self.length == 2

    @property
    def is_short(self) -> bool:
        return self.found and self.length < 2


def is_root(rs: RootSystem, v) -> RootCheck:
    """v 가 루트인지. 여러 인자에 걸친 무게는 정확히 한 인자에서만 0이 아니어야 한다."""
    if isinstance(v, WeightVector):
        v = (v,)
    nonzero = [w for w in v if not w.is_zero]
    if len(nonzero) != 1:
        return RootCheck(False)
    w = convert_basis(rs, nonzero[0], Basis.SIMPLE_ROOT)
    length = rs.factor(w.factor_index).length_of(w.coords)
    if length is None:
        return RootCheck(False)
    return RootCheck(True, w.factor_index, length)


# ── 표시 계수 복원 ─────────────────────────────────────────
def derive_marks(rs: RootSystem, marked, target_dim: int, bound: int = 6) -> Weight:
    """표시된 노드에 1..bound 계수를 넣어 weyl_dim = target_dim 인 무게를 찾는다

    같은 형·같은 표시를 가진 인자끼리 바꾼 것은 같은 해로 본다.
    그 안에서 사전식으로 가장 큰 것을 돌려준다.
    Raises:
        SchemaError: 해가 없거나 본질적으로 다른 해가 둘 이상일 때
    """
    if len(marked) != len(rs.factors):
        raise FactorMismatch(f"{rs.type.name} 에 인자 {len(marked)}개짜리 표시")
    if not any(marked):
        raise EmptyMarking(f"{rs.type.name}: 표시된 노드가 없음")
    slots = [(k, n - 1) for k, nodes in enumerate(marked) for n in sorted(nodes)]
    groups: dict[tuple, list[int]] = {}
    for k, f in enumerate(rs.factors):
        groups.setdefault((f.simple, tuple(sorted(marked[k]))), []).append(k)

    solutions = []
    for values in product(range(1, bound + 1), repeat=len(slots)):
        coords = [[0] * f.simple.rank for f in rs.factors]
        for (k, i), c in zip(slots, values):
            coords[k][i] = c
        lam = weight(coords)
        if weyl_dim(rs, lam) == target_dim:
            solutions.append(tuple(tuple(c) for c in coords))

    if not solutions:
        raise SchemaError("marked_nodes", f"계수 1..{bound} 안에서 차원 {target_dim} 인 무게가 없음")

    def canonical(sol):
        return tuple(tuple(sorted(sol[k] for k in members)) for members in groups.values())

    if len({canonical(sol) for sol in solutions}) > 1:
        raise SchemaError("marked_nodes", f"차원 {target_dim} 을 주는 표시 계수가 여러 개: {solutions}")
    return weight(max(solutions))
