"""루트계 생성, 좌표 변환, 불변 내적, 최고 루트

노드 번호는 Onishchik–Vinberg 방식을 따른다 (Bourbaki 아님).
  A_r  : 1 - 2 - ... - r
  B_r  : 1 - ... - (r-1) => r        (r 이 짧은 루트)
  C_r  : 1 - ... - (r-1) <= r        (r 이 긴 루트)
  D_r  : 1 - ... - (r-1), (r-2) - r
  G2   : 1 <= 2                      (1 이 짧은 루트)
  F4   : 1 - 2 <= 3 - 4              (1, 2 가 짧은 루트)
  E6   : 1 - 2 - 3 - 4 - 5, 3 - 6
  E7   : 1 - ... - 6, 4 - 7
  E8   : 1 - ... - 7, 5 - 8
각 인자에서 긴 루트의 제곱 길이는 2 이다.
"""

import re
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from errors import BasisMismatch, FactorMismatch, InvalidRank, NoShortRoots

# ── 형 데이터 ──────────────────────────────────────────────
_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 3}
_EXCEPTIONAL_RANKS = {"E": (6, 7, 8), "F": (4,), "G": (2,)}
_EXCEPTIONAL_DIMS = {"G2": 14, "F4": 52, "E6": 78, "E7": 133, "E8": 248}
_EXCEPTIONAL_POSITIVE = {"G2": 6, "F4": 24, "E6": 36, "E7": 63, "E8": 120}

_TYPE_RE = re.compile(r"^\s*([A-GT])\s*\(?\s*(\d+)\s*\)?\s*$")
_ALIAS_RE = re.compile(r"^\s*(so|sp|sl)\s*\(\s*(\d+)\s*\)\s*$")


class Basis(Enum):
    SIMPLE_ROOT = "simple"
    FUNDAMENTAL = "fundamental"


@dataclass(frozen=True, order=True)
class SimpleType:
    family: str
    rank: int

    def __post_init__(self):
        if self.family in _MIN_RANK:
            if self.rank < _MIN_RANK[self.family]:
                raise InvalidRank(f"{self.family}{self.rank}: 랭크는 {_MIN_RANK[self.family]} 이상이어야 함")
        elif self.family in _EXCEPTIONAL_RANKS:
            if self.rank not in _EXCEPTIONAL_RANKS[self.family]:
                raise InvalidRank(f"{self.family}{self.rank}: 존재하지 않는 예외형")
        else:
            raise InvalidRank(f"알 수 없는 계열 '{self.family}'")

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"

    @property
    def dim(self) -> int:
        r = self.rank
        if self.family == "A":
            return r * r + 2 * r
        if self.family in ("B", "C"):
            return 2 * r * r + r
        if self.family == "D":
            return 2 * r * r - r
        return _EXCEPTIONAL_DIMS[self.name]

    @property
    def positive_root_count(self) -> int:
        return (self.dim - self.rank) // 2

    @property
    def simply_laced(self) -> bool:
        return self.family in ("A", "D", "E")

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class ReductiveType:
    simple_factors: tuple[SimpleType, ...] = ()
    torus_rank: int = 0

    def __post_init__(self):
        object.__setattr__(self, "simple_factors", tuple(self.simple_factors))
        if self.torus_rank < 0:
            raise InvalidRank("토러스 랭크는 음수일 수 없음")

    @property
    def rank(self) -> int:
        return sum(t.rank for t in self.simple_factors) + self.torus_rank

    @property
    def dim(self) -> int:
        return sum(t.dim for t in self.simple_factors) + self.torus_rank

    @property
    def is_simple(self) -> bool:
        return len(self.simple_factors) == 1 and self.torus_rank == 0

    @property
    def name(self) -> str:
        parts = [t.name for t in self.simple_factors]
        if self.torus_rank:
            parts.append(f"T{self.torus_rank}")
        return "+".join(parts) or "0"

    def __add__(self, other: "ReductiveType") -> "ReductiveType":
        return ReductiveType(self.simple_factors + other.simple_factors,
                             self.torus_rank + other.torus_rank)

    def __str__(self) -> str:
        return self.name


def simple(name: str) -> ReductiveType:
    """'C3' → C3 하나로 된 ReductiveType"""
    return ReductiveType((parse_simple(name),))


def parse_simple(name: str) -> SimpleType:
    m = _TYPE_RE.match(name)
    if not m or m.group(1) == "T":
        raise InvalidRank(f"단순형 이름이 아님: '{name}'")
    return SimpleType(m.group(1), int(m.group(2)))


def parse_type(text: str) -> ReductiveType:
    """'A1+C3+T1', 'so(7)', 'E6' 같은 문자열을 ReductiveType 으로 변환"""
    total = ReductiveType()
    for token in re.split(r"[+,⊕]", text):
        token = token.strip()
        if not token:
            continue
        alias = _ALIAS_RE.match(token)
        if alias:
            total = total + ALIASES[alias.group(1)](int(alias.group(2)))
            continue
        m = _TYPE_RE.match(token)
        if not m:
            raise InvalidRank(f"형 이름을 해석할 수 없음: '{token}'")
        if m.group(1) == "T":
            total = total + ReductiveType((), int(m.group(2)))
        else:
            total = total + ReductiveType((SimpleType(m.group(1), int(m.group(2))),))
    return total


# ── so / sp / sl 별칭 (명시적 변환만) ────────────────────────
def so_alias(n: int) -> ReductiveType:
    """so(n) → B_k / D_k. so(1)=0, so(2)=T1, so(3)=A1, so(4)=A1+A1, so(6)=D3"""
    if n < 1:
        raise InvalidRank(f"so({n})")
    if n == 1:
        return ReductiveType()
    if n == 2:
        return ReductiveType((), 1)
    if n == 3:
        return ReductiveType((SimpleType("A", 1),))
    if n == 4:
        return ReductiveType((SimpleType("A", 1), SimpleType("A", 1)))
    if n % 2:
        return ReductiveType((SimpleType("B", n // 2),))
    return ReductiveType((SimpleType("D", n // 2),))


def sp_alias(n: int) -> ReductiveType:
    """sp(2k) → C_k, sp(2)=A1"""
    if n < 2 or n % 2:
        raise InvalidRank(f"sp({n}): 짝수 크기만 허용")
    if n == 2:
        return ReductiveType((SimpleType("A", 1),))
    return ReductiveType((SimpleType("C", n // 2),))


def sl_alias(n: int) -> ReductiveType:
    """sl(n) → A_{n-1}, sl(1)=0"""
    if n < 1:
        raise InvalidRank(f"sl({n})")
    if n == 1:
        return ReductiveType()
    return ReductiveType((SimpleType("A", n - 1),))


ALIASES = {"so": so_alias, "sp": sp_alias, "sl": sl_alias}


def standard_weight(family: str, n: int) -> tuple[tuple[int, ...], ...]:
    """표준 표현 C^n 의 최고 무게 (별칭이 만드는 인자 순서대로)

    so(3) 은 [2], so(4) 는 [1],[1], 나머지는 1번 노드에 1.
    """
    target = ALIASES[family](n)
    if family == "so" and n == 3:
        return ((2,),)
    if family == "so" and n == 4:
        return ((1,), (1,))
    return tuple(_unit(t.rank, 0) for t in target.simple_factors)


def _unit(rank: int, index: int, coeff: int = 1) -> tuple[int, ...]:
    return tuple(coeff if k == index else 0 for k in range(rank))


# ── 카르탄 행렬과 내적 ────────────────────────────────────────
@lru_cache(maxsize=None)
def node_lengths(t: SimpleType) -> tuple[Fraction, ...]:
    """단순근의 제곱 길이"""
    r, two, one = t.rank, Fraction(2), Fraction(1)
    if t.family == "B":
        return (two,) * (r - 1) + (one,)
    if t.family == "C":
        return (one,) * (r - 1) + (two,)
    if t.family == "G":
        return (Fraction(2, 3), two)
    if t.family == "F":
        return (one, one, two, two)
    return (two,) * r


@lru_cache(maxsize=None)
def edges(t: SimpleType) -> tuple[tuple[int, int], ...]:
    """딘킨 도형의 변 (0부터 센 노드 번호)"""
    r = t.rank
    if t.family == "D":
        return tuple((i, i + 1) for i in range(r - 2)) + ((r - 3, r - 1),)
    if t.family == "E":
        branch = {6: (2, 5), 7: (3, 6), 8: (4, 7)}[r]
        return tuple((i, i + 1) for i in range(r - 2)) + (branch,)
    return tuple((i, i + 1) for i in range(r - 1))


@lru_cache(maxsize=None)
def neighbours(t: SimpleType) -> tuple[frozenset[int], ...]:
    nbrs: list[set[int]] = [set() for _ in range(t.rank)]
    for i, j in edges(t):
        nbrs[i].add(j)
        nbrs[j].add(i)
    return tuple(frozenset(s) for s in nbrs)


@lru_cache(maxsize=None)
def form_matrix(t: SimpleType) -> tuple[tuple[Fraction, ...], ...]:
    """(α_i, α_j). 인접 노드는 -max(|α_i|², |α_j|²)/2"""
    lengths = node_lengths(t)
    form = [[Fraction(0)] * t.rank for _ in range(t.rank)]
    for i in range(t.rank):
        form[i][i] = lengths[i]
    for i, j in edges(t):
        form[i][j] = form[j][i] = -max(lengths[i], lengths[j]) / 2
    return tuple(tuple(row) for row in form)


@lru_cache(maxsize=None)
def cartan_matrix(t: SimpleType) -> tuple[tuple[int, ...], ...]:
    """cartan[i][j] = 2(α_i, α_j)/(α_j, α_j)"""
    form = form_matrix(t)
    rows = []
    for i in range(t.rank):
        row = []
        for j in range(t.rank):
            value = 2 * form[i][j] / form[j][j]
            assert value.denominator == 1
            row.append(int(value))
        rows.append(tuple(row))
    return tuple(rows)


@lru_cache(maxsize=None)
def inverse_cartan(t: SimpleType) -> tuple[tuple[Fraction, ...], ...]:
    """기본 무게를 단순근으로 쓰는 계수 (π_i = Σ_j inv[i][j] α_j)"""
    cartan = cartan_matrix(t)
    dm = DomainMatrix([[QQ(x) for x in row] for row in cartan], (t.rank, t.rank), QQ)
    inv = dm.inv().to_list()
    return tuple(
        tuple(Fraction(int(x.numerator), int(x.denominator)) for x in row)
        for row in inv
    )


# ── 루트 생성 ──────────────────────────────────────────────
@lru_cache(maxsize=None)
def _positive_roots(t: SimpleType) -> tuple[tuple[int, ...], ...]:
    """루트 끈 닫힘으로 양의 루트를 높이 순서대로 생성

    β + α_i 가 루트 ⟺ q - <β, α_i^∨> > 0, q 는 β - kα_i 가 루트인 최대 k.
    """
    n = t.rank
    cartan = cartan_matrix(t)
    nbrs = neighbours(t)
    layer = [_unit(n, i) for i in range(n)]
    found = set(layer)
    ordered = list(layer)
    while layer:
        upper: set[tuple[int, ...]] = set()
        for beta in layer:
            support = [i for i, c in enumerate(beta) if c]
            candidates = set(support)
            for i in support:
                candidates |= nbrs[i]
            for i in candidates:
                pairing = 2 * beta[i] + sum(beta[j] * cartan[j][i] for j in nbrs[i] if beta[j])
                if pairing >= 0:
                    q = 0
                    probe = beta
                    while probe[i] > 0:
                        probe = probe[:i] + (probe[i] - 1,) + probe[i + 1:]
                        if probe not in found:
                            break
                        q += 1
                    if q <= pairing:
                        continue
                raised = beta[:i] + (beta[i] + 1,) + beta[i + 1:]
                if raised not in found:
                    upper.add(raised)
        layer = sorted(upper)
        found.update(layer)
        ordered.extend(layer)
    return tuple(ordered)


def pairing_with_simple(t: SimpleType, beta: tuple, i: int) -> Fraction:
    """(β, α_i), β 는 단순근 좌표"""
    form = form_matrix(t)
    return beta[i] * form[i][i] + sum((beta[j] * form[j][i] for j in neighbours(t)[i] if beta[j]), Fraction(0))


def root_length_of(t: SimpleType, beta: tuple) -> Fraction:
    """(β, β) = Σ β_i² |α_i|² + 2 Σ_변 β_i β_j (α_i, α_j)"""
    form = form_matrix(t)
    total = sum((beta[i] * beta[i] * form[i][i] for i in range(t.rank) if beta[i]), Fraction(0))
    for i, j in edges(t):
        if beta[i] and beta[j]:
            total += 2 * beta[i] * beta[j] * form[i][j]
    return total


@dataclass(frozen=True)
class FactorRoots:
    """단순 인자 하나의 루트 데이터"""

    simple: SimpleType
    cartan: tuple[tuple[int, ...], ...]
    positive_roots: tuple[tuple[int, ...], ...]
    root_lengths: tuple[Fraction, ...]
    _index: dict = field(repr=False, compare=False, hash=False, default_factory=dict)

    @property
    def roots(self) -> frozenset[tuple[int, ...]]:
        return frozenset(self.positive_roots) | frozenset(tuple(-c for c in r) for r in self.positive_roots)

    def length_of(self, root: tuple[int, ...]) -> Fraction | None:
        """루트면 제곱 길이, 아니면 None"""
        if any(Fraction(c).denominator != 1 for c in root):
            return None
        key = tuple(int(c) for c in root)
        if any(c < 0 for c in key):
            key = tuple(-c for c in key)
        idx = self._index.get(key)
        return None if idx is None else self.root_lengths[idx]


@lru_cache(maxsize=None)
def factor_roots(t: SimpleType) -> FactorRoots:
    positive = _positive_roots(t)
    if t.simply_laced:
        lengths = (Fraction(2),) * len(positive)
    else:
        lengths = tuple(root_length_of(t, beta) for beta in positive)
    return FactorRoots(
        simple=t,
        cartan=cartan_matrix(t),
        positive_roots=positive,
        root_lengths=lengths,
        _index={beta: k for k, beta in enumerate(positive)},
    )


@dataclass(frozen=True)
class RootSystem:
    type: ReductiveType
    factors: tuple[FactorRoots, ...]

    @property
    def positive_roots(self) -> list[tuple[int, tuple[int, ...]]]:
        """(인자 번호, 단순근 좌표) 목록"""
        return [(k, beta) for k, f in enumerate(self.factors) for beta in f.positive_roots]

    @property
    def roots(self) -> set[tuple[int, tuple[int, ...]]]:
        return {(k, beta) for k, f in enumerate(self.factors) for beta in f.roots}

    @property
    def cartan(self) -> tuple:
        return tuple(f.cartan for f in self.factors)

    @property
    def root_lengths(self) -> dict[tuple[int, tuple[int, ...]], Fraction]:
        return {
            (k, beta): f.root_lengths[i]
            for k, f in enumerate(self.factors)
            for i, beta in enumerate(f.positive_roots)
        }

    def factor(self, index: int) -> FactorRoots:
        if not 0 <= index < len(self.factors):
            raise FactorMismatch(f"인자 번호 {index} 가 범위를 벗어남 ({self.type.name})")
        return self.factors[index]


@lru_cache(maxsize=None)
def build_root_system(type: ReductiveType) -> RootSystem:
    """ReductiveType 의 루트계. 토러스는 루트가 없다."""
    return RootSystem(type, tuple(factor_roots(t) for t in type.simple_factors))


# ── 무게 벡터 ──────────────────────────────────────────────
@dataclass(frozen=True)
class WeightVector:
    factor_index: int
    coords: tuple[Fraction, ...]
    basis: Basis = Basis.FUNDAMENTAL

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in self.coords))

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)

    @property
    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coords)

    def __str__(self) -> str:
        symbol = "π" if self.basis is Basis.FUNDAMENTAL else "α"
        terms = []
        for i, c in enumerate(self.coords, start=1):
            if c == 0:
                continue
            coeff = "" if c == 1 else f"{c}"
            terms.append(f"{coeff}{symbol}{i}")
        return " + ".join(terms) or "0"


Weight = tuple[WeightVector, ...]


def weight(coords_per_factor, basis: Basis = Basis.FUNDAMENTAL) -> Weight:
    """인자별 좌표 목록 → WeightVector 튜플"""
    return tuple(WeightVector(k, tuple(c), basis) for k, c in enumerate(coords_per_factor))


def zero_weight(type: ReductiveType) -> Weight:
    return weight([(0,) * t.rank for t in type.simple_factors])


def _check_factor(rs: RootSystem, v: WeightVector) -> SimpleType:
    t = rs.factor(v.factor_index).simple
    if len(v.coords) != t.rank:
        raise FactorMismatch(f"{t.name} 에 길이 {len(v.coords)} 벡터")
    return t


def _checked(rs: RootSystem, lam: Weight) -> Weight:
    if len(lam) != len(rs.factors):
        raise FactorMismatch(f"{rs.type.name} 에 인자 {len(lam)}개짜리 무게")
    for v in lam:
        _check_factor(rs, v)
    return lam


def fundamental_weight(rs: RootSystem, coords_per_factor) -> Weight:
    """기본 무게 좌표로 무게를 만들고 인자 수와 랭크를 확인"""
    return _checked(rs, weight(coords_per_factor, Basis.FUNDAMENTAL))


def simple_root_weight(rs: RootSystem, coords_per_factor) -> Weight:
    return _checked(rs, weight(coords_per_factor, Basis.SIMPLE_ROOT))


def convert_basis(rs: RootSystem, v: WeightVector, target: Basis) -> WeightVector:
    """기본 무게 ↔ 단순근 좌표. 역방향 결과는 유리수일 수 있다."""
    t = _check_factor(rs, v)
    if v.basis is target:
        return v
    n = t.rank
    if target is Basis.SIMPLE_ROOT:
        inv = inverse_cartan(t)
        coords = tuple(sum((v.coords[i] * inv[i][j] for i in range(n)), Fraction(0)) for j in range(n))
    else:
        cartan = cartan_matrix(t)
        coords = tuple(sum((v.coords[i] * cartan[i][j] for i in range(n)), Fraction(0)) for j in range(n))
    return WeightVector(v.factor_index, coords, target)


def inner_product(rs: RootSystem, u: WeightVector, v: WeightVector) -> Fraction:
    """W-불변 내적. 인자마다 긴 루트 제곱 길이 2"""
    if u.factor_index != v.factor_index:
        raise FactorMismatch(f"인자 {u.factor_index} 와 {v.factor_index} 의 내적")
    t = _check_factor(rs, u)
    _check_factor(rs, v)
    lengths = node_lengths(t)
    if v.basis is Basis.SIMPLE_ROOT and u.basis is Basis.FUNDAMENTAL:
        u, v = v, u
    if u.basis is Basis.SIMPLE_ROOT and v.basis is Basis.FUNDAMENTAL:
        # (α_i, π_j) = δ_ij |α_j|²/2
        return sum((u.coords[i] * v.coords[i] * lengths[i] / 2 for i in range(t.rank)), Fraction(0))
    u = convert_basis(rs, u, Basis.SIMPLE_ROOT)
    v = convert_basis(rs, v, Basis.SIMPLE_ROOT)
    form = form_matrix(t)
    return sum(
        (u.coords[i] * form[i][j] * v.coords[j]
         for i in range(t.rank) if u.coords[i]
         for j in range(t.rank) if v.coords[j]),
        Fraction(0),
    )


def coefficient_sum(v: WeightVector) -> Fraction:
    """단순근 계수의 합 s(v)"""
    if v.basis is not Basis.SIMPLE_ROOT:
        raise BasisMismatch("coefficient_sum 은 단순근 좌표만 받는다 (convert_basis 먼저)")
    return sum(v.coords, Fraction(0))


def root_length(rs: RootSystem, v: WeightVector) -> Fraction:
    return inner_product(rs, v, v)


# ── 특별한 루트 ────────────────────────────────────────────
def highest_root(rs: RootSystem, factor: int) -> WeightVector:
    """지배 순서의 최대 루트 δ (단순근 좌표)"""
    roots = rs.factor(factor)
    return WeightVector(factor, roots.positive_roots[-1], Basis.SIMPLE_ROOT)


def dominant_short_root(rs: RootSystem, factor: int) -> WeightVector:
    """짧은 루트 중 지배적인 것 δ_short (B, C, F4, G2 만)"""
    roots = rs.factor(factor)
    if roots.simple.simply_laced:
        raise NoShortRoots(f"{roots.simple.name} 에는 짧은 루트가 없음")
    short = [beta for beta, length in zip(roots.positive_roots, roots.root_lengths) if length < 2]
    return WeightVector(factor, short[-1], Basis.SIMPLE_ROOT)
