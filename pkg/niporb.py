"""멱영 궤도 차원: 고전 대수의 분할 공식, 수반 다양체 차원, 예외형 라벨 표

여기서 dim Z 는 항상 사영화한 차원(원뿔 차원 - 1)이다.
"""

import re
from collections import Counter
from dataclasses import dataclass
from enum import Enum

from sympy.utilities.iterables import partitions

from errors import InvalidPartition, UnknownLabel
from repdim import orbit_dim
from rootcore import (
    Basis,
    ReductiveType,
    SimpleType,
    build_root_system,
    convert_basis,
    highest_root,
)

FAMILIES = ("sl", "so", "sp")

# ── 예외형 궤도 (표에서 가져온 두 값만) ─────────────────────
EXCEPTIONAL_ORBITS = {
    ("F4", "Ã1"): (21, "(F4, B4) 대칭 쌍의 Z_short"),
    ("E6", "2A1"): (31, "(E6, F4) 대칭 쌍의 Z_2A1"),
}
_BC_SYNONYMS = {"A1~": "Ã1", "~A1": "Ã1"}

# ── π1 = Z/2 인 쌍과 이중 피복하는 수반 다양체 (메타데이터) ────
DOUBLE_COVER_PAIRS = (
    {"pair": "(C_l+C_l, diag C_l)", "condition": "l >= 1", "cover": "C_2l"},
    {"pair": "(C_l, C_p+C_{l-p})", "condition": "1 <= p <= l-1", "cover": "A_{2l-1}"},
    {"pair": "(so(l), so(l-1))", "condition": "l >= 5", "cover": "so(l+1)"},
    {"pair": "(F4, B4)", "condition": "", "cover": "E6"},
    {"pair": "(B3, G2)", "condition": "", "cover": "B4"},
)


@dataclass(frozen=True)
class Partition:
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p < 1 for p in parts):
            raise InvalidPartition(f"{list(parts)}: 0 이하의 부분")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise InvalidPartition(f"{list(parts)}: 내림차순이 아님")
        object.__setattr__(self, "parts", parts)

    @property
    def total(self) -> int:
        return sum(self.parts)

    def transpose(self) -> "Partition":
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for p in self.parts if p >= i) for i in range(1, self.parts[0] + 1)))

    def multiplicities(self) -> Counter:
        return Counter(self.parts)

    @classmethod
    def from_exponents(cls, pairs) -> "Partition":
        """[(3, 1), (1, 5)] → [3,1,1,1,1,1]. 지수 0 은 버린다."""
        parts: list[int] = []
        for value, count in pairs:
            if count < 0:
                raise InvalidPartition(f"{value}^{count}: 음수 지수")
            parts.extend([value] * count)
        return cls(tuple(sorted(parts, reverse=True)))

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """'3,2^2,1^4' 형식"""
        pairs = []
        for token in text.replace(" ", "").split(","):
            if not token:
                continue
            m = re.fullmatch(r"(\d+)(?:\^\(?(\d+)\)?)?", token)
            if not m:
                raise InvalidPartition(f"분할 토큰을 해석할 수 없음: '{token}'")
            pairs.append((int(m.group(1)), int(m.group(2) or 1)))
        return cls.from_exponents(pairs)

    def __str__(self) -> str:
        tokens = []
        for value in sorted(set(self.parts), reverse=True):
            count = self.parts.count(value)
            tokens.append(str(value) if count == 1 else f"{value}^{count}")
        return "[" + ",".join(tokens) + "]"


def transpose(d: Partition) -> Partition:
    return d.transpose()


class OrbitKind(Enum):
    LONG = "long"
    SHORT = "short"
    PARTITION = "partition"
    BALA_CARTER = "bc"
    MIN_PLUS_MIN = "minmin"


@dataclass(frozen=True)
class OrbitLabel:
    kind: OrbitKind
    partition: Partition | None = None
    name: str | None = None

    @classmethod
    def parse(cls, text: str) -> "OrbitLabel":
        """'long', 'short', 'minmin', 'partition:3,2^2', 'bc:2A1'"""
        text = text.strip()
        head, _, rest = text.partition(":")
        head = head.lower()
        if head == "partition":
            return cls(OrbitKind.PARTITION, partition=Partition.parse(rest))
        if head == "bc":
            name = _BC_SYNONYMS.get(rest.strip(), rest.strip())
            return cls(OrbitKind.BALA_CARTER, name=name)
        for kind in (OrbitKind.LONG, OrbitKind.SHORT, OrbitKind.MIN_PLUS_MIN):
            if head == kind.value and not rest:
                return cls(kind)
        raise UnknownLabel(f"궤도 라벨을 해석할 수 없음: '{text}'")

    def __str__(self) -> str:
        if self.kind is OrbitKind.PARTITION:
            return f"Z{self.partition}"
        if self.kind is OrbitKind.BALA_CARTER:
            return f"Z_{self.name}"
        return {"long": "Z_long", "short": "Z_short", "minmin": "Z_min+min"}[self.kind.value]


# ── 분할 ──────────────────────────────────────────────────
def validate_partition(family: str, n: int, d: Partition) -> bool:
    """so: 짝수 부분의 중복도가 짝수, sp: 홀수 부분의 중복도가 짝수"""
    if family not in FAMILIES:
        raise UnknownLabel(f"알 수 없는 고전 계열 '{family}'")
    if d.total != n:
        return False
    if family == "sp" and n % 2:
        return False
    mult = d.multiplicities()
    if family == "so":
        return all(count % 2 == 0 for part, count in mult.items() if part % 2 == 0)
    if family == "sp":
        return all(count % 2 == 0 for part, count in mult.items() if part % 2 == 1)
    return True


def classical_orbit_dim(family: str, n: int, d: Partition) -> int:
    """원뿔(멱영 궤도) 차원. 사영화 차원은 여기서 1을 뺀다."""
    if not validate_partition(family, n, d):
        raise InvalidPartition(f"{family}({n}) 에서 {d} 는 멱영 궤도가 아님")
    squares = sum(p * p for p in d.transpose().parts)
    odd = sum(1 for p in d.parts if p % 2)
    if family == "sl":
        return n * n - squares
    if family == "so":
        return (n * (n - 1) - (squares - odd)) // 2
    m = n // 2
    return 2 * m * m + m - (squares + odd) // 2


def nilpotent_orbits(family: str, n: int) -> dict[Partition, int]:
    """0이 아닌 멱영 궤도 → 사영화 차원"""
    result = {}
    for p in partitions(n):
        # sympy 는 같은 dict 객체를 재사용한다
        d = Partition.from_exponents(sorted(dict(p).items(), reverse=True))
        if d.parts == (1,) * n or not validate_partition(family, n, d):
            continue
        result[d] = classical_orbit_dim(family, n, d) - 1
    return dict(sorted(result.items(), key=lambda item: -item[1]))


# ── 고전 ambient ─────────────────────────────────────────
def classical_ambient(t: SimpleType) -> tuple[str, int]:
    """A_r → (sl, r+1), B_r → (so, 2r+1), C_r → (sp, 2r), D_r → (so, 2r)"""
    r = t.rank
    if t.family == "A":
        return "sl", r + 1
    if t.family == "B":
        return "so", 2 * r + 1
    if t.family == "C":
        return "sp", 2 * r
    if t.family == "D":
        return "so", 2 * r
    raise UnknownLabel(f"{t.name} 는 고전형이 아님")


def minimal_partition(family: str, n: int) -> Partition:
    """최소 궤도: sl, sp 는 [2,1^{n-2}], so 는 [2^2,1^{n-4}]"""
    if family == "so":
        return Partition.from_exponents([(2, 2), (1, n - 4)])
    return Partition.from_exponents([(2, 1), (1, n - 2)])


def short_partition(t: SimpleType) -> Partition:
    """Z_short 의 분할: C_r 은 [2^2,1^{2r-4}], B_r 은 [3,1^{2r-2}]"""
    if t.family == "C":
        return Partition.from_exponents([(2, 2), (1, 2 * t.rank - 4)])
    if t.family == "B":
        return Partition.from_exponents([(3, 1), (1, 2 * t.rank - 2)])
    raise UnknownLabel(f"{t.name} 의 Z_short 는 분할로 나타낼 수 없음")


# ── Z 차원 ────────────────────────────────────────────────
def z_long_dim(t: SimpleType) -> int:
    """수반 다양체 차원 = orbit_dim(δ)"""
    rs = build_root_system(ReductiveType((t,)))
    delta = convert_basis(rs, highest_root(rs, 0), Basis.FUNDAMENTAL)
    return orbit_dim(rs, (delta,))


def _only_simple(g: ReductiveType, label: OrbitLabel) -> SimpleType:
    if not g.is_simple:
        raise UnknownLabel(f"{label} 는 단순 대수에만 쓸 수 있음 (g = {g.name})")
    return g.simple_factors[0]


def _bala_carter(t: SimpleType, name: str) -> int:
    entry = EXCEPTIONAL_ORBITS.get((t.name, name))
    if entry is None:
        raise UnknownLabel(f"({t.name}, {name}) 는 저장된 예외형 궤도가 아님")
    return entry[0]


def z_dim_from_label(g: ReductiveType, label: OrbitLabel) -> int:
    """라벨이 가리키는 사영화 궤도 Z 의 차원"""
    if label.kind is OrbitKind.LONG:
        return z_long_dim(_only_simple(g, label))
    if label.kind is OrbitKind.SHORT:
        t = _only_simple(g, label)
        if t.family == "F":
            return _bala_carter(t, "Ã1")
        family, n = classical_ambient(t)
        return classical_orbit_dim(family, n, short_partition(t)) - 1
    if label.kind is OrbitKind.PARTITION:
        family, n = classical_ambient(_only_simple(g, label))
        return classical_orbit_dim(family, n, label.partition) - 1
    if label.kind is OrbitKind.BALA_CARTER:
        return _bala_carter(_only_simple(g, label), label.name)
    factors = g.simple_factors
    if len(factors) != 2 or factors[0] != factors[1] or g.torus_rank:
        raise UnknownLabel(f"Z_min+min 은 같은 단순 인자 두 개의 합에만 쓸 수 있음 (g = {g.name})")
    return 2 * (z_long_dim(factors[0]) + 1) - 1
