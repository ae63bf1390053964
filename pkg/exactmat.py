"""가우스 유리수 위의 정확한 행렬과 Jordan 형

행렬 표현은 sympy DomainMatrix(QQ_I) 를 감싼다. 반올림은 없다.
"""

from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from sympy.polys.domains import QQ, QQ_I
from sympy.polys.matrices import DomainMatrix

from errors import LegatlasError, NotNilpotent, ParseError, SizeParity
from niporb import Partition

WITNESS_NAMES = ("SL_fold", "SO_standard", "B3_G2")


def gaussian(re, im=0):
    """(re, im) 유리수 쌍 → QQ_I 원소"""
    re, im = Fraction(re), Fraction(im)
    return QQ_I(QQ(re.numerator, re.denominator), QQ(im.numerator, im.denominator))


def _to_fraction(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


def parse_entry(text: str) -> tuple[Fraction, Fraction]:
    """'a/b+c/d*i' 형식. 빠진 부분은 0."""
    s = text.strip().replace(" ", "")
    if not s:
        raise ValueError("빈 항목")
    if not s.endswith("i"):
        return Fraction(s), Fraction(0)
    s = s[:-1].rstrip("*")
    split = max(s.rfind("+"), s.rfind("-"))
    if split > 0 and s[split - 1] in "/*":
        raise ValueError(f"항목 형식 오류: '{text}'")
    real, imag = (s[:split], s[split:]) if split > 0 else ("", s)
    if imag in ("", "+"):
        imag = "1"
    elif imag == "-":
        imag = "-1"
    return Fraction(real or 0), Fraction(imag)


def format_entry(re: Fraction, im: Fraction) -> str:
    if not im:
        return str(re)
    imag = {1: "i", -1: "-i"}.get(im, f"{im}*i")
    if not re:
        return imag
    return f"{re}{imag}" if imag.startswith("-") else f"{re}+{imag}"


@dataclass(frozen=True, eq=False)
class ExactMatrix:
    dm: DomainMatrix

    def __post_init__(self):
        object.__setattr__(self, "dm", self.dm.convert_to(QQ_I).to_dense())

    @classmethod
    def from_entries(cls, rows) -> "ExactMatrix":
        """rows: (re, im) 쌍 또는 유리수로 된 2차원 목록"""
        converted = []
        for row in rows:
            converted.append([gaussian(*e) if isinstance(e, tuple) else gaussian(e) for e in row])
        width = len(converted[0]) if converted else 0
        if any(len(r) != width for r in converted):
            raise LegatlasError("행마다 열 수가 다름")
        return cls(DomainMatrix(converted, (len(converted), width), QQ_I))

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "ExactMatrix":
        return cls(DomainMatrix.zeros((rows, cols or rows), QQ_I))

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls(DomainMatrix.eye(n, QQ_I))

    @classmethod
    def from_units(cls, size: int, entries: dict[tuple[int, int], tuple]) -> "ExactMatrix":
        """{(i, j): (re, im)} 로 주어진 희소 항목 (1부터 센 위치)"""
        rows = [[(0, 0)] * size for _ in range(size)]
        for (i, j), value in entries.items():
            rows[i - 1][j - 1] = value
        return cls.from_entries(rows)

    @property
    def rows(self) -> int:
        return self.dm.shape[0]

    @property
    def cols(self) -> int:
        return self.dm.shape[1]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def is_zero(self) -> bool:
        return self.dm.is_zero_matrix

    def entry(self, i: int, j: int) -> tuple[Fraction, Fraction]:
        """0부터 센 위치의 (re, im)"""
        x = self.dm.to_list()[i][j]
        return _to_fraction(x.x), _to_fraction(x.y)

    def entries(self) -> list[list[tuple[Fraction, Fraction]]]:
        return [[(_to_fraction(x.x), _to_fraction(x.y)) for x in row] for row in self.dm.to_list()]

    def trace(self) -> tuple[Fraction, Fraction]:
        total = QQ_I.zero
        for x in self.dm.diagonal():
            total += x
        return _to_fraction(total.x), _to_fraction(total.y)

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.dm.transpose())

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        return ExactMatrix(self.dm + other.dm)

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        return ExactMatrix(self.dm - other.dm)

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix(-self.dm)

    def __mul__(self, other: "ExactMatrix") -> "ExactMatrix":
        return ExactMatrix(self.dm * other.dm)

    def __pow__(self, k: int) -> "ExactMatrix":
        if k == 0:
            return ExactMatrix.identity(self.rows)
        return ExactMatrix(self.dm ** k)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.dm.shape == other.dm.shape and (self.dm - other.dm).is_zero_matrix

    def inverse(self) -> "ExactMatrix":
        return ExactMatrix(self.dm.inv())


def rank(m: ExactMatrix) -> int:
    """분수를 유지하는 가우스 소거로 구한 랭크"""
    return m.dm.rank()


def is_nilpotent(m: ExactMatrix) -> bool:
    return m.is_square and (m ** m.rows).is_zero


def jordan_type(m: ExactMatrix) -> Partition:
    """#{부분 ≥ k} = rank(m^{k-1}) - rank(m^k)

    Raises:
        NotNilpotent: m^size ≠ 0
    """
    if not m.is_square:
        raise LegatlasError(f"정사각 행렬이 아님 ({m.rows}x{m.cols})")
    n = m.rows
    ranks = [n]
    power = ExactMatrix.identity(n)
    for _ in range(n):
        power = power * m
        ranks.append(rank(power))
        if ranks[-1] == 0:
            break
    if ranks[-1] != 0:
        raise NotNilpotent(f"{n}x{n} 행렬의 {n}제곱이 0이 아님")
    at_least = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))] + [0]
    pairs = [(k, at_least[k - 1] - at_least[k]) for k in range(len(at_least) - 1, 0, -1)]
    return Partition.from_exponents(pairs)


def jordan_matrix(d: Partition) -> ExactMatrix:
    """블록 J_{d_1} ⊕ J_{d_2} ⊕ ... (초대각선 1)"""
    entries = {}
    offset = 0
    for block in d.parts:
        for k in range(block - 1):
            entries[(offset + k + 1, offset + k + 2)] = (1, 0)
        offset += block
    return ExactMatrix.from_units(d.total, entries)


# ── 증거 행렬 ──────────────────────────────────────────────
def sl_fold(l: int) -> ExactMatrix:
    """e_{1,2l-1} + e_{2,2l} (크기 2l).

    임의의 0이 아닌 계수에서 Jordan 형이 같으므로 계수는 1로 고정한다.
    """
    if l < 2:
        raise LegatlasError(f"SL_fold({l}): l ≥ 2 필요")
    return ExactMatrix.from_units(2 * l, {(1, 2 * l - 1): (1, 0), (2, 2 * l): (1, 0)})


def so_standard(n: int) -> ExactMatrix:
    """so(n+1) 의 반대칭 행렬. 마지막 열은 (1, √-1, 0, ...), 마지막 행은 그 부호 반전."""
    if n < 2:
        raise LegatlasError(f"SO_standard({n}): n ≥ 2 필요")
    size = n + 1
    return ExactMatrix.from_units(size, {
        (1, size): (1, 0),
        (2, size): (0, 1),
        (size, 1): (-1, 0),
        (size, 2): (0, -1),
    })


def b3_g2() -> ExactMatrix:
    """G2 ⊂ B3 의 7x7 증거 행렬. 랭크 4, 세제곱 0."""
    return ExactMatrix.from_units(7, {
        (1, 7): (1, 0),
        (2, 7): (0, -1),
        (3, 5): (1, 0), (3, 6): (0, -1),
        (4, 5): (0, -1), (4, 6): (-1, 0),
        (5, 3): (-1, 0), (5, 4): (0, 1),
        (6, 3): (0, 1), (6, 4): (1, 0),
        (7, 1): (-1, 0), (7, 2): (0, 1),
    })


WITNESS_FAMILY = {"SL_fold": "sl", "SO_standard": "so", "B3_G2": "so"}


def build_witness(name: str, param: int | None = None) -> ExactMatrix:
    """이름으로 증거 행렬 생성. 'SL_fold(3)' 처럼 괄호 표기도 받는다."""
    if param is None and "(" in name:
        name, _, rest = name.partition("(")
        param = int(rest.rstrip(")"))
    if name == "SL_fold":
        return sl_fold(param)
    if name == "SO_standard":
        return so_standard(param)
    if name == "B3_G2":
        return b3_g2()
    raise LegatlasError(f"알 수 없는 증거 행렬 '{name}' (가능: {', '.join(WITNESS_NAMES)})")


def symplectic_form(n: int) -> ExactMatrix:
    """J = [[0, I], [-I, 0]]"""
    if n % 2:
        raise SizeParity(f"sp 는 짝수 크기만 가능 (size={n})")
    m = n // 2
    entries = {}
    for k in range(1, m + 1):
        entries[(k, m + k)] = (1, 0)
        entries[(m + k, k)] = (-1, 0)
    return ExactMatrix.from_units(n, entries)


def membership_check(m: ExactMatrix, family: str) -> bool:
    """sl: trace 0, so: mᵀ = -m, sp: mᵀJ + Jm = 0"""
    if not m.is_square:
        raise LegatlasError(f"정사각 행렬이 아님 ({m.rows}x{m.cols})")
    if family == "sl":
        return m.trace() == (0, 0)
    if family == "so":
        return m.transpose() == -m
    if family == "sp":
        j = symplectic_form(m.rows)
        return (m.transpose() * j + j * m).is_zero
    raise LegatlasError(f"알 수 없는 계열 '{family}'")


# ── 텍스트 형식 ────────────────────────────────────────────
def parse_matrix(text: str) -> ExactMatrix:
    """행은 줄바꿈, 항목은 공백으로 구분. '#' 줄과 빈 줄은 건너뛴다."""
    rows = []
    width = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            row = [parse_entry(tok) for tok in line.split()]
        except (ValueError, ZeroDivisionError) as e:
            raise ParseError(f"행렬 항목을 해석할 수 없음: {e}", line=lineno) from e
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise ParseError(f"열 수 {len(row)} ≠ {width}", line=lineno)
        rows.append(row)
    if not rows:
        raise ParseError("빈 행렬")
    return ExactMatrix.from_entries(rows)


def load_matrix(path: Path) -> ExactMatrix:
    return parse_matrix(Path(path).read_text(encoding="utf-8"))


def format_matrix(m: ExactMatrix) -> str:
    cells = [[format_entry(re, im) for re, im in row] for row in m.entries()]
    width = max((len(c) for row in cells for c in row), default=1)
    return "\n".join(" ".join(c.rjust(width) for c in row) for row in cells)
