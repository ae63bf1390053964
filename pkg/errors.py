"""legatlas 공통 예외

라이브러리 모듈은 예외를 던지기만 하고, 출력과 종료 코드는 legatlas.py가 담당한다.
"""


class LegatlasError(ValueError):
    """모든 legatlas 예외의 기반 클래스"""


# ── rootcore ──────────────────────────────────────────────
class InvalidRank(LegatlasError):
    """단순형의 랭크가 허용 범위를 벗어남 (A≥1, B≥2, C≥2, D≥3, 예외형 고정)"""


class NoShortRoots(LegatlasError):
    """simply-laced 인자에서 짧은 루트를 요청함"""


class FactorMismatch(LegatlasError):
    """서로 다른 인자(또는 인자 개수가 맞지 않는) 벡터끼리 연산함"""


class BasisMismatch(LegatlasError):
    """단순근 좌표가 필요한 연산에 기본 무게 좌표가 들어옴"""


# ── repdim ────────────────────────────────────────────────
class NonDominantWeight(LegatlasError):
    """기본 무게 좌표에 음수 또는 비정수가 있음"""


class ZeroWeight(LegatlasError):
    """모든 인자에서 0인 무게"""


class EmptyMarking(LegatlasError):
    """표시된 노드 집합이 비어 있음"""


# ── niporb ────────────────────────────────────────────────
class InvalidPartition(LegatlasError):
    """분할이 해당 고전 대수의 멱영 궤도를 나타내지 않음"""


class UnknownLabel(LegatlasError):
    """저장되지 않은 Bala–Carter 라벨 또는 ambient 형과 맞지 않는 라벨"""


# ── exactmat ──────────────────────────────────────────────
class NotNilpotent(LegatlasError):
    """행렬의 size 제곱이 0이 아님"""


class SizeParity(LegatlasError):
    """sp 판정에 홀수 크기 행렬이 들어옴"""


# ── 데이터셋 ──────────────────────────────────────────────
class ParseError(LegatlasError):
    """JSON Lines 또는 행렬 텍스트 파싱 실패. line 은 1부터 센다."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        prefix = f"{line}행: " if line is not None else ""
        super().__init__(f"{prefix}{message}")


class SchemaError(LegatlasError):
    """레코드 필드가 스키마에 맞지 않음. field 에 문제 필드 이름을 담는다."""

    def __init__(self, field: str, message: str, line: int | None = None):
        self.field = field
        self.line = line
        prefix = f"{line}행 " if line is not None else ""
        super().__init__(f"{prefix}'{field}': {message}")


class ExpressionError(SchemaError):
    """파라미터 식을 정수로 평가할 수 없음"""
