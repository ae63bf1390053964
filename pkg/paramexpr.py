"""데이터셋 미니 문법: 파라미터 식, 조건식, 인자 표기

식은 정수, env 에 있는 파라미터 이름, + - * /, 괄호만 허용하고 (다른 이름은 거절)
sympy parse_expr 로 평가한 뒤 정수인지 확인한다.
"""

import re
from dataclasses import dataclass

from sympy import Integer, Rational, Symbol
from sympy.parsing.sympy_parser import parse_expr

from errors import ExpressionError, InvalidRank
from rootcore import ALIASES, ReductiveType, SimpleType, standard_weight

_ALLOWED = re.compile(r"^[0-9a-z_+\-*/() ]+$")
_NAME = re.compile(r"[a-z_][a-z0-9_]*")
_GLOBALS = {"Integer": Integer, "Rational": Rational, "Symbol": Symbol, "__builtins__": {}}
_CONDITION = re.compile(r"^(.+?)\s*(==|!=|<=|>=|<|>)\s*(.+)$")
_FACTOR = re.compile(
    r"^\s*(?:(so|sp|sl|[ABCDT])\s*\(\s*(.+?)\s*\)|(E6|E7|E8|F4|G2)|([ABCDT])(\d+))\s*$"
)


def evaluate(expr, env: dict[str, int] | None = None, field: str = "expr") -> int:
    """정수 또는 문자열 식을 env 아래에서 정수로 평가"""
    if isinstance(expr, bool):
        raise ExpressionError(field, f"불리언은 식이 아님: {expr}")
    if isinstance(expr, int):
        return expr
    if not isinstance(expr, str) or not expr.strip():
        raise ExpressionError(field, f"식이 아님: {expr!r}")
    text = expr.strip()
    if not _ALLOWED.match(text):
        raise ExpressionError(field, f"허용되지 않는 문자가 있음: '{text}'")
    env = env or {}
    unknown = sorted(set(_NAME.findall(text)) - set(env))
    if unknown:
        raise ExpressionError(field, f"'{text}' 에 정의되지 않은 이름: {', '.join(unknown)} (파라미터 {env})")
    try:
        value = parse_expr(text, local_dict={k: Integer(v) for k, v in env.items()},
                           global_dict=dict(_GLOBALS))
    except Exception as e:  # sympy 는 SyntaxError, TokenError 등 여러 예외를 던진다
        raise ExpressionError(field, f"'{text}' 를 해석할 수 없음: {e}") from e
    if not getattr(value, "is_Integer", False):
        raise ExpressionError(field, f"'{text}' 가 정수가 아님 ({value}, 파라미터 {env})")
    return int(value)


def evaluate_condition(text: str, env: dict[str, int], field: str = "where") -> bool:
    """'lhs OP rhs'"""
    m = _CONDITION.match(text.strip())
    if not m:
        raise ExpressionError(field, f"조건식 형식이 아님: '{text}'")
    lhs = evaluate(m.group(1), env, field)
    rhs = evaluate(m.group(3), env, field)
    return {
        "==": lhs == rhs, "!=": lhs != rhs,
        "<": lhs < rhs, "<=": lhs <= rhs,
        ">": lhs > rhs, ">=": lhs >= rhs,
    }[m.group(2)]


def all_conditions(conditions, env: dict[str, int], field: str = "where") -> bool:
    if isinstance(conditions, str):
        conditions = [conditions]
    return all(evaluate_condition(c, env, field) for c in conditions or [])


def expand_params(params: dict, window: int) -> list[dict[str, int]]:
    """각 파라미터를 최솟값부터 min(최댓값, 최솟값 + window) 까지 전개

    경계 식은 앞서 선언된 파라미터를 쓸 수 있다. 최댓값 null 은 무한.
    """
    envs: list[dict[str, int]] = [{}]
    for name, bounds in (params or {}).items():
        if not re.fullmatch(r"[a-z_]+", name):
            raise ExpressionError("params", f"파라미터 이름 '{name}' 은 소문자여야 함")
        if not isinstance(bounds, list) or len(bounds) != 2:
            raise ExpressionError("params", f"'{name}' 범위는 [min, max] 여야 함")
        expanded = []
        for env in envs:
            low = evaluate(bounds[0], env, "params")
            high = low + window
            if bounds[1] is not None:
                high = min(high, evaluate(bounds[1], env, "params"))
            expanded.extend({**env, name: value} for value in range(low, high + 1))
        envs = expanded
    return envs


def substitute(text: str, env: dict[str, int], field: str) -> str:
    """라벨 문자열 안의 괄호 식 '(2*l-4)' 를 정수로 바꾼다"""
    return re.sub(r"\(([^()]*)\)", lambda m: str(evaluate(m.group(1), env, field)), text)


# ── 인자 표기 ──────────────────────────────────────────────
@dataclass(frozen=True)
class FactorSpec:
    """'A(p-1)', 'so(n)', 'T(1)', 'E6' 하나를 평가한 결과"""

    text: str
    family: str
    size: int | None = None

    @property
    def type(self) -> ReductiveType:
        if self.family in ALIASES:
            return ALIASES[self.family](self.size)
        if self.family == "T":
            return ReductiveType((), self.size)
        if self.size is None:
            return ReductiveType((SimpleType(self.family[0], int(self.family[1])),))
        return ReductiveType((SimpleType(self.family, self.size),))

    def standard(self) -> tuple[tuple[int, ...], ...]:
        """표준 표현의 최고 무게 (인자별)"""
        if self.family in ALIASES:
            return standard_weight(self.family, self.size)
        return tuple(tuple(1 if i == 0 else 0 for i in range(t.rank)) for t in self.type.simple_factors)


def parse_factor(text: str, env: dict[str, int], field: str = "h") -> FactorSpec:
    if not isinstance(text, str):
        raise ExpressionError(field, f"인자 표기가 문자열이 아님: {text!r}")
    m = _FACTOR.match(text)
    if not m:
        raise ExpressionError(field, f"인자 표기를 해석할 수 없음: '{text}'")
    if m.group(3):
        spec = FactorSpec(text, m.group(3))
    elif m.group(4):
        spec = FactorSpec(text, m.group(4), int(m.group(5)))
    else:
        spec = FactorSpec(text, m.group(1), evaluate(m.group(2), env, field))
    try:
        spec.type
    except InvalidRank as e:
        raise ExpressionError(field, f"'{text}' (파라미터 {env}): {e}") from e
    return spec


def reductive_of(specs: list[FactorSpec]) -> ReductiveType:
    total = ReductiveType()
    for spec in specs:
        total = total + spec.type
    return total


def grid(params: dict, window: int, where) -> list[dict[str, int]]:
    """expand_params 후 where 조건을 만족하는 것만"""
    return [env for env in expand_params(params, window) if all_conditions(where, env)]
