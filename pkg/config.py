"""데이터셋 경로, 파라미터 창 크기, 탐색 한계 등 전체 설정

사용법:
  1. 이 파일과 같은 폴더에 .env 파일 생성 (또는 시스템 환경변수 설정)
  2. 값은 모두 선택 사항이며 없으면 기본값을 쓴다
  3. python legatlas.py verify-tables 실행
"""

import os
import sys
from pathlib import Path

# ── .env 파일 로드 ────────────────────────────────────────
_env_path = Path(__file__).parent / ".env"
if _env_path.exists():
    with open(_env_path, encoding="utf-8") as _f:
        for _line in _f:
            _line = _line.strip()
            if not _line or _line.startswith("#") or "=" not in _line:
                continue
            _key, _val = _line.split("=", 1)
            _key, _val = _key.strip(), _val.strip().strip('"').strip("'")
            if _key and _val:
                os.environ.setdefault(_key, _val)


def _env_int(key: str, default: int, desc: str, minimum: int = 0) -> int:
    """정수 환경변수를 가져오고, 형식이 틀리면 안내 메시지와 함께 종료"""
    raw = os.getenv(key, "").strip()
    if not raw:
        return default
    try:
        val = int(raw)
    except ValueError:
        val = None
    if val is None or val < minimum:
        print(f"[오류] 환경변수 '{key}' 값 '{raw}' 이(가) 올바르지 않음 — {desc}")
        print(f"       {minimum} 이상의 정수를 {key}=값 으로 지정하세요.")
        sys.exit(1)
    return val


# ── 경로 설정 ──────────────────────────────────────────────
SCRIPT_DIR = Path(os.getenv("SCRIPT_DIR", str(Path(__file__).parent)))
DATA_DIR   = Path(os.getenv("LEGATLAS_DATA_DIR", str(SCRIPT_DIR / "data")))

TABLE_FILES = {
    "1":    "table1.jsonl",
    "2":    "table2.jsonl",
    "3":    "table3.jsonl",
    "4":    "table4.jsonl",
    "diag": "diagonal.jsonl",
}

# ── 검증 설정 ──────────────────────────────────────────────
PARAMS_MAX         = _env_int("LEGATLAS_PARAMS_MAX", 5, "무한 족의 파라미터 창 폭 (최솟값 + K 까지)")
SO_CAP             = _env_int("LEGATLAS_SO_CAP", 200, "족 전개 시 dim g 상한이 되는 so(N)의 N", minimum=1)
MARK_SEARCH_BOUND  = _env_int("LEGATLAS_MARK_SEARCH_BOUND", 6, "표시 계수 탐색 상한", minimum=1)
WORKERS            = _env_int("LEGATLAS_WORKERS", 1, "verify_all 스레드 수", minimum=1)
