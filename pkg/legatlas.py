"""legatlas: 르장드르 등질 부분다양체 분류표 검증 CLI

사용법:
    python legatlas.py verify-tables [--table 1|2|3|4|diag | --file rows.jsonl] [--json] [--params-max K]
    python legatlas.py verify-theorems [--json]
    python legatlas.py verify-example
    python legatlas.py dim-orbit --type A1+F4 --weight "2;1,0,0,0"
    python legatlas.py weyl-dim --type C3 --weight 0,0,2
    python legatlas.py z-dim --type B3 --label partition:3,2^2
    python legatlas.py jordan --file m.txt [--family so]
    python legatlas.py jordan --witness "SL_fold(3)"
    python legatlas.py fold --name "A2lm1_to_Cl(3)" --fiber 1,1,0

종료 코드: 0 = 모든 검사 통과, 1 = 검사 실패, 2 = 사용법/입력 오류
"""

import argparse
import json
import sys
from pathlib import Path

import config
from atlas import CHECKS, load_bundled, load_dataset, verify_all, verify_curve_example
from errors import LegatlasError
from exactmat import WITNESS_FAMILY, build_witness, is_nilpotent, jordan_type, load_matrix, membership_check
from folding import builtin_folding, fiber_over, restrict_root
from niporb import OrbitLabel, classical_orbit_dim, z_dim_from_label
from repdim import orbit_dim, weyl_dim
from rootcore import Basis, build_root_system, parse_type, weight
from theorems import verify_theorems

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class InputError(LegatlasError):
    """명령행 인자 형식 오류"""


def _parse_weight(text: str, type_name: str):
    """'2;1,0,0,0' → 인자별 기본 무게 좌표"""
    rs = build_root_system(parse_type(type_name))
    chunks = [c for c in text.split(";")] if text.strip() else []
    if len(chunks) != len(rs.factors):
        raise InputError(f"{rs.type.name} 의 단순 인자 {len(rs.factors)}개에 무게 {len(chunks)}개")
    coords = []
    for f, chunk in zip(rs.factors, chunks):
        try:
            values = tuple(int(x) for x in chunk.split(","))
        except ValueError as e:
            raise InputError(f"무게 좌표를 해석할 수 없음: '{chunk}'") from e
        if len(values) != f.simple.rank:
            raise InputError(f"{f.simple.name} 좌표 길이 {len(values)} ≠ {f.simple.rank}")
        coords.append(values)
    return rs, weight(coords)


def _banner(title: str):
    print("=" * 60)
    print(title)
    print("=" * 60)


# ── 명령별 실행 ────────────────────────────────────────────
def run_verify_tables(args) -> int:
    tables = [args.table] if args.table else list(config.TABLE_FILES)
    if args.file:
        records = load_dataset(args.file, args.params_max)
    else:
        records = load_bundled(tables, args.params_max)
    reports = verify_all(records, args.workers)

    if args.json:
        for rep in reports:
            print(json.dumps(rep.to_dict(), ensure_ascii=False))
        return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL

    _banner(f"분류표 검증 ({', '.join(tables) if not args.file else args.file})")
    failed = 0
    for i, rep in enumerate(reports, 1):
        mark = "통과" if rep.passed else "실패"
        print(f"[{i}/{len(reports)}] {rep.record_id:<28} {mark}  "
              + " ".join(f"{name}={rep.status(name)}" for name in CHECKS))
        for c in rep.failures:
            failed += 1
            print(f"  [오류] {c.name}: 기대 {c.expected}, 계산 {c.computed} {c.detail}".rstrip())
    passed = sum(1 for r in reports if r.passed)
    print(f"\n{'=' * 60}")
    print(f"완료: 통과 {passed}개 / 실패 {len(reports) - passed}개 (실패 검사 {failed}개)")
    return EXIT_OK if passed == len(reports) else EXIT_FAIL


def run_verify_theorems(args) -> int:
    records = load_bundled(params_max=args.params_max)
    reports = verify_theorems(records)
    if args.json:
        for rep in reports:
            print(json.dumps(rep.to_dict(), ensure_ascii=False))
        return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL

    _banner("정리 항목 대조")
    for rep in reports:
        print(f"\n[{rep.name}] 항목 {rep.item_count}개")
        for key, ids in rep.matched.items():
            print(f"  ({key}) {', '.join(ids[:4])}{' ...' if len(ids) > 4 else ''}")
        for item in rep.missing:
            print(f"  [오류] 행이 없는 항목: {item}")
        for rid in rep.extra:
            print(f"  [오류] 목록에 없는 행: {rid}")
    ok = all(r.passed for r in reports)
    print(f"\n완료: {'모두 일치' if ok else '불일치 있음'}")
    return EXIT_OK if ok else EXIT_FAIL


def run_verify_example(args) -> int:
    records = load_dataset(config.DATA_DIR / config.TABLE_FILES["1"], args.params_max)
    rep = verify_curve_example(records)
    if args.json:
        print(json.dumps(rep.to_dict(), ensure_ascii=False))
    else:
        _banner(f"(G2, A1) 곡선 차원 셈 ({rep.record_id})")
        for c in rep.checks:
            print(f"  {c.name:<20} {c.status:<5} {c.computed}  {c.detail}")
    return EXIT_OK if rep.passed else EXIT_FAIL


def run_dim_orbit(args) -> int:
    rs, lam = _parse_weight(args.weight, args.type)
    print(orbit_dim(rs, lam))
    return EXIT_OK


def run_weyl_dim(args) -> int:
    rs, lam = _parse_weight(args.weight, args.type)
    print(weyl_dim(rs, lam))
    return EXIT_OK


def run_z_dim(args) -> int:
    print(z_dim_from_label(parse_type(args.type), OrbitLabel.parse(args.label)))
    return EXIT_OK


def run_jordan(args) -> int:
    if args.file:
        m = load_matrix(Path(args.file))
        family = args.family
    else:
        m = build_witness(args.witness)
        family = args.family or WITNESS_FAMILY[args.witness.partition("(")[0]]
    if not is_nilpotent(m):
        print(f"[오류] {m.rows}x{m.cols} 행렬이 멱영이 아님", file=sys.stderr)
        return EXIT_USAGE
    d = jordan_type(m)
    print(d)
    if family:
        if not membership_check(m, family):
            print(f"[오류] 행렬이 {family}({m.rows}) 에 속하지 않음", file=sys.stderr)
            return EXIT_FAIL
        print(f"{family}({m.rows}) 궤도 차원 {classical_orbit_dim(family, m.rows, d)}, "
              f"사영화 {classical_orbit_dim(family, m.rows, d) - 1}")
    return EXIT_OK


def run_fold(args) -> int:
    f = builtin_folding(args.name)
    try:
        target = tuple(int(x) for x in args.fiber.split(","))
    except ValueError as e:
        raise InputError(f"루트 좌표를 해석할 수 없음: '{args.fiber}'") from e
    if len(target) != f.target.rank:
        raise InputError(f"{f.target.name} 좌표 길이 {len(target)} ≠ {f.target.rank}")
    fiber = fiber_over(f, target)
    for beta in fiber:
        print(" ".join(str(int(c)) for c in beta.coords), "→",
              " ".join(str(int(c)) for c in restrict_root(f, beta).coords))
    if not fiber:
        print(f"({f.source.name} 루트 중 {target} 로 가는 것이 없음)")
    return EXIT_OK


COMMANDS = {
    "verify-tables": run_verify_tables,
    "verify-theorems": run_verify_theorems,
    "verify-example": run_verify_example,
    "dim-orbit": run_dim_orbit,
    "weyl-dim": run_weyl_dim,
    "z-dim": run_z_dim,
    "jordan": run_jordan,
    "fold": run_fold,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="legatlas", description="등질 르장드르 부분다양체 분류표 검증")
    parser.add_argument("--data-dir", help=f"데이터셋 폴더 (기본: {config.DATA_DIR})")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-tables", help="분류표 행 검증")
    src = p.add_mutually_exclusive_group()
    src.add_argument("--table", choices=list(config.TABLE_FILES), help="한 표만 (기본: 전부)")
    src.add_argument("--file", help="번들 대신 읽을 JSONL 파일")
    p.add_argument("--json", action="store_true", help="행마다 JSON 한 줄")
    p.add_argument("--params-max", type=int, default=config.PARAMS_MAX, help="무한 족 파라미터 창")
    p.add_argument("--workers", type=int, default=config.WORKERS, help="검증 스레드 수")

    p = sub.add_parser("verify-theorems", help="정리 항목 목록과 대조")
    p.add_argument("--json", action="store_true")
    p.add_argument("--params-max", type=int, default=config.PARAMS_MAX)

    p = sub.add_parser("verify-example", help="(G2, A1) 곡선 예제의 차원 셈")
    p.add_argument("--json", action="store_true")
    p.add_argument("--params-max", type=int, default=config.PARAMS_MAX)

    for name, helptext in (("dim-orbit", "최고 무게 궤도 차원"), ("weyl-dim", "Weyl 차원")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--type", required=True, help="예: A1+F4, so(7)")
        p.add_argument("--weight", required=True, help="인자는 ';', 좌표는 ',' 로 구분")

    p = sub.add_parser("z-dim", help="라벨로 지정한 사영 멱영 궤도의 차원")
    p.add_argument("--type", required=True)
    p.add_argument("--label", required=True, help="long | short | minmin | partition:3,2^2 | bc:2A1")

    p = sub.add_parser("jordan", help="멱영 행렬의 Jordan 형")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--file", help="행렬 텍스트 파일")
    src.add_argument("--witness", help="SL_fold(l) | SO_standard(n) | B3_G2")
    p.add_argument("--family", choices=["sl", "so", "sp"])

    p = sub.add_parser("fold", help="접기로 주어진 루트에 제한되는 원본 루트")
    p.add_argument("--name", required=True, help="A2lm1_to_Cl(l) | Dpp1_to_Bp(p) | E6_to_F4 | D4_to_G2 | B3_to_G2")
    p.add_argument("--fiber", required=True, help="대상 단순근 좌표, 예: 1,1,0")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.data_dir:
        config.DATA_DIR = Path(args.data_dir)
    if getattr(args, "params_max", 0) is not None and getattr(args, "params_max", 0) < 0:
        parser.error("--params-max 는 0 이상이어야 함")
    try:
        return COMMANDS[args.command](args)
    except (LegatlasError, OSError) as e:
        print(f"[오류] {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
