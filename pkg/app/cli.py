"""명령행 진입점.

    python -m app.cli validate --fan paper-example
    python -m app.cli theorem --fan paper-example --k 2 --json

종료 코드: 0 성공/참/검증됨, 1 수학적으로 거짓인 판정, 2 사용법/입력 오류.
"""
import argparse
import json
import logging
import sys
from typing import Callable, Dict, Optional, Sequence, Tuple

from pydantic import BaseModel

from app.config.settings import get_settings
from app.models.errors import (
    CurveConditionError,
    FanValidationError,
    HypothesisError,
    NotExtremalError,
    ScheduleExhaustedError,
    ToricError,
)
from app.models.fan import Fan
from app.models.report_model import FanRequest
from app.services.report_service import ReportService, parse_indices, parse_rationals, render_text

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_INPUT = 2

# 입력은 올바르지만 수학적 판정이 "거짓" 인 경우
FALSE_VERDICTS = (CurveConditionError, HypothesisError, NotExtremalError, ScheduleExhaustedError)

report_service = ReportService()


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--fan", help="builtin fan name or path to a fan document (JSON)")
    common.add_argument("--json", action="store_true", help="print the report as JSON")
    common.add_argument("--strict", action="store_true", help="reject non-primitive rays instead of normalizing")

    parser = argparse.ArgumentParser(prog="toric", description="exact toric fan / cone toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("validate", parents=[common], help="check primitive / simplicial / fan / complete")
    sub.add_parser("classes", parents=[common], help="Picard rank, N^1 basis, wall curve classes")
    for name, help_text in (("amp", "Amp^k in N^1 coordinates"), ("ampdual", "Amp^k dual in R^r"), ("mov", "Mov_k in R^r")):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("--k", type=int, required=True)

    p = sub.add_parser("sbl", parents=[common], help="stable base locus of a divisor")
    p.add_argument("--divisor", required=True, help="comma-separated rationals, one per ray")
    p.add_argument("--k", type=int, help="also test dim B(D) < k")

    p = sub.add_parser("polytope", parents=[common], help="section polytope P_D and its lattice points")
    p.add_argument("--divisor", required=True)

    p = sub.add_parser("witness", parents=[common], help="irreducible curve witness on V(tau)")
    p.add_argument("--tau", default="", help="comma-separated ray indices (empty for the zero cone)")
    p.add_argument("--class", dest="curve_class", required=True, help="comma-separated rationals")

    p = sub.add_parser("smallmod", parents=[common], help="projective small modification")
    p.add_argument("--tau", required=True)
    p.add_argument("--rays", required=True, help="ray set S (must contain tau)")

    p = sub.add_parser("decompose", parents=[common], help="decompose an extremal ray of Amp^ell dual")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--class", dest="curve_class", required=True)

    p = sub.add_parser("theorem", parents=[common], help="verify Amp^(n-k) dual = sum of Mov_k over small modifications")
    p.add_argument("--k", type=int, required=True)

    sub.add_parser("examples", parents=[common], help="list builtin fans")
    return parser


Handler = Callable[[argparse.Namespace, Fan], Tuple[BaseModel, int]]


def _validate(args, F):
    report = report_service.validate(F)
    return report, EXIT_OK if report.ok else EXIT_FALSE


def _classes(args, F):
    return report_service.classes(F), EXIT_OK


def _amp(args, F):
    return report_service.amp(F, args.k), EXIT_OK


def _ampdual(args, F):
    return report_service.amp_dual(F, args.k), EXIT_OK


def _mov(args, F):
    return report_service.mov(F, args.k), EXIT_OK


def _sbl(args, F):
    report = report_service.base_locus(F, parse_rationals(args.divisor), args.k)
    return report, EXIT_FALSE if report.dimension_less_than_k is False else EXIT_OK


def _polytope(args, F):
    return report_service.polytope(F, parse_rationals(args.divisor)), EXIT_OK


def _witness(args, F):
    report = report_service.witness(F, parse_indices(args.tau), parse_rationals(args.curve_class))
    return report, EXIT_OK if report.class_matches_target else EXIT_FALSE


def _smallmod(args, F):
    report = report_service.small_modification(F, parse_indices(args.tau), parse_indices(args.rays))
    return report, EXIT_FALSE if report.problems else EXIT_OK


def _decompose(args, F):
    return report_service.decompose(F, args.ell, parse_rationals(args.curve_class)), EXIT_OK


def _theorem(args, F):
    report = report_service.theorem(F, args.k)
    return report, EXIT_OK if report.verdict == "verified" else EXIT_FALSE


HANDLERS: Dict[str, Handler] = {
    "validate": _validate,
    "classes": _classes,
    "amp": _amp,
    "ampdual": _ampdual,
    "mov": _mov,
    "sbl": _sbl,
    "polytope": _polytope,
    "witness": _witness,
    "smallmod": _smallmod,
    "decompose": _decompose,
    "theorem": _theorem,
}


def _emit(model: BaseModel, as_json: bool) -> None:
    print(model.model_dump_json(indent=2) if as_json else render_text(model))


def _emit_error(kind: str, message: str, as_json: bool) -> None:
    if as_json:
        print(json.dumps({"error": kind, "message": message}, indent=2))
    print(f"{kind}: {message}", file=sys.stderr)


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse: --help 는 0, 사용법 오류는 2
        return e.code if isinstance(e.code, int) else EXIT_INPUT

    if args.command == "examples":
        _emit(report_service.examples(), args.json)
        return EXIT_OK
    if not args.fan:
        parser.print_usage(sys.stderr)
        _emit_error("usage", f"{args.command} requires --fan", args.json)
        return EXIT_INPUT

    try:
        F = report_service.load(FanRequest(fan=args.fan, strict=args.strict or None))
    except FanValidationError as e:
        if args.command == "validate":
            _emit_error("invalid fan", str(e), args.json)
            return EXIT_FALSE
        _emit_error("input error", str(e), args.json)
        return EXIT_INPUT
    except (ToricError, ValueError, OSError) as e:
        _emit_error("input error", str(e), args.json)
        return EXIT_INPUT

    try:
        model, code = HANDLERS[args.command](args, F)
    except FALSE_VERDICTS as e:
        _emit_error("false", str(e), args.json)
        return EXIT_FALSE
    except (ToricError, ValueError) as e:
        _emit_error("input error", str(e), args.json)
        return EXIT_INPUT
    _emit(model, args.json)
    return code


def main() -> None:
    settings = get_settings()
    logging.basicConfig(
        stream=sys.stderr,
        level=settings.log_level,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    sys.exit(run())


if __name__ == "__main__":
    main()
