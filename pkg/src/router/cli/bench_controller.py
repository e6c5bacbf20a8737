import argparse

from pydantic import ValidationError

from src.domain.dto.agent.rhea_dto import AgentKind
from src.domain.dto.experiment.experiment_dto import Condition, ExperimentGrid
from src.domain.dto.metrics.metrics_dto import RESULT_COLUMNS
from src.infra.storage.results_repository import ResultFormat, ResultsRepository
from src.infra.storage.setup_repository import SetupRepository
from src.router.cli.common import (
    add_common_args,
    add_output_args,
    add_rhea_args,
    emit,
    rhea_config_from,
    settings_from,
    workers_from,
)
from src.service.harness.experiment_service import ExperimentService
from src.service.harness.report_service import REPORT_COLUMNS, summarize
from src.utils.exception_handler.cli_log_handler import setup_exception_handlers
from src.utils.exception_handler.game_error_class import ExperimentConfigException

setup_repository = SetupRepository()
results_repository = ResultsRepository()


def register(subparsers) -> None:
    bench = subparsers.add_parser("bench", help="실험 격자 실행")
    add_common_args(bench)
    add_rhea_args(bench)
    add_output_args(bench)
    bench.add_argument("--setups", required=True, help="셋업 파일 (보통 select 결과)")
    bench.add_argument("--agent", action="append", choices=[kind.value for kind in AgentKind],
                       help="에이전트 (반복 가능, 기본: dp 와 rhea)")
    bench.add_argument("--runs", type=int)
    bench.add_argument("--players", type=int, default=4)
    bench.add_argument("--epidemics", type=int, default=4)
    bench.add_argument("--p-rand", action="store_true", help="역할 순서 무작위")
    bench.add_argument("--d-rand", action="store_true", help="숨겨진 덱 재셔플")
    bench.add_argument("--robustness", action="store_true", help="무작위화 4조건 (없음/P/D/P+D) 모두 실행")
    bench.set_defaults(handler=bench_command)

    report = subparsers.add_parser("report", help="결과 파일 요약")
    report.add_argument("--results", required=True, help="bench 결과 파일 (csv/json)")
    add_output_args(report)
    report.set_defaults(handler=report_command)


def conditions_from(args: argparse.Namespace):
    if args.robustness:
        flags = [(False, False), (True, False), (False, True), (True, True)]
    else:
        flags = [(args.p_rand, args.d_rand)]
    return [Condition(p_rand=p, d_rand=d, players=args.players, epidemics=args.epidemics) for p, d in flags]


@setup_exception_handlers
def bench_command(args: argparse.Namespace) -> int:
    settings = settings_from(args)
    setups = setup_repository.load_setups(args.setups)
    agents = [AgentKind(kind) for kind in (args.agent or [AgentKind.DP.value, AgentKind.RHEA.value])]

    try:
        grid = ExperimentGrid(
            agents=agents,
            fitness_specs=args.fitness or [settings.rhea.fitness],
            rhea=rhea_config_from(args, settings),
            setups=setups,
            runs=args.runs or settings.bench_runs,
            conditions=conditions_from(args),
            master_seed=args.seed,
            workers=workers_from(args, settings),
        )
    except ValidationError as e:
        raise ExperimentConfigException(f"실험 구성 오류: {e.errors()[0]['loc']} {e.errors()[0]['msg']}")
    rows = ExperimentService(settings.map).run_experiment(grid)
    emit(results_repository.write(rows, RESULT_COLUMNS, ResultFormat(args.format)), args.out)
    return 0


@setup_exception_handlers
def report_command(args: argparse.Namespace) -> int:
    rows = results_repository.read(args.results)
    summary = summarize(rows)
    emit(results_repository.write(summary, REPORT_COLUMNS, ResultFormat(args.format)), args.out)
    return 0
