import argparse
import sys
from pathlib import Path
from typing import Optional

from src.domain.dto.agent.rhea_dto import CommitMode, RheaConfig
from src.domain.dto.settings.settings_dto import HarnessSettings
from src.infra.storage.results_repository import ResultFormat
from src.service.evaluation.fitness_parser import parse_fitness_spec
from src.service.harness.worker_pool import resolve_workers
from src.utils.settings_loader import load_harness_settings


def add_common_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="harness_config.json 경로 (기본: resources/config)")
    parser.add_argument("--seed", type=int, default=0, help="마스터 시드")
    parser.add_argument("--workers", type=int, help="프로세스 수 (0 = PANDEMIC_WORKERS 또는 CPU 수)")


def add_rhea_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--fitness", action="append", help="평가 함수 표기, 예: p:avg(f_oa,f_cm) (반복 가능)")
    parser.add_argument("--generations", type=int)
    parser.add_argument("--trials", type=int)
    parser.add_argument("--horizon", type=int)
    parser.add_argument("--commit", choices=[mode.value for mode in CommitMode])
    parser.add_argument("--resample-incumbent", action="store_true")


def add_output_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", help="출력 파일 (없으면 표준 출력)")
    parser.add_argument("--format", choices=[fmt.value for fmt in ResultFormat], default=ResultFormat.CSV.value)


def settings_from(args: argparse.Namespace) -> HarnessSettings:
    return load_harness_settings(getattr(args, "config", None))


def workers_from(args: argparse.Namespace, settings: HarnessSettings) -> int:
    requested = args.workers if getattr(args, "workers", None) is not None else settings.workers
    return resolve_workers(requested)


def rhea_config_from(args: argparse.Namespace, settings: HarnessSettings, fitness: Optional[str] = None) -> RheaConfig:
    """설정 파일 값 위에 CLI 인자를 필드 단위로 덮어쓴다."""
    defaults = settings.rhea
    return RheaConfig(
        horizon=args.horizon if args.horizon is not None else defaults.horizon,
        generations=args.generations if args.generations is not None else defaults.generations,
        trials=args.trials if args.trials is not None else defaults.trials,
        fitness=parse_fitness_spec(fitness or (args.fitness[0] if args.fitness else defaults.fitness)),
        commit=CommitMode(args.commit or defaults.commit),
        resample_incumbent=args.resample_incumbent,
    )


def emit(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        with open(out, "w", encoding="utf-8", newline="") as f:
            f.write(text)
