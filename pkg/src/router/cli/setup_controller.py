import argparse

from src.domain.dto.agent.rhea_dto import AgentKind
from src.domain.entities.game_entity import Role
from src.infra.storage.setup_repository import SetupRepository
from src.logger.custom_logger import get_logger
from src.router.cli.common import add_common_args, add_rhea_args, rhea_config_from, settings_from, workers_from
from src.service.harness.profiling_service import ProfilingService
from src.service.harness.testbed_service import TestbedService
from src.service.world.world_service import load_named_map
from src.utils.exception_handler.cli_log_handler import setup_exception_handlers
from src.utils.exception_handler.game_error_class import SetupFileException

logger = get_logger(__name__)

setup_repository = SetupRepository()
testbed_service = TestbedService()


def register(subparsers) -> None:
    profile = subparsers.add_parser("profile", help="초기 셋업 생성 + 에이전트 프로파일링 (기본 DP)")
    add_common_args(profile)
    add_rhea_args(profile)
    profile.add_argument("--agent", choices=[kind.value for kind in AgentKind], default=AgentKind.DP.value)
    profile.add_argument("--count", type=int, help="생성할 셋업 수")
    profile.add_argument("--runs", type=int, help="셋업당 게임 수")
    profile.add_argument("--players", type=int)
    profile.add_argument("--epidemics", type=int)
    profile.add_argument("--out", required=True, help="셋업 파일 (JSON)")
    profile.set_defaults(handler=profile_command)

    select = subparsers.add_parser("select", help="k-medoids 테스트베드 선택")
    add_common_args(select)
    select.add_argument("--setups", required=True, help="profile 이 만든 셋업 파일")
    select.add_argument("--k", type=int, help="medoid 수")
    select.add_argument("--top-fraction", type=float)
    select.add_argument("--min-win-ratio", type=float)
    select.add_argument("--out", required=True, help="선택된 셋업 파일 (JSON)")
    select.set_defaults(handler=select_command)


@setup_exception_handlers
def profile_command(args: argparse.Namespace) -> int:
    settings = settings_from(args)
    world = load_named_map(settings.map)
    players = args.players or settings.profile.players
    roles = list(settings.default_roles)[:players]
    for role in Role:
        if len(roles) < players and role not in roles:
            roles.append(role)

    kind = AgentKind(args.agent)
    service = ProfilingService(settings.map, workers_from(args, settings), settings.duration_normalizer)
    records, profiles = service.generate_and_profile(
        n_setups=args.count or settings.profile.setups,
        runs_per_setup=args.runs or settings.profile.runs,
        master_seed=args.seed,
        roles=roles,
        epidemics=args.epidemics or settings.profile.epidemics,
        agent=kind,
        rhea=rhea_config_from(args, settings) if kind is AgentKind.RHEA else None,
    )
    setup_repository.save(args.out, world.map_id, records, profiles, master_seed=args.seed)
    return 0


@setup_exception_handlers
def select_command(args: argparse.Namespace) -> int:
    settings = settings_from(args)
    document = setup_repository.load(args.setups)
    if not document.profiles:
        raise SetupFileException(f"프로파일이 없는 셋업 파일입니다: {args.setups}")

    selected = testbed_service.select_testbeds(
        document.setups,
        document.profiles,
        k=args.k or settings.selection.medoids,
        seed=args.seed,
        top_fraction=args.top_fraction or settings.selection.top_fraction,
        min_win_ratio=args.min_win_ratio if args.min_win_ratio is not None else settings.selection.min_win_ratio,
        max_iterations=settings.selection.max_iterations,
    )
    chosen = {record.setup_id for record in selected}
    profiles = [profile for profile in document.profiles if profile.setup_id in chosen]
    setup_repository.save(args.out, document.map_id, selected, profiles, master_seed=document.master_seed)
    for profile in profiles:
        logger.info(f"testbed {profile.setup_id}: win {profile.win_ratio:.3f}, duration {profile.normalized_duration:.3f}")
    return 0
