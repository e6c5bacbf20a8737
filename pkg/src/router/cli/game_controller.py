import argparse
import json

from src.domain.dto.agent.rhea_dto import AgentKind
from src.infra.storage.setup_repository import SetupRepository
from src.logger.custom_logger import get_logger
from src.router.cli.common import add_common_args, add_rhea_args, emit, rhea_config_from, settings_from
from src.service.agents.agent_factory import make_agent
from src.service.engine.engine_factory import build_engine
from src.service.harness.game_runner import play_game
from src.service.world.world_service import load_named_map
from src.utils.exception_handler.cli_log_handler import setup_exception_handlers
from src.utils.exception_handler.game_error_class import InvalidSetupException, SetupFileException
from src.utils.seed_stream import derive_seed

logger = get_logger(__name__)

setup_repository = SetupRepository()


def register(subparsers) -> None:
    play = subparsers.add_parser("play", help="게임 한 판 (이벤트 로그 포함)")
    add_common_args(play)
    add_rhea_args(play)
    play.add_argument("--agent", choices=[kind.value for kind in AgentKind], default=AgentKind.DP.value)
    play.add_argument("--setups", help="셋업 파일. 없으면 --seed 로 새 게임")
    play.add_argument("--setup-id", type=int, help="셋업 파일 안의 setup_id (기본: 첫 셋업)")
    play.add_argument("--players", type=int, help="새 게임의 플레이어 수 (--setups 와 함께 쓸 수 없음)")
    play.add_argument("--epidemics", type=int, help="새 게임의 에피데믹 카드 수 (--setups 와 함께 쓸 수 없음)")
    play.add_argument("--events", help="이벤트 로그 파일 (JSON Lines)")
    play.add_argument("--out", help="결과 지표 JSON 파일 (없으면 표준 출력)")
    play.set_defaults(handler=play_command)


@setup_exception_handlers
def play_command(args: argparse.Namespace) -> int:
    settings = settings_from(args)
    world = load_named_map(settings.map)
    engine = build_engine()

    game_seed = derive_seed(args.seed, 0)
    if args.setups:
        if args.players is not None or args.epidemics is not None:
            raise InvalidSetupException("--setups 로 고른 셋업에는 --players, --epidemics 를 쓸 수 없습니다.")
        setups = setup_repository.load_setups(args.setups)
        if args.setup_id is None:
            record = setups[0]
        else:
            matches = [s for s in setups if s.setup_id == args.setup_id]
            if not matches:
                raise SetupFileException(f"setup_id {args.setup_id} 가 {args.setups} 에 없습니다.")
            record = matches[0]
        state = engine.new_game_from_setup(world, record, game_seed, record_events=True)
    else:
        players = args.players or len(settings.default_roles)
        epidemics = args.epidemics or settings.profile.epidemics
        state = engine.new_game(world, settings.default_roles[:players], epidemics, game_seed,
                                record_events=True)

    kind = AgentKind(args.agent)
    agent = make_agent(kind, engine, rhea_config_from(args, settings) if kind is AgentKind.RHEA else None)
    metrics = play_game(engine, state, agent, derive_seed(args.seed, 1))

    if args.events:
        emit(state.events.to_jsonl(), args.events)
    logger.info(f"play finished: {'won' if metrics.won else 'lost'} after {metrics.duration} turns "
                f"({len(state.events)} events)")
    emit(json.dumps(metrics.model_dump(mode="json"), indent=2, sort_keys=True) + "\n", args.out)
    return 0
