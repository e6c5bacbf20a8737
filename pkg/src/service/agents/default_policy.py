import random
from typing import List, Optional

from src.domain.entities.action_entity import MacroAction, MacroKind
from src.domain.entities.belief_entity import BeliefState
from src.domain.entities.game_entity import GameState
from src.logger.custom_logger import get_logger
from src.service.belief.belief_service import determinize
from src.service.engine.game_engine import GameEngine
from src.service.macros.macro_service import enumerate_macros, execute_macro, walk_away
from src.service.macros.reach_service import reach
from src.utils.seed_stream import next_seed

SHARE = (MacroKind.SHARE_GIVE, MacroKind.SHARE_TAKE)


def dp_pick(state: GameState, player: int, rng: random.Random) -> MacroAction:
    """
    기본 정책 한 단계. 위 단계부터 처음으로 후보가 있는 단계에서 무작위로 고른다.

        1. 치료제 개발
        2. 큐브 3개 도시 치료
        3. 카드 공유 (즉시 가능한 것, 없으면 만남 도시에서 기다리기)
        4. 연구소 건설
        5. 큐브 2개 도시 치료
        6. 큐브 1개 도시 치료
        7. 무작위 이동
    """
    budget = state.actions_left
    routes = reach(state, player, budget)

    def tier(kinds, treat_cubes: Optional[int] = None) -> List[MacroAction]:
        return enumerate_macros(state, player, budget, kinds, treat_cubes=treat_cubes, routes=routes)

    candidates = tier([MacroKind.DISCOVER_CURE])
    if not candidates:
        candidates = tier([MacroKind.TREAT_DISEASE], treat_cubes=3)
    if not candidates:
        shares = tier(SHARE)
        candidates = [m for m in shares if not m.waits] or shares
    if not candidates:
        candidates = tier([MacroKind.BUILD_STATION])
    if not candidates:
        candidates = tier([MacroKind.TREAT_DISEASE], treat_cubes=2)
    if not candidates:
        candidates = tier([MacroKind.TREAT_DISEASE], treat_cubes=1)
    if not candidates:
        return walk_away(state, player, budget, rng)
    return rng.choice(candidates)


def dp_play_turn(engine: GameEngine, state: GameState, rng: random.Random) -> List[MacroAction]:
    """현재 플레이어의 남은 행동을 기본 정책으로 모두 쓰고(state 변경) 실행한 매크로를 돌려준다."""
    player = state.current_player
    macros = []
    while not state.is_over and state.current_player == player and state.actions_left > 0:
        macro = dp_pick(state, player, rng)
        execute_macro(engine, state, macro)
        macros.append(macro)
    return macros


def dp_turn(engine: GameEngine, state: GameState, rng: random.Random) -> List[MacroAction]:
    return dp_play_turn(engine, state.clone(), rng)


class DefaultPolicyAgent:
    name = "dp"

    def __init__(self, engine: GameEngine):
        self.logger = get_logger(__name__)
        self.engine = engine

    def decide(self, belief: BeliefState, rng: random.Random) -> List[MacroAction]:
        # 현재 턴의 계획은 공개 정보만 쓰므로 결정화 하나로 충분하다
        state = determinize(belief, next_seed(rng))
        macros = dp_turn(self.engine, state, rng)
        self.logger.debug("dp turn %s player %s: %s", belief.public.turn_number, belief.public.current_player,
                          [macro.kind.value for macro in macros])
        return macros
