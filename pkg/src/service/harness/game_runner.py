import random

from src.domain.dto.metrics.metrics_dto import RunMetrics
from src.domain.entities.action_entity import ActionCategory
from src.domain.entities.game_entity import MAX_CUBES_PER_CITY, GameState, GameStatus
from src.service.agents.agent_protocol import Agent
from src.service.belief.belief_service import observe
from src.service.engine.game_engine import GameEngine
from src.service.macros.macro_service import execute_macro


def play_game(engine: GameEngine, state: GameState, agent: Agent, seed: int) -> RunMetrics:
    """
    게임이 끝날 때까지 에이전트에게 결정을 묻고 실행한다. state 는 제자리에서 바뀐다.
    에이전트는 매 결정마다 observe(state) 만 본다.
    """
    rng = random.Random(seed)
    while not state.is_over:
        before = (state.turn_number, state.actions_left)
        if state.actions_left > 0:
            for macro in agent.decide(observe(state), rng):
                if state.is_over or state.actions_left <= 0:
                    break
                execute_macro(engine, state, macro)
        if not state.is_over and (state.actions_left <= 0 or (state.turn_number, state.actions_left) == before):
            engine.end_turn(state)

    if state.status is GameStatus.WON and state.actions_left > 0:
        state.tally[ActionCategory.PASS] += state.actions_left
        state.actions_left = 0
    return run_metrics(state)


def game_duration(state: GameState) -> int:
    """시작된 플레이어 턴 수. 승리는 항상 행동 중에 일어나므로 그 턴을 더한다."""
    return state.turn_number + (1 if state.status is GameStatus.WON else 0)


def run_metrics(state: GameState) -> RunMetrics:
    histogram = {cubes: 0 for cubes in range(1, MAX_CUBES_PER_CITY + 1)}
    for count in state.cubes:
        if count:
            histogram[count] += 1
    return RunMetrics(
        won=state.status is GameStatus.WON,
        duration=game_duration(state),
        loss_reason=state.loss_reason,
        outbreaks=state.outbreaks,
        cities_with_cubes=histogram,
        action_counts={category.label: state.tally[category] for category in ActionCategory},
        research_stations=len(state.stations),
        stations_built=len(state.stations) - 1,
        cured=state.cured_count,
        epidemics_drawn=state.epidemics_drawn,
    )
