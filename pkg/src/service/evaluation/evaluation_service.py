import math

from src.domain.dto.evaluation.fitness_dto import FitnessBase, FitnessSpec, FitnessWrapper, FoaMode
from src.domain.entities.game_entity import CUBES_PER_COLOR, MAX_OUTBREAKS, GameState, GameStatus
from src.domain.entities.world_entity import COLOR_COUNT
from src.service.macros.cure_ability_service import state_cure_ability

CURED_PRESSURE = 0.3


def cured_fitness(state: GameState) -> float:
    return state.cured_count / COLOR_COUNT


def cure_ability_fitness(state: GameState, mode: FoaMode = FoaMode.SCALED) -> float:
    ability = state_cure_ability(state).total / COLOR_COUNT
    if mode is FoaMode.SCALED:
        return (ability + CURED_PRESSURE * state.cured_count / COLOR_COUNT) / (1.0 + CURED_PRESSURE)
    return min(1.0, (ability + CURED_PRESSURE * state.cured_count) / (1.0 + CURED_PRESSURE))


def _supply_ratios(state: GameState):
    return [state.supply[color] / CUBES_PER_COLOR for color in range(COLOR_COUNT)]


def cubes_average_fitness(state: GameState) -> float:
    return sum(_supply_ratios(state)) / COLOR_COUNT


def cubes_minimum_fitness(state: GameState) -> float:
    return min(_supply_ratios(state))


def cubes_product_fitness(state: GameState) -> float:
    return math.prod(_supply_ratios(state))


def outbreak_fitness(state: GameState) -> float:
    return max(0.0, 1.0 - state.outbreaks / MAX_OUTBREAKS)


def base_score(state: GameState, base: FitnessBase, foa_mode: FoaMode = FoaMode.SCALED) -> float:
    if base is FitnessBase.F_OD:
        return cured_fitness(state)
    if base is FitnessBase.F_OA:
        return cure_ability_fitness(state, foa_mode)
    if base is FitnessBase.F_CA:
        return cubes_average_fitness(state)
    if base is FitnessBase.F_CM:
        return cubes_minimum_fitness(state)
    if base is FitnessBase.F_CP:
        return cubes_product_fitness(state)
    return outbreak_fitness(state)


def evaluate(state: GameState, spec: FitnessSpec) -> float:
    """
    [입력]
        state: 평가할 상태 (보통 시뮬레이션 끝 상태)
        spec: 평가 함수 구성
    [출력]
        [0, 1] 점수
    """
    if spec.wrapper is not FitnessWrapper.NONE and state.status is GameStatus.WON:
        return 1.0
    if spec.wrapper is FitnessWrapper.WIN_LOSE and state.status is GameStatus.LOST:
        return 0.0

    scores = [base_score(state, base, spec.foa_mode) for base in spec.bases]
    if len(scores) == 1:
        value = scores[0]
    elif spec.weights is None:
        value = (scores[0] + scores[1]) / 2.0
    else:
        value = spec.weights[0] * scores[0] + spec.weights[1] * scores[1]

    if spec.wrapper is FitnessWrapper.PENALTY and state.status is GameStatus.LOST:
        return spec.penalty * value
    return value
