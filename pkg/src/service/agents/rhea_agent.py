import random
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from src.domain.dto.agent.rhea_dto import CommitMode, RheaConfig
from src.domain.entities.action_entity import MacroAction, MacroKind
from src.domain.entities.belief_entity import BeliefState
from src.domain.entities.game_entity import GameState
from src.logger.custom_logger import get_logger
from src.service.agents.default_policy import dp_play_turn
from src.service.belief.belief_service import determinize
from src.service.engine.game_engine import GameEngine
from src.service.evaluation.evaluation_service import evaluate
from src.service.macros.macro_service import enumerate_macros, execute_macro
from src.service.macros.reach_service import reach
from src.utils.seed_stream import next_seed

"""

    롤링 호라이즌 진화 알고리즘 (1+1).

    개체(Genome) = 현재 플레이어부터 좌석 순서로 H 개 턴의 매크로 계획.
    DP 롤아웃으로 초기화하고, 매 세대 돌연변이 하나를 만들어 평균 적합도가 엄격히 높을 때만 교체한다.

"""


class MutationTier:
    CURE = "cure"
    TREAT = "treat"
    SHARE = "share"
    BUILD = "build"


MUTATION_TIERS: Tuple[str, ...] = (MutationTier.CURE, MutationTier.TREAT, MutationTier.SHARE, MutationTier.BUILD)


@dataclass(frozen=True, slots=True)
class TurnPlan:
    player: int
    macros: Tuple[MacroAction, ...]


@dataclass
class Genome:
    turns: List[TurnPlan] = field(default_factory=list)
    fitness: Optional[float] = None
    trials_used: int = 0

    @property
    def kinds(self) -> List[Tuple[MacroKind, ...]]:
        return [tuple(macro.kind for macro in plan.macros) for plan in self.turns]


def _play_plan(engine: GameEngine, state: GameState, plan: TurnPlan) -> None:
    for macro in plan.macros:
        if state.is_over:
            return
        execute_macro(engine, state, macro)


def dp_rollout(engine: GameEngine, belief: BeliefState, horizon: int, seed: int) -> Genome:
    rng = random.Random(seed)
    sim = determinize(belief, next_seed(rng))
    return Genome(_extend_with_dp(engine, sim, [], horizon, rng))


def _extend_with_dp(engine: GameEngine, sim: GameState, turns: List[TurnPlan], horizon: int,
                    rng: random.Random) -> List[TurnPlan]:
    while len(turns) < horizon and not sim.is_over:
        player = sim.current_player
        macros = dp_play_turn(engine, sim, rng)
        turns.append(TurnPlan(player, tuple(macros)))
        engine.end_turn(sim)
    return turns


def mutation_tier_order(rng: random.Random) -> List[str]:
    order = list(MUTATION_TIERS)
    rng.shuffle(order)
    return order


def tier_candidates(state: GameState, player: int, tier: str) -> List[MacroAction]:
    budget = state.actions_left
    routes = reach(state, player, budget)
    if tier == MutationTier.CURE:
        return enumerate_macros(state, player, budget, [MacroKind.DISCOVER_CURE], routes=routes)
    if tier == MutationTier.TREAT:
        for cubes in (3, 2, 1):
            macros = enumerate_macros(state, player, budget, [MacroKind.TREAT_DISEASE], treat_cubes=cubes,
                                      routes=routes)
            if macros:
                return macros
        return []
    if tier == MutationTier.SHARE:
        return enumerate_macros(state, player, budget, [MacroKind.SHARE_GIVE, MacroKind.SHARE_TAKE], routes=routes)
    return enumerate_macros(state, player, budget, [MacroKind.BUILD_STATION], routes=routes)


def mutate(engine: GameEngine, genome: Genome, belief: BeliefState, horizon: int, rng: random.Random) -> Genome:
    """
    새 결정화 위에서 턴마다: 매크로 자리 하나를 고르고, 그 앞은 부모대로 재생,
    그 자리는 섞인 단계 순서에서 처음 후보가 있는 단계의 무작위 매크로, 나머지는 DP 로 채운다.
    """
    sim = determinize(belief, next_seed(rng))
    turns: List[TurnPlan] = []

    for plan in genome.turns:
        if sim.is_over:
            break
        player = sim.current_player
        slot = rng.randrange(len(plan.macros)) if plan.macros else 0
        macros: List[MacroAction] = []

        for macro in plan.macros[:slot]:
            if sim.is_over or sim.actions_left <= 0:
                break
            execute_macro(engine, sim, macro)
            macros.append(macro)

        if not sim.is_over and sim.actions_left > 0 and sim.current_player == player:
            for tier in mutation_tier_order(rng):
                candidates = tier_candidates(sim, player, tier)
                if candidates:
                    chosen = rng.choice(candidates)
                    execute_macro(engine, sim, chosen)
                    macros.append(chosen)
                    break
            macros.extend(dp_play_turn(engine, sim, rng))

        turns.append(TurnPlan(player, tuple(macros)))
        engine.end_turn(sim)

    return Genome(_extend_with_dp(engine, sim, turns, horizon, rng))


def genome_fitness(engine: GameEngine, genome: Genome, belief: BeliefState, cfg: RheaConfig,
                   rng: random.Random) -> float:
    """
    cfg.trials 번 새로 결정화해서 계획을 실행하고 끝 상태 점수의 평균을 낸다.
    게임이 도중에 끝나면 그 자리에서 평가한다.
    """
    total = 0.0
    for _ in range(cfg.trials):
        sim = determinize(belief, next_seed(rng))
        for plan in genome.turns:
            if sim.is_over:
                break
            _play_plan(engine, sim, plan)
            engine.end_turn(sim)
        total += evaluate(sim, cfg.fitness)
    genome.trials_used = cfg.trials
    return total / cfg.trials


def evolve(engine: GameEngine, belief: BeliefState, cfg: RheaConfig, seed: int) -> Tuple[Genome, List[float]]:
    """
    [출력]
        (최종 개체, 세대별 현 개체 적합도 기록; 첫 값은 DP 초기 개체)
    """
    rng = random.Random(seed)
    incumbent = dp_rollout(engine, belief, cfg.horizon, next_seed(rng))
    incumbent.fitness = genome_fitness(engine, incumbent, belief, cfg, rng)
    history = [incumbent.fitness]

    for _ in range(cfg.generations):
        mutant = mutate(engine, incumbent, belief, cfg.horizon, rng)
        mutant.fitness = genome_fitness(engine, mutant, belief, cfg, rng)
        if cfg.resample_incumbent:
            incumbent.fitness = genome_fitness(engine, incumbent, belief, cfg, rng)
        if mutant.fitness > incumbent.fitness:
            incumbent = mutant
        history.append(incumbent.fitness)
    return incumbent, history


def commit(genome: Genome, mode: CommitMode) -> List[MacroAction]:
    if not genome.turns or not genome.turns[0].macros:
        return []
    first = genome.turns[0].macros
    return [first[0]] if mode is CommitMode.FIRST_MACRO else list(first)


def rhea_decide(engine: GameEngine, belief: BeliefState, cfg: RheaConfig, seed: int) -> List[MacroAction]:
    genome, _ = evolve(engine, belief, cfg, seed)
    return commit(genome, cfg.commit)


class RheaAgent:
    name = "rhea"

    def __init__(self, engine: GameEngine, cfg: RheaConfig):
        self.logger = get_logger(__name__)
        self.engine = engine
        self.cfg = cfg

    def decide(self, belief: BeliefState, rng: random.Random) -> List[MacroAction]:
        genome, history = evolve(self.engine, belief, self.cfg, next_seed(rng))
        self.logger.debug("rhea turn %s player %s: fitness %.4f -> %.4f",
                          belief.public.turn_number, belief.public.current_player, history[0], history[-1])
        return commit(genome, self.cfg.commit)
