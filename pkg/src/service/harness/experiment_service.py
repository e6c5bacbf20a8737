import random
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel
from scipy.stats import binomtest

from src.domain.dto.agent.rhea_dto import AgentKind, RheaConfig
from src.domain.dto.experiment.experiment_dto import Condition, ExperimentGrid
from src.domain.dto.metrics.metrics_dto import CellResult, RunMetrics
from src.domain.dto.setup.setup_dto import EPIDEMIC_LABEL, SetupRecord
from src.domain.entities.action_entity import ActionCategory
from src.domain.entities.game_entity import STARTING_HAND, Role
from src.logger.custom_logger import get_logger
from src.service.agents.agent_factory import make_agent
from src.service.belief.belief_service import determinize, observe
from src.service.engine.engine_factory import build_engine
from src.service.engine.game_engine import split_piles
from src.service.evaluation.fitness_parser import parse_fitness_spec
from src.service.harness.game_runner import play_game
from src.service.harness.worker_pool import run_tasks
from src.service.world.world_service import load_named_map
from src.utils.exception_handler.game_error_class import ExperimentConfigException, GameException
from src.utils.seed_stream import derive_seed, next_seed

DP_FITNESS_LABEL = "-"


class RunTask(BaseModel):
    map_name: str
    agent: AgentKind
    rhea: Optional[RheaConfig] = None
    record: SetupRecord
    condition: Condition
    seed: int


def redeal(record: SetupRecord, players: int, epidemics: int) -> SetupRecord:
    """
    플레이어 카드를 (손패 먼저, 그다음 덱 순서) 다시 늘어놓고 players 명, epidemics 더미로 다시 나눈다.
    감염 쪽은 그대로 둔다. 에피데믹 위치는 기록 시드에서 파생한 난수로 정해진다.
    """
    if players == len(record.roles) and epidemics == record.epidemics:
        return record
    cards = [name for hand in record.hands for name in hand]
    cards += [name for pile in record.player_deck for name in pile if name != EPIDEMIC_LABEL]
    dealt = STARTING_HAND * players
    if len(cards) - dealt < epidemics:
        raise ExperimentConfigException(f"카드가 부족해서 {players}명 / 에피데믹 {epidemics} 로 나눌 수 없습니다.")

    rng = random.Random(derive_seed(record.seed, players, epidemics))
    piles = []
    for pile in split_piles(cards[dealt:], epidemics):
        pile.insert(rng.randrange(len(pile) + 1), EPIDEMIC_LABEL)
        piles.append(pile)

    roles = list(record.roles)[:players]
    for role in Role:
        if len(roles) >= players:
            break
        if role not in roles:
            roles.append(role)
    return record.model_copy(update={
        "roles": roles,
        "epidemics": epidemics,
        "hands": [cards[i * STARTING_HAND:(i + 1) * STARTING_HAND] for i in range(players)],
        "player_deck": piles,
    })


def condition_roles(record: SetupRecord, condition: Condition, rng: random.Random) -> List[Role]:
    """4인 미만이면 네 역할 중 무작위, P_rand 면 좌석 순서를 섞는다."""
    roles = list(record.roles)
    if condition.players < len(Role):
        return rng.sample(list(Role), condition.players)
    if condition.p_rand:
        rng.shuffle(roles)
    return roles


def run_single(task: RunTask) -> RunMetrics:
    world = load_named_map(task.map_name)
    engine = build_engine()
    rng = random.Random(task.seed)

    record = redeal(task.record, task.condition.players, task.condition.epidemics)
    record = record.model_copy(update={"roles": condition_roles(record, task.condition, rng)})
    state = engine.new_game_from_setup(world, record, next_seed(rng))
    if task.condition.d_rand:
        # 초기 감염과 시작 손패는 유지하고 숨겨진 덱만 다시 섞는다
        state = determinize(observe(state), next_seed(rng))

    agent = make_agent(task.agent, engine, task.rhea)
    return play_game(engine, state, agent, next_seed(rng))


def _ratio(part: float, whole: float) -> float:
    return part / whole if whole else 0.0


def aggregate_cell(agent: str, fitness: str, setup_id: int, condition: Condition,
                   metrics: Sequence[RunMetrics]) -> CellResult:
    runs = len(metrics)
    wins = sum(1 for m in metrics if m.won)
    lost = [m for m in metrics if not m.won]
    reasons: Dict[str, int] = {}
    for m in lost:
        reasons[m.loss_reason.value] = reasons.get(m.loss_reason.value, 0) + 1

    actions = {category.label: sum(m.action_counts.get(category.label, 0) for m in metrics)
               for category in ActionCategory}
    total_actions = sum(actions.values())
    cubes = {level: sum(m.cities_with_cubes.get(level, 0) for m in metrics) for level in (1, 2, 3)}
    total_cubes = sum(cubes.values())

    return CellResult(
        agent=agent,
        fitness=fitness,
        setup_id=setup_id,
        condition=condition.label,
        p_rand=condition.p_rand,
        d_rand=condition.d_rand,
        players=condition.players,
        epidemics=condition.epidemics,
        runs=runs,
        wins=wins,
        win_ratio=wins / runs,
        loss_ratio=len(lost) / runs,
        loss_outbreak_limit=_ratio(reasons.get("outbreak_limit", 0), len(lost)),
        loss_cubes_exhausted=_ratio(reasons.get("cubes_exhausted", 0), len(lost)),
        loss_deck_exhausted=_ratio(reasons.get("deck_exhausted", 0), len(lost)),
        mean_duration=sum(m.duration for m in metrics) / runs,
        mean_lost_duration=sum(m.duration for m in lost) / len(lost) if lost else None,
        mean_outbreaks=sum(m.outbreaks for m in metrics) / runs,
        mean_stations=sum(m.research_stations for m in metrics) / runs,
        ratio_move=_ratio(actions["move"], total_actions),
        ratio_treat=_ratio(actions["treat"], total_actions),
        ratio_build=_ratio(actions["build"], total_actions),
        ratio_share=_ratio(actions["share"], total_actions),
        ratio_cure=_ratio(actions["cure"], total_actions),
        ratio_pass=_ratio(actions["pass"], total_actions),
        cities_1_ratio=_ratio(cubes[1], total_cubes),
        cities_2_ratio=_ratio(cubes[2], total_cubes),
        cities_3_ratio=_ratio(cubes[3], total_cubes),
    )


def compare_with_baseline(rows: List[CellResult]) -> List[CellResult]:
    """같은 (셋업, 조건)의 DP 행 대비 개선율과 단측 이항검정 p-value 를 채운다."""
    baseline = {(r.setup_id, r.condition): r for r in rows if r.agent == AgentKind.DP.value}
    compared = []
    for row in rows:
        dp = baseline.get((row.setup_id, row.condition))
        if row.agent == AgentKind.DP.value or dp is None:
            compared.append(row)
            continue
        improvement = (row.win_ratio - dp.win_ratio) / dp.win_ratio if dp.win_ratio > 0 else None
        p_value = None
        if 0.0 < dp.win_ratio < 1.0:
            p_value = float(binomtest(row.wins, row.runs, dp.win_ratio, alternative="greater").pvalue)
        compared.append(row.model_copy(update={"improvement_over_dp": improvement, "p_value_vs_dp": p_value}))
    return compared


class ExperimentService:
    def __init__(self, map_name: str = "standard"):
        self.logger = get_logger(__name__)
        self.map_name = map_name

    def cells(self, grid: ExperimentGrid) -> List[Tuple[AgentKind, Optional[RheaConfig], str]]:
        """(에이전트, RHEA 설정, 평가 함수 표기) 조합. DP 는 평가 함수와 무관하므로 한 번만."""
        try:
            specs = [parse_fitness_spec(text) for text in grid.fitness_specs]
        except GameException as e:
            raise ExperimentConfigException(e.message)
        combos = []
        for agent in grid.agents:
            if agent is AgentKind.DP:
                combos.append((agent, None, DP_FITNESS_LABEL))
            else:
                combos.extend((agent, grid.rhea.model_copy(update={"fitness": spec}), spec.label) for spec in specs)
        return combos

    def run_experiment(self, grid: ExperimentGrid) -> List[CellResult]:
        """
        (에이전트 x 평가 함수) x 셋업 x 조건 x 실행 전체를 돌린다.
        실행 시드는 (마스터 시드, 셋업, 조건, 실행 번호)에서 파생하므로 에이전트들이 같은 판을 받는다.

        [출력]
            셀별 CellResult (격자 순서)
        """
        combos = self.cells(grid)
        tasks: List[RunTask] = []
        keys = []
        for (agent, rhea, label), (setup_index, record), (condition_index, condition) in product(
                combos, enumerate(grid.setups), enumerate(grid.conditions)):
            keys.append((agent, label, record.setup_id, condition))
            for run in range(grid.runs):
                seed = derive_seed(grid.master_seed, setup_index, condition_index, run)
                tasks.append(RunTask(map_name=self.map_name, agent=agent, rhea=rhea, record=record,
                                     condition=condition, seed=seed))

        self.logger.info(f"experiment: {len(keys)} cells x {grid.runs} runs = {len(tasks)} games")
        metrics = run_tasks(run_single, tasks, grid.workers, "bench")

        rows = []
        for index, (agent, label, setup_id, condition) in enumerate(keys):
            cell = metrics[index * grid.runs:(index + 1) * grid.runs]
            row = aggregate_cell(agent.value, label, setup_id, condition, cell)
            self.logger.info(f"cell {agent.value} {label} setup {setup_id} {condition.label}: win {row.win_ratio:.3f}")
            rows.append(row)
        return compare_with_baseline(rows)
