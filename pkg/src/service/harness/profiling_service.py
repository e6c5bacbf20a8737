from typing import List, Optional, Sequence

from pydantic import BaseModel

from src.domain.dto.agent.rhea_dto import AgentKind, RheaConfig
from src.domain.dto.metrics.metrics_dto import RunMetrics
from src.domain.dto.setup.setup_dto import SetupProfile, SetupRecord
from src.domain.entities.action_entity import ActionCategory
from src.domain.entities.game_entity import DEFAULT_ROLE_ORDER, Role
from src.domain.entities.world_entity import WorldMap
from src.logger.custom_logger import get_logger
from src.service.agents.agent_factory import make_agent
from src.service.engine.engine_factory import build_engine
from src.service.harness.game_runner import play_game
from src.service.harness.worker_pool import run_tasks
from src.service.world.world_service import load_named_map
from src.utils.seed_stream import derive_seed

SETUP_STREAM = 0
PROFILE_STREAM = 1
DEFAULT_DURATION_NORMALIZER = 23


class ProfileTask(BaseModel):
    map_name: str
    record: SetupRecord
    runs: int
    master_seed: int
    agent: AgentKind = AgentKind.DP
    rhea: Optional[RheaConfig] = None
    duration_normalizer: int = DEFAULT_DURATION_NORMALIZER


def generate_setups(world: WorldMap, count: int, master_seed: int, roles: Sequence[Role] = DEFAULT_ROLE_ORDER,
                    epidemics: int = 4) -> List[SetupRecord]:
    engine = build_engine()
    records = []
    for setup_id in range(count):
        seed = derive_seed(master_seed, SETUP_STREAM, setup_id)
        state = engine.new_game(world, roles, epidemics, seed)
        records.append(SetupRecord.from_state(state, setup_id, seed))
    return records


def summarize_runs(setup_id: int, metrics: Sequence[RunMetrics], duration_normalizer: int) -> SetupProfile:
    runs = len(metrics)
    wins = sum(1 for m in metrics if m.won)
    lost = [m for m in metrics if not m.won]
    mean_duration = sum(m.duration for m in metrics) / runs
    total_actions = sum(m.total_actions for m in metrics)
    shares = sum(m.action_counts.get(ActionCategory.SHARE.label, 0) for m in metrics)

    loss_ratios = {}
    for m in lost:
        key = m.loss_reason.value
        loss_ratios[key] = loss_ratios.get(key, 0) + 1
    loss_ratios = {key: value / len(lost) for key, value in sorted(loss_ratios.items())}

    return SetupProfile(
        setup_id=setup_id,
        runs=runs,
        wins=wins,
        win_ratio=wins / runs,
        mean_duration=mean_duration,
        normalized_duration=mean_duration / duration_normalizer,
        share_ratio=shares / total_actions if total_actions else 0.0,
        mean_outbreaks=sum(m.outbreaks for m in metrics) / runs,
        loss_ratios=loss_ratios,
    )


def profile_setup(task: ProfileTask) -> SetupProfile:
    """같은 초기 덱으로 runs 판을 두고 (게임 중 난수만 바꿔서) 집계한다."""
    world = load_named_map(task.map_name)
    engine = build_engine()
    agent = make_agent(task.agent, engine, task.rhea)
    metrics = []
    for run in range(task.runs):
        seed = derive_seed(task.master_seed, PROFILE_STREAM, task.record.setup_id, run)
        state = engine.new_game_from_setup(world, task.record, seed)
        metrics.append(play_game(engine, state, agent, derive_seed(seed, run)))
    return summarize_runs(task.record.setup_id, metrics, task.duration_normalizer)


class ProfilingService:
    def __init__(self, map_name: str = "standard", workers: int = 1,
                 duration_normalizer: int = DEFAULT_DURATION_NORMALIZER):
        self.logger = get_logger(__name__)
        self.map_name = map_name
        self.workers = workers
        self.duration_normalizer = duration_normalizer

    def generate_and_profile(self, n_setups: int, runs_per_setup: int, master_seed: int,
                             roles: Sequence[Role] = DEFAULT_ROLE_ORDER, epidemics: int = 4,
                             agent: AgentKind = AgentKind.DP, rhea: Optional[RheaConfig] = None):
        """
        [입력]
            n_setups: 만들 초기 셋업 수
            runs_per_setup: 셋업당 게임 수
            master_seed: 셋업과 게임 난수 전부의 근원
        [출력]
            (SetupRecord 목록, SetupProfile 목록) 같은 순서
        """
        world = load_named_map(self.map_name)
        self.logger.info(f"generating {n_setups} setups on {world.map_id} (seed {master_seed})")
        records = generate_setups(world, n_setups, master_seed, roles, epidemics)
        return records, self.profile(records, runs_per_setup, master_seed, agent, rhea)

    def profile(self, records: Sequence[SetupRecord], runs_per_setup: int, master_seed: int,
                agent: AgentKind = AgentKind.DP, rhea: Optional[RheaConfig] = None) -> List[SetupProfile]:
        tasks = [
            ProfileTask(map_name=self.map_name, record=record, runs=runs_per_setup, master_seed=master_seed,
                        agent=agent, rhea=rhea, duration_normalizer=self.duration_normalizer)
            for record in records
        ]
        profiles = run_tasks(profile_setup, tasks, self.workers, "profile")
        if profiles:
            mean_win = sum(p.win_ratio for p in profiles) / len(profiles)
            self.logger.info(f"profiled {len(profiles)} setups x {runs_per_setup} runs, mean win ratio {mean_win:.4f}")
        return profiles
