from typing import Dict, Optional

from pydantic import BaseModel, Field

from src.domain.entities.action_entity import ActionCategory
from src.domain.entities.game_entity import LossReason


class RunMetrics(BaseModel):
    """게임 한 판의 결과 지표."""
    won: bool
    duration: int                                           # 시작된 플레이어 턴 수
    loss_reason: Optional[LossReason] = None
    outbreaks: int
    cities_with_cubes: Dict[int, int] = Field(default_factory=dict)   # {1: n, 2: n, 3: n} (도시, 색) 쌍 수
    action_counts: Dict[str, int] = Field(default_factory=dict)       # move/treat/build/share/cure/pass
    research_stations: int
    stations_built: int
    cured: int
    epidemics_drawn: int

    @property
    def total_actions(self) -> int:
        return sum(self.action_counts.values())

    @property
    def share_ratio(self) -> float:
        total = self.total_actions
        return self.action_counts.get(ActionCategory.SHARE.label, 0) / total if total else 0.0


class CellResult(BaseModel):
    """결과 표의 한 행: (agent, fitness, setup, condition)."""
    agent: str
    fitness: str
    setup_id: int
    condition: str
    p_rand: bool
    d_rand: bool
    players: int
    epidemics: int
    runs: int
    wins: int
    win_ratio: float
    loss_ratio: float
    loss_outbreak_limit: float
    loss_cubes_exhausted: float
    loss_deck_exhausted: float
    mean_duration: float
    mean_lost_duration: Optional[float] = None
    mean_outbreaks: float
    mean_stations: float
    ratio_move: float
    ratio_treat: float
    ratio_build: float
    ratio_share: float
    ratio_cure: float
    ratio_pass: float
    cities_1_ratio: float
    cities_2_ratio: float
    cities_3_ratio: float
    improvement_over_dp: Optional[float] = None
    p_value_vs_dp: Optional[float] = None


RESULT_COLUMNS = tuple(CellResult.model_fields.keys())
