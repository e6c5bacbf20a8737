from enum import Enum

from pydantic import BaseModel, ConfigDict, Field

from src.domain.dto.evaluation.fitness_dto import DEFAULT_FITNESS, FitnessSpec


class CommitMode(str, Enum):
    FIRST_MACRO = "first_macro"
    WHOLE_TURN = "whole_turn"


class AgentKind(str, Enum):
    DP = "dp"
    RHEA = "rhea"


class RheaConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    horizon: int = Field(default=5, ge=1)           # H, 플레이어 턴 수
    generations: int = Field(default=100, ge=0)     # 0 이면 DP 시드를 그대로 사용
    trials: int = Field(default=5, ge=1)            # 개체당 결정화 시뮬레이션 수
    fitness: FitnessSpec = DEFAULT_FITNESS
    commit: CommitMode = CommitMode.FIRST_MACRO
    resample_incumbent: bool = False                # 매 세대 현 개체 재평가
