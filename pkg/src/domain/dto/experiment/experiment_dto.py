from typing import List

from pydantic import BaseModel, ConfigDict, Field, field_validator

from src.domain.dto.agent.rhea_dto import AgentKind, RheaConfig
from src.domain.dto.setup.setup_dto import SetupRecord


class Condition(BaseModel):
    model_config = ConfigDict(frozen=True)

    p_rand: bool = False        # 역할 순서 무작위
    d_rand: bool = False        # 숨겨진 덱 재셔플
    players: int = Field(default=4, ge=2, le=4)
    epidemics: int = Field(default=4, ge=4, le=6)

    @property
    def label(self) -> str:
        flags = ("P" if self.p_rand else "") + ("D" if self.d_rand else "")
        return f"{flags or 'fixed'}-{self.players}p-{self.epidemics}e"


class ExperimentGrid(BaseModel):
    agents: List[AgentKind]
    fitness_specs: List[str] = Field(default_factory=lambda: ["p:avg(f_oa,f_cm)"])
    rhea: RheaConfig = Field(default_factory=RheaConfig)
    setups: List[SetupRecord]
    runs: int = Field(default=30, ge=1)
    conditions: List[Condition] = Field(default_factory=lambda: [Condition()])
    master_seed: int = 0
    workers: int = Field(default=1, ge=1)

    @field_validator("agents", "setups", "conditions")
    @classmethod
    def validate_not_empty(cls, v):
        if not v:
            raise ValueError('[ExperimentGrid] empty grid axis')
        return v
