from typing import List

from pydantic import BaseModel, Field

from src.domain.entities.game_entity import DEFAULT_ROLE_ORDER, Role


class ProfileSettings(BaseModel):
    setups: int = Field(default=1000, ge=1)
    runs: int = Field(default=30, ge=1)
    players: int = Field(default=4, ge=2, le=4)
    epidemics: int = Field(default=4, ge=4, le=6)


class SelectionSettings(BaseModel):
    medoids: int = Field(default=10, ge=1)
    top_fraction: float = Field(default=0.1, gt=0.0, le=1.0)
    min_win_ratio: float = Field(default=0.02, ge=0.0, le=1.0)
    max_iterations: int = Field(default=100, ge=1)


class RheaSettings(BaseModel):
    horizon: int = Field(default=5, ge=1)
    generations: int = Field(default=100, ge=0)
    trials: int = Field(default=5, ge=1)
    fitness: str = "p:avg(f_oa,f_cm)"
    commit: str = "first_macro"


class HarnessSettings(BaseModel):
    """harness_config.json 검증 모델. CLI 인자가 필드 단위로 덮어쓴다."""
    map: str = "standard"
    duration_normalizer: int = Field(default=23, ge=1)
    default_roles: List[Role] = Field(default_factory=lambda: list(DEFAULT_ROLE_ORDER))
    bench_runs: int = Field(default=30, ge=1)
    workers: int = Field(default=0, ge=0)       # 0 = CPU 수
    profile: ProfileSettings = Field(default_factory=ProfileSettings)
    selection: SelectionSettings = Field(default_factory=SelectionSettings)
    rhea: RheaSettings = Field(default_factory=RheaSettings)
