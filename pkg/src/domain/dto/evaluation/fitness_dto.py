from enum import Enum
from typing import Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator


class FitnessBase(str, Enum):
    F_OD = "f_od"       # 치료제 수
    F_OA = "f_oa"       # 치료 가능성 A(t)
    F_CA = "f_ca"       # 남은 큐브 평균
    F_CM = "f_cm"       # 남은 큐브 최소
    F_CP = "f_cp"       # 남은 큐브 곱
    F_B = "f_b"         # 발병 수


class FitnessWrapper(str, Enum):
    NONE = "none"
    WIN_LOSE = "w"
    PENALTY = "p"


class FoaMode(str, Enum):
    SCALED = "scaled"       # 0.3 * N_d / 4 로 읽어 최댓값이 정확히 1
    CLAMPED = "clamped"     # 인쇄된 식 그대로 계산 후 1 로 자름


class FitnessSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    bases: Tuple[FitnessBase, ...]
    weights: Optional[Tuple[float, float]] = None       # 두 base 일 때만, 첫 base 가중치 w / 둘째 1-w
    wrapper: FitnessWrapper = FitnessWrapper.NONE
    penalty: float = Field(default=0.1, gt=0.0, lt=1.0)  # C_p
    foa_mode: FoaMode = FoaMode.SCALED

    @model_validator(mode="after")
    def validate_shape(self):
        if len(self.bases) not in (1, 2):
            raise ValueError('[FitnessSpec] one or two bases expected')
        if self.weights is not None:
            if len(self.bases) != 2:
                raise ValueError('[FitnessSpec] weights need two bases')
            first, second = self.weights
            if not (0.0 <= first <= 1.0) or abs(first + second - 1.0) > 1e-9:
                raise ValueError('[FitnessSpec] weights must lie in [0,1] and sum to 1')
        return self

    @property
    def label(self) -> str:
        if len(self.bases) == 1:
            body = self.bases[0].value
        elif self.weights is None:
            body = f"avg({self.bases[0].value},{self.bases[1].value})"
        else:
            body = f"wavg({self.bases[0].value},{self.bases[1].value},{self.weights[0]:g})"
        if self.wrapper is FitnessWrapper.NONE:
            return body
        return f"{self.wrapper.value}:{body}"

    def __str__(self) -> str:
        return self.label


DEFAULT_FITNESS = FitnessSpec(bases=(FitnessBase.F_OA, FitnessBase.F_CM), wrapper=FitnessWrapper.PENALTY)
