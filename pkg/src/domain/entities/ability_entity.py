from dataclasses import dataclass
from typing import Tuple


@dataclass(frozen=True, slots=True)
class CureAbility:
    """
    per_color[t]       = A(t): 치료되었으면 1, 아니면 플레이어별 A_c 의 최댓값
    per_player[p][t]   = A_c(p, t) = min(1, 손패의 t 색 카드 수 / 치료 비용)
    """
    per_color: Tuple[float, ...]
    per_player: Tuple[Tuple[float, ...], ...]

    @property
    def total(self) -> float:
        return sum(self.per_color)
