from dataclasses import dataclass, field
from typing import FrozenSet, Optional, Tuple

from src.domain.entities.game_entity import GameStatus, LossReason, Role
from src.domain.entities.world_entity import CityId, WorldMap


@dataclass(frozen=True, slots=True)
class PublicPlayer:
    role: Role
    location: CityId
    hand: Tuple[CityId, ...]
    ops_move_used: bool


@dataclass(frozen=True, slots=True)
class PublicView:
    """플레이어 모두가 볼 수 있는 필드. 손패는 공개 정보로 취급한다."""
    players: Tuple[PublicPlayer, ...]
    current_player: int
    actions_left: int
    cubes: Tuple[int, ...]
    supply: Tuple[int, ...]
    stations: FrozenSet[CityId]
    cured: Tuple[bool, ...]
    eradicated: Tuple[bool, ...]
    epidemics_drawn: int
    epidemics_total: int
    outbreaks: int
    status: GameStatus
    loss_reason: Optional[LossReason]
    turn_number: int
    infection_discard: Tuple[CityId, ...]
    player_discard: Tuple[int, ...]
    initial_partition_sizes: Tuple[int, ...]


@dataclass(frozen=True, slots=True)
class PartitionSkeleton:
    size: int
    has_epidemic: bool

    @property
    def city_cards(self) -> int:
        return self.size - (1 if self.has_epidemic else 0)


@dataclass(frozen=True, eq=True)
class BeliefState:
    """
    숨겨진 덱에 대한 플레이어 지식.

        infection_sections: 감염 덱 구역 (위 -> 아래), 구역 안 순서는 모른다
        deck_skeleton:      플레이어 덱 더미 구조 (위 -> 아래)
        unseen_city_cards:  손패와 버린 더미에 없는 도시 카드 = 플레이어 덱 안의 도시 카드
    """
    world: WorldMap = field(compare=False)
    public: PublicView
    infection_sections: Tuple[FrozenSet[CityId], ...]
    deck_skeleton: Tuple[PartitionSkeleton, ...]
    unseen_city_cards: FrozenSet[CityId]

    @property
    def deck_size(self) -> int:
        return sum(partition.size for partition in self.deck_skeleton)

    @property
    def is_over(self) -> bool:
        return self.public.status is not GameStatus.ONGOING
