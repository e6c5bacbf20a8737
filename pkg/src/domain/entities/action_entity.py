from dataclasses import dataclass
from enum import Enum, IntEnum
from typing import Tuple

from src.domain.entities.world_entity import CityId

NO_TARGET = -1


class ActionKind(IntEnum):
    DRIVE_FERRY = 0
    DIRECT_FLIGHT = 1
    CHARTER_FLIGHT = 2
    SHUTTLE_FLIGHT = 3
    OPS_EXPERT_FLIGHT = 4
    TREAT_DISEASE = 5
    BUILD_STATION = 6
    SHARE_GIVE = 7
    SHARE_TAKE = 8
    DISCOVER_CURE = 9
    PASS = 10


class ActionCategory(IntEnum):
    MOVE = 0
    TREAT = 1
    BUILD = 2
    SHARE = 3
    CURE = 4
    PASS = 5

    @property
    def label(self) -> str:
        return self.name.lower()


MOVE_KINDS = frozenset({
    ActionKind.DRIVE_FERRY,
    ActionKind.DIRECT_FLIGHT,
    ActionKind.CHARTER_FLIGHT,
    ActionKind.SHUTTLE_FLIGHT,
    ActionKind.OPS_EXPERT_FLIGHT,
})

ACTION_CATEGORY = {
    ActionKind.DRIVE_FERRY: ActionCategory.MOVE,
    ActionKind.DIRECT_FLIGHT: ActionCategory.MOVE,
    ActionKind.CHARTER_FLIGHT: ActionCategory.MOVE,
    ActionKind.SHUTTLE_FLIGHT: ActionCategory.MOVE,
    ActionKind.OPS_EXPERT_FLIGHT: ActionCategory.MOVE,
    ActionKind.TREAT_DISEASE: ActionCategory.TREAT,
    ActionKind.BUILD_STATION: ActionCategory.BUILD,
    ActionKind.SHARE_GIVE: ActionCategory.SHARE,
    ActionKind.SHARE_TAKE: ActionCategory.SHARE,
    ActionKind.DISCOVER_CURE: ActionCategory.CURE,
    ActionKind.PASS: ActionCategory.PASS,
}


@dataclass(frozen=True, slots=True)
class AtomicAction:
    """
    한 번의 행동 (턴당 4회). 사용하지 않는 필드는 NO_TARGET.

        target:  이동 목적지 도시
        card:    버리거나 주고받는 카드 (도시 카드 = CityId)
        player:  카드를 주고받는 상대 플레이어 인덱스
        color:   치료/치료제 개발 색
        cards:   치료제 개발에 쓰는 카드 묶음
    """
    kind: ActionKind
    target: CityId = NO_TARGET
    card: CityId = NO_TARGET
    player: int = NO_TARGET
    color: int = NO_TARGET
    cards: Tuple[CityId, ...] = ()

    @property
    def category(self) -> ActionCategory:
        return ACTION_CATEGORY[self.kind]

    @property
    def is_move(self) -> bool:
        return self.kind in MOVE_KINDS

    @classmethod
    def drive(cls, to: CityId) -> "AtomicAction":
        return cls(ActionKind.DRIVE_FERRY, target=to)

    @classmethod
    def direct_flight(cls, card: CityId) -> "AtomicAction":
        return cls(ActionKind.DIRECT_FLIGHT, target=card, card=card)

    @classmethod
    def charter_flight(cls, to: CityId, card: CityId) -> "AtomicAction":
        return cls(ActionKind.CHARTER_FLIGHT, target=to, card=card)

    @classmethod
    def shuttle_flight(cls, to: CityId) -> "AtomicAction":
        return cls(ActionKind.SHUTTLE_FLIGHT, target=to)

    @classmethod
    def ops_expert_flight(cls, to: CityId, card: CityId) -> "AtomicAction":
        return cls(ActionKind.OPS_EXPERT_FLIGHT, target=to, card=card)

    @classmethod
    def treat(cls, color: int) -> "AtomicAction":
        return cls(ActionKind.TREAT_DISEASE, color=int(color))

    @classmethod
    def build(cls) -> "AtomicAction":
        return cls(ActionKind.BUILD_STATION)

    @classmethod
    def share_give(cls, to_player: int, card: CityId) -> "AtomicAction":
        return cls(ActionKind.SHARE_GIVE, card=card, player=to_player)

    @classmethod
    def share_take(cls, from_player: int, card: CityId) -> "AtomicAction":
        return cls(ActionKind.SHARE_TAKE, card=card, player=from_player)

    @classmethod
    def discover_cure(cls, color: int, cards: Tuple[CityId, ...]) -> "AtomicAction":
        return cls(ActionKind.DISCOVER_CURE, color=int(color), cards=tuple(sorted(cards)))

    @classmethod
    def pass_turn(cls) -> "AtomicAction":
        return cls(ActionKind.PASS)

    def to_record(self) -> dict:
        record = {"kind": self.kind.name.lower()}
        for name in ("target", "card", "player", "color"):
            value = getattr(self, name)
            if value != NO_TARGET:
                record[name] = value
        if self.cards:
            record["cards"] = list(self.cards)
        return record


PASS_ACTION = AtomicAction.pass_turn()


class MacroKind(str, Enum):
    TREAT_DISEASE = "treat"
    DISCOVER_CURE = "cure"
    BUILD_STATION = "build"
    SHARE_GIVE = "share_give"
    SHARE_TAKE = "share_take"
    WALK_AWAY = "walk_away"


@dataclass(frozen=True, slots=True)
class MacroAction:
    """
    이동 + 목적 행동 묶음. steps 는 계획 시점 상태에서 순서대로 합법이다.
    waits=True 인 공유 매크로는 만남 도시로 이동한 뒤 남은 행동을 Pass 로 채운다.
    """
    kind: MacroKind
    player: int
    steps: Tuple[AtomicAction, ...]
    city: CityId = NO_TARGET
    color: int = NO_TARGET
    card: CityId = NO_TARGET
    other_player: int = NO_TARGET
    waits: bool = False

    @property
    def cost(self) -> int:
        return len(self.steps)

    def to_record(self) -> dict:
        return {
            "kind": self.kind.value,
            "player": self.player,
            "city": self.city,
            "color": self.color,
            "card": self.card,
            "other_player": self.other_player,
            "waits": self.waits,
            "steps": [step.to_record() for step in self.steps],
        }
