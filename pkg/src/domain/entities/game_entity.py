import random
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Set, Tuple

from src.domain.entities.action_entity import ActionCategory
from src.domain.entities.event_entity import EventLog
from src.domain.entities.world_entity import COLOR_COUNT, CityId, WorldMap

ACTIONS_PER_TURN = 4
HAND_LIMIT = 7
STARTING_HAND = 2
CUBES_PER_COLOR = 24
MAX_CUBES_PER_CITY = 3
MAX_OUTBREAKS = 8
MAX_STATIONS = 6
EPIDEMIC_CARD = -1
INITIAL_INFECTIONS: Tuple[int, ...] = (3, 3, 3, 2, 2, 2, 1, 1, 1)


class Role(str, Enum):
    OPERATIONS_EXPERT = "operations_expert"
    RESEARCHER = "researcher"
    MEDIC = "medic"
    SCIENTIST = "scientist"

    @property
    def cure_cost(self) -> int:
        return 4 if self is Role.SCIENTIST else 5


DEFAULT_ROLE_ORDER: Tuple[Role, ...] = (
    Role.OPERATIONS_EXPERT,
    Role.MEDIC,
    Role.RESEARCHER,
    Role.SCIENTIST,
)


class GameStatus(str, Enum):
    ONGOING = "ongoing"
    WON = "won"
    LOST = "lost"


class LossReason(str, Enum):
    OUTBREAK_LIMIT = "outbreak_limit"
    CUBES_EXHAUSTED = "cubes_exhausted"
    DECK_EXHAUSTED = "deck_exhausted"


@dataclass(frozen=True, slots=True)
class Outcome:
    status: GameStatus
    loss_reason: Optional[LossReason] = None

    @property
    def is_over(self) -> bool:
        return self.status is not GameStatus.ONGOING


@dataclass(slots=True)
class PlayerState:
    role: Role
    location: CityId
    hand: List[CityId] = field(default_factory=list)
    ops_move_used: bool = False

    def copy(self) -> "PlayerState":
        return PlayerState(self.role, self.location, list(self.hand), self.ops_move_used)


@dataclass(slots=True)
class InfectionDeck:
    """
    sections: 위 -> 아래 순서의 구역. 각 구역 리스트는 그 구역의 실제 순서(맨 앞이 위)다.
    구역 내부 순서는 플레이어가 알 수 없으므로 belief 는 구역을 집합으로만 본다.
    """
    sections: List[List[CityId]] = field(default_factory=list)
    discard: List[CityId] = field(default_factory=list)

    def size(self) -> int:
        return sum(len(section) for section in self.sections)

    def draw_top(self) -> CityId:
        section = self.sections[0]
        card = section.pop(0)
        if not section:
            self.sections.pop(0)
        return card

    def draw_bottom(self) -> CityId:
        section = self.sections[-1]
        card = section.pop()
        if not section:
            self.sections.pop()
        return card

    def recycle_discard(self, rng: random.Random) -> None:
        if not self.discard:
            return
        cards = list(self.discard)
        rng.shuffle(cards)
        self.sections.insert(0, cards)
        self.discard.clear()

    def copy(self) -> "InfectionDeck":
        return InfectionDeck([list(section) for section in self.sections], list(self.discard))


@dataclass(slots=True)
class PlayerDeck:
    """
    partitions: 위 -> 아래 순서의 더미. 맨 위 더미는 일부가 이미 뽑혔을 수 있다.
    initial_sizes: 셋업 시점 더미 크기 (에피데믹 포함, 위 -> 아래).
    discard: 비용으로 버린 도시 카드와 뽑힌 에피데믹(EPIDEMIC_CARD).
    """
    partitions: List[List[int]] = field(default_factory=list)
    initial_sizes: Tuple[int, ...] = ()
    discard: List[int] = field(default_factory=list)

    def size(self) -> int:
        return sum(len(partition) for partition in self.partitions)

    def draw(self) -> int:
        partition = self.partitions[0]
        card = partition.pop(0)
        if not partition:
            self.partitions.pop(0)
        return card

    def copy(self) -> "PlayerDeck":
        return PlayerDeck([list(p) for p in self.partitions], self.initial_sizes, list(self.discard))


@dataclass(slots=True)
class GameState:
    """
    구체적인 게임 상태 하나. 값처럼 다룬다: 시뮬레이션은 clone() 한 사본에서만 진행한다.

    cubes 는 city * 4 + color 로 색인하는 평탄한 리스트다.
    tally 는 ActionCategory 별 행동 수, turn_number 는 끝난 플레이어 턴 수다.
    """
    world: WorldMap
    players: List[PlayerState]
    cubes: List[int]
    supply: List[int]
    stations: Set[CityId]
    infection_deck: InfectionDeck
    player_deck: PlayerDeck
    rng: random.Random
    current_player: int = 0
    actions_left: int = ACTIONS_PER_TURN
    cured: List[bool] = field(default_factory=lambda: [False] * COLOR_COUNT)
    eradicated: List[bool] = field(default_factory=lambda: [False] * COLOR_COUNT)
    epidemics_drawn: int = 0
    epidemics_total: int = 4
    outbreaks: int = 0
    status: GameStatus = GameStatus.ONGOING
    loss_reason: Optional[LossReason] = None
    turn_number: int = 0
    tally: List[int] = field(default_factory=lambda: [0] * len(ActionCategory))
    events: Optional[EventLog] = None

    @property
    def is_over(self) -> bool:
        return self.status is not GameStatus.ONGOING

    @property
    def player(self) -> PlayerState:
        return self.players[self.current_player]

    @property
    def cured_count(self) -> int:
        return sum(self.cured)

    def cube_count(self, city: CityId, color: int) -> int:
        return self.cubes[city * COLOR_COUNT + color]

    def cubes_on_board(self, color: int) -> int:
        return sum(self.cubes[color::COLOR_COUNT])

    def clone(self, keep_events: bool = False) -> "GameState":
        rng = random.Random()
        rng.setstate(self.rng.getstate())
        return GameState(
            world=self.world,
            players=[p.copy() for p in self.players],
            cubes=list(self.cubes),
            supply=list(self.supply),
            stations=set(self.stations),
            infection_deck=self.infection_deck.copy(),
            player_deck=self.player_deck.copy(),
            rng=rng,
            current_player=self.current_player,
            actions_left=self.actions_left,
            cured=list(self.cured),
            eradicated=list(self.eradicated),
            epidemics_drawn=self.epidemics_drawn,
            epidemics_total=self.epidemics_total,
            outbreaks=self.outbreaks,
            status=self.status,
            loss_reason=self.loss_reason,
            turn_number=self.turn_number,
            tally=list(self.tally),
            events=self.events.copy() if keep_events and self.events is not None else None,
        )
