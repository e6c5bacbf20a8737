from collections import deque
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple

from src.domain.entities.action_entity import AtomicAction
from src.domain.entities.game_entity import GameState, Role
from src.domain.entities.world_entity import CityId
from src.service.macros.cure_ability_service import spend_eligible

"""

    이동 최단 경로 탐색.

    탐색 상태 = (도시, 이미 쓴 카드 집합(손패 위치 비트마스크), 작전 전문가 비행 사용 여부).
    너비 우선이므로 먼저 발견된 상태가 최소 비용이다. 같은 상태는 한 번만 확장한다.

"""


@dataclass(frozen=True, slots=True)
class RouteLabel:
    city: CityId
    spent: int                  # 손패 인덱스 비트마스크
    ops_used: bool
    cost: int
    parent: int                 # labels 인덱스, 시작점은 -1
    action: Optional[AtomicAction]

    @property
    def cards_spent(self) -> int:
        return bin(self.spent).count("1")


@dataclass(frozen=True, slots=True)
class Route:
    city: CityId
    cost: int
    steps: Tuple[AtomicAction, ...]
    spent_cards: Tuple[CityId, ...]


class ReachResult:
    def __init__(self, hand: Tuple[CityId, ...], labels: List[RouteLabel]):
        self.hand = hand
        self.labels = labels
        self._by_city: Dict[CityId, List[int]] = {}
        for index, label in enumerate(labels):
            self._by_city.setdefault(label.city, []).append(index)

    def cities(self) -> List[CityId]:
        return sorted(self._by_city)

    def cost(self, city: CityId) -> Optional[int]:
        route = self.best(city)
        return None if route is None else route.cost

    def best(self, city: CityId, keep: Iterable[CityId] = ()) -> Optional[Route]:
        """
        city 까지 최소 비용 경로. 같은 비용이면 카드를 덜 쓰는 경로, 그다음 먼저 찾은 경로.
        keep 에 있는 카드는 쓰지 않는 경로만 고른다.
        """
        keep_mask = 0
        for card in keep:
            if card in self.hand:
                keep_mask |= 1 << self.hand.index(card)

        chosen = None
        for index in self._by_city.get(city, ()):
            label = self.labels[index]
            if label.spent & keep_mask:
                continue
            if chosen is None or (label.cost, label.cards_spent) < (chosen.cost, chosen.cards_spent):
                chosen = label
        if chosen is None:
            return None
        return self._route(chosen)

    def _route(self, label: RouteLabel) -> Route:
        steps = []
        cursor = label
        while cursor.parent >= 0:
            steps.append(cursor.action)
            cursor = self.labels[cursor.parent]
        steps.reverse()
        spent_cards = tuple(card for position, card in enumerate(self.hand) if label.spent >> position & 1)
        return Route(label.city, label.cost, tuple(steps), spent_cards)


def reach(state: GameState, player: int, budget: int) -> ReachResult:
    """
    [입력]
        player: 이동할 플레이어 인덱스
        budget: 쓸 수 있는 행동 수 (1~4)
    [출력]
        ReachResult: 도시별 최소 비용과 경로. 카드 소모 이동은 spend_eligible 카드만 쓴다.
    """
    world = state.world
    me = state.players[player]
    hand = tuple(me.hand)
    stations = sorted(state.stations)
    is_ops = me.role is Role.OPERATIONS_EXPERT
    all_cities = range(world.size)

    eligibility: Dict[Tuple[int, int], bool] = {}

    def eligible(position: int, spent: int) -> bool:
        key = (position, spent)
        if key not in eligibility:
            spent_cards = [card for index, card in enumerate(hand) if spent >> index & 1]
            eligibility[key] = spend_eligible(state, player, hand[position], spent_cards)
        return eligibility[key]

    start = RouteLabel(me.location, 0, me.ops_move_used, 0, -1, None)
    labels = [start]
    seen = {(start.city, start.spent, start.ops_used)}
    queue = deque([0])

    while queue:
        index = queue.popleft()
        label = labels[index]
        if label.cost >= budget:
            continue
        city, spent, ops_used = label.city, label.spent, label.ops_used
        successors = []

        successors.extend((target, spent, ops_used, AtomicAction.drive(target))
                          for target in world.neighbors[city])
        if city in state.stations:
            successors.extend((target, spent, ops_used, AtomicAction.shuttle_flight(target))
                              for target in stations if target != city)

        for position in sorted(range(len(hand)), key=lambda p: hand[p]):
            if spent >> position & 1 or not eligible(position, spent):
                continue
            card = hand[position]
            used = spent | (1 << position)
            if card != city:
                successors.append((card, used, ops_used, AtomicAction.direct_flight(card)))
            else:
                successors.extend((target, used, ops_used, AtomicAction.charter_flight(target, card))
                                  for target in all_cities if target != city)
            if is_ops and not ops_used and city in state.stations:
                successors.extend((target, used, True, AtomicAction.ops_expert_flight(target, card))
                                  for target in all_cities if target != city)

        for target, used, ops_flag, action in successors:
            key = (target, used, ops_flag)
            if key in seen:
                continue
            seen.add(key)
            labels.append(RouteLabel(target, used, ops_flag, label.cost + 1, index, action))
            queue.append(len(labels) - 1)

    return ReachResult(hand, labels)
