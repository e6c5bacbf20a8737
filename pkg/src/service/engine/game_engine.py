import random
from collections import deque
from typing import Callable, List, Optional, Sequence

from src.domain.dto.setup.setup_dto import EPIDEMIC_LABEL, SetupRecord
from src.domain.entities.action_entity import ActionCategory, ActionKind, AtomicAction, PASS_ACTION
from src.domain.entities.event_entity import EventKind, EventLog
from src.domain.entities.game_entity import (
    ACTIONS_PER_TURN,
    CUBES_PER_COLOR,
    EPIDEMIC_CARD,
    HAND_LIMIT,
    INITIAL_INFECTIONS,
    MAX_CUBES_PER_CITY,
    MAX_OUTBREAKS,
    MAX_STATIONS,
    STARTING_HAND,
    GameState,
    GameStatus,
    InfectionDeck,
    LossReason,
    Outcome,
    PlayerDeck,
    PlayerState,
    Role,
)
from src.domain.entities.world_entity import COLOR_COUNT, CityId, WorldMap
from src.utils.exception_handler.game_error_class import IllegalActionException, InvalidSetupException

"""

    게임 규칙 엔진. 모든 연산은 전달된 GameState 를 제자리에서 바꾼다.
    시뮬레이션 쪽은 반드시 state.clone() 한 사본을 넘긴다.

    게임이 끝난(Won/Lost) 상태에서는 어떤 연산도 상태를 바꾸지 않는다.

"""

DiscardPolicy = Callable[[GameState, int], CityId]

MIN_PLAYERS = 2
MAX_PLAYERS = 4
MIN_EPIDEMICS = 4
MAX_EPIDEMICS = 6


def lowest_card_policy(state: GameState, player: int) -> CityId:
    return min(state.players[player].hand)


def infection_rate(epidemics_drawn: int) -> int:
    if epidemics_drawn <= 3:
        return 2
    if epidemics_drawn <= 5:
        return 3
    return 4


def split_piles(cards: Sequence[CityId], piles: int) -> List[List[CityId]]:
    """크기가 최대 1 차이 나도록 나눈다. 큰 더미가 위쪽."""
    base, extra = divmod(len(cards), piles)
    result, start = [], 0
    for index in range(piles):
        size = base + (1 if index < extra else 0)
        result.append(list(cards[start:start + size]))
        start += size
    return result


class GameEngine:
    def __init__(self, discard_policy: Optional[DiscardPolicy] = None):
        self.discard_policy = discard_policy or lowest_card_policy

    # ------------------------------------------------------------------ setup

    def new_game(self, world: WorldMap, roles: Sequence[Role], epidemics: int, seed: int,
                 record_events: bool = False) -> GameState:
        """
        [입력]
            world: 지도
            roles: 좌석 순서대로의 역할 (2~4명, 중복 불가)
            epidemics: 에피데믹 카드 수 = 플레이어 덱 더미 수 (4~6)
            seed: 셋업과 게임 중 난수 모두를 결정하는 시드
        [출력]
            셋업이 끝난 GameState (9장 감염 완료, 모든 플레이어는 시작 도시)
        """
        self.validate_roles(roles)
        if not MIN_EPIDEMICS <= epidemics <= MAX_EPIDEMICS:
            raise InvalidSetupException(f"에피데믹 수는 {MIN_EPIDEMICS}~{MAX_EPIDEMICS} 이어야 합니다: {epidemics}")

        rng = random.Random(seed)
        city_cards = list(range(world.size))
        rng.shuffle(city_cards)

        dealt = STARTING_HAND * len(roles)
        if world.size - dealt < epidemics or world.size < len(INITIAL_INFECTIONS):
            raise InvalidSetupException(f"지도가 너무 작습니다: {world.size} 도시")
        hands = [city_cards[i * STARTING_HAND:(i + 1) * STARTING_HAND] for i in range(len(roles))]

        piles = []
        for pile in split_piles(city_cards[dealt:], epidemics):
            pile.append(EPIDEMIC_CARD)
            rng.shuffle(pile)
            piles.append(pile)

        infection_order = list(range(world.size))
        rng.shuffle(infection_order)

        return self.assemble(world, roles, hands, piles, infection_order, epidemics, rng, record_events)

    def assemble(self, world: WorldMap, roles: Sequence[Role], hands: Sequence[Sequence[CityId]],
                 piles: Sequence[Sequence[int]], infection_order: Sequence[CityId], epidemics: int,
                 rng: random.Random, record_events: bool = False) -> GameState:
        """
        정해진 카드 배치로 초기 상태를 만든다.
        infection_order 는 셋업 시점의 감염 덱 전체 (위 -> 아래). 맨 위 9장이 초기 감염이다.
        """
        self.validate_roles(roles)
        if len(hands) != len(roles):
            raise InvalidSetupException("손패 수와 플레이어 수가 다릅니다.")
        if sorted(infection_order) != list(range(world.size)):
            raise InvalidSetupException("감염 덱이 모든 도시를 정확히 한 장씩 포함해야 합니다.")
        city_cards = [card for hand in hands for card in hand] + \
                     [card for pile in piles for card in pile if card != EPIDEMIC_CARD]
        if sorted(city_cards) != list(range(world.size)):
            raise InvalidSetupException("플레이어 카드가 모든 도시를 정확히 한 장씩 포함해야 합니다.")
        if sum(pile.count(EPIDEMIC_CARD) for pile in piles) != epidemics:
            raise InvalidSetupException("에피데믹 카드 수가 맞지 않습니다.")

        start = world.starting_city
        state = GameState(
            world=world,
            players=[PlayerState(role, start, list(hand)) for role, hand in zip(roles, hands)],
            cubes=[0] * (world.size * COLOR_COUNT),
            supply=[CUBES_PER_COLOR] * COLOR_COUNT,
            stations={start},
            infection_deck=InfectionDeck([list(infection_order)], []),
            player_deck=PlayerDeck([list(p) for p in piles if p], tuple(len(p) for p in piles if p), []),
            rng=rng,
            epidemics_total=epidemics,
            events=EventLog() if record_events else None,
        )
        self._emit(state, EventKind.SETUP, roles=[r.value for r in roles], epidemics=epidemics,
                   hands=[list(h) for h in hands], piles=[list(p) for p in piles])

        for cubes in INITIAL_INFECTIONS:
            city = state.infection_deck.draw_top()
            color = world.color(city)
            self._place(state, city, color, cubes)
            state.infection_deck.discard.append(city)
        return state

    def new_game_from_setup(self, world: WorldMap, record: SetupRecord, seed: int,
                            record_events: bool = False) -> GameState:
        """
        SetupRecord 를 그대로 재생한다. 카드 배치는 기록에서, 게임 중 난수는 seed 에서 온다.
        """
        if record.map_id != world.map_id:
            raise InvalidSetupException(f"지도가 다릅니다: 기록 {record.map_id}, 현재 {world.map_id}")
        try:
            hands = [[world.city_id(name) for name in hand] for hand in record.hands]
            piles = [[EPIDEMIC_CARD if name == EPIDEMIC_LABEL else world.city_id(name) for name in pile]
                     for pile in record.player_deck]
            infection_order = [world.city_id(name) for name in record.infection_discard + record.infection_deck]
        except KeyError as e:
            raise InvalidSetupException(f"기록에 지도에 없는 도시가 있습니다: {e}")

        state = self.assemble(world, record.roles, hands, piles, infection_order, record.epidemics,
                              random.Random(seed), record_events)
        for infection in record.initial_infections:
            city = world.city_id(infection.city)
            if state.cube_count(city, world.color(city)) != infection.cubes:
                raise InvalidSetupException(f"초기 감염이 기록과 다릅니다: {infection.city}")
        return state

    @staticmethod
    def validate_roles(roles: Sequence[Role]) -> None:
        if not MIN_PLAYERS <= len(roles) <= MAX_PLAYERS:
            raise InvalidSetupException(f"플레이어 수는 {MIN_PLAYERS}~{MAX_PLAYERS} 명이어야 합니다: {len(roles)}")
        if len(set(roles)) != len(roles):
            raise InvalidSetupException(f"역할이 중복되었습니다: {[r.value for r in roles]}")

    # ---------------------------------------------------------------- actions

    def legal_actions(self, state: GameState) -> List[AtomicAction]:
        if state.is_over or state.actions_left <= 0:
            return []
        me = state.player
        loc = me.location
        world = state.world
        actions: List[AtomicAction] = []

        actions.extend(AtomicAction.drive(city) for city in world.neighbors[loc])
        actions.extend(AtomicAction.direct_flight(card) for card in me.hand if card != loc)
        if loc in me.hand:
            actions.extend(AtomicAction.charter_flight(city, loc) for city in range(world.size) if city != loc)
        if loc in state.stations:
            actions.extend(AtomicAction.shuttle_flight(city) for city in sorted(state.stations) if city != loc)
            if me.role is Role.OPERATIONS_EXPERT and not me.ops_move_used:
                for card in me.hand:
                    actions.extend(AtomicAction.ops_expert_flight(city, card)
                                   for city in range(world.size) if city != loc)

        actions.extend(AtomicAction.treat(color) for color in range(COLOR_COUNT) if state.cube_count(loc, color))

        if self._can_build(state, me):
            actions.append(AtomicAction.build())

        for index, other in enumerate(state.players):
            if index == state.current_player or other.location != loc:
                continue
            for card in me.hand:
                if card == loc or me.role is Role.RESEARCHER:
                    actions.append(AtomicAction.share_give(index, card))
            if loc in other.hand:
                actions.append(AtomicAction.share_take(index, loc))

        if loc in state.stations:
            for color in range(COLOR_COUNT):
                if state.cured[color]:
                    continue
                matching = sorted(card for card in me.hand if world.colors[card] == color)
                if len(matching) >= me.role.cure_cost:
                    actions.append(AtomicAction.discover_cure(color, tuple(matching[:me.role.cure_cost])))

        actions.append(PASS_ACTION)
        return actions

    def is_legal(self, state: GameState, action: AtomicAction) -> bool:
        if state.is_over or state.actions_left <= 0:
            return False
        me = state.player
        loc = me.location
        world = state.world
        kind = action.kind

        if kind is ActionKind.PASS:
            return True
        if kind is ActionKind.DRIVE_FERRY:
            return 0 <= action.target < world.size and action.target in world.neighbors[loc]
        if kind is ActionKind.DIRECT_FLIGHT:
            return action.card == action.target and action.card in me.hand and action.card != loc
        if kind is ActionKind.CHARTER_FLIGHT:
            return action.card == loc and loc in me.hand and 0 <= action.target < world.size and action.target != loc
        if kind is ActionKind.SHUTTLE_FLIGHT:
            return loc in state.stations and action.target in state.stations and action.target != loc
        if kind is ActionKind.OPS_EXPERT_FLIGHT:
            return (me.role is Role.OPERATIONS_EXPERT and not me.ops_move_used and loc in state.stations
                    and action.card in me.hand and 0 <= action.target < world.size and action.target != loc)
        if kind is ActionKind.TREAT_DISEASE:
            return 0 <= action.color < COLOR_COUNT and state.cube_count(loc, action.color) > 0
        if kind is ActionKind.BUILD_STATION:
            return self._can_build(state, me)
        if kind in (ActionKind.SHARE_GIVE, ActionKind.SHARE_TAKE):
            other_index = action.player
            if not 0 <= other_index < len(state.players) or other_index == state.current_player:
                return False
            other = state.players[other_index]
            if other.location != loc:
                return False
            if kind is ActionKind.SHARE_GIVE:
                return action.card in me.hand and (action.card == loc or me.role is Role.RESEARCHER)
            return action.card == loc and loc in other.hand
        if kind is ActionKind.DISCOVER_CURE:
            color = action.color
            if loc not in state.stations or not 0 <= color < COLOR_COUNT or state.cured[color]:
                return False
            cards = action.cards
            return (len(cards) == me.role.cure_cost and len(set(cards)) == len(cards)
                    and all(card in me.hand and world.colors[card] == color for card in cards))
        return False

    def apply_action(self, state: GameState, action: AtomicAction) -> None:
        """
        현재 플레이어의 행동 하나를 적용한다.
        [오류]
            IllegalActionException: 규칙에 맞지 않는 행동 (에이전트 버그)
        """
        if state.is_over:
            return
        if not self.is_legal(state, action):
            raise IllegalActionException(action.to_record())

        me = state.player
        kind = action.kind
        if action.is_move:
            if kind in (ActionKind.DIRECT_FLIGHT, ActionKind.CHARTER_FLIGHT, ActionKind.OPS_EXPERT_FLIGHT):
                self._spend(state, me, action.card)
            if kind is ActionKind.OPS_EXPERT_FLIGHT:
                me.ops_move_used = True
            me.location = action.target
        elif kind is ActionKind.TREAT_DISEASE:
            self._treat(state, me, action.color)
        elif kind is ActionKind.BUILD_STATION:
            if me.role is not Role.OPERATIONS_EXPERT:
                self._spend(state, me, me.location)
            state.stations.add(me.location)
        elif kind is ActionKind.SHARE_GIVE:
            me.hand.remove(action.card)
            state.players[action.player].hand.append(action.card)
        elif kind is ActionKind.SHARE_TAKE:
            state.players[action.player].hand.remove(action.card)
            me.hand.append(action.card)
        elif kind is ActionKind.DISCOVER_CURE:
            for card in action.cards:
                self._spend(state, me, card)
            state.cured[action.color] = True

        state.actions_left -= 1
        state.tally[action.category] += 1
        self._emit(state, EventKind.ACTION, action=action.to_record())

        if kind is ActionKind.SHARE_GIVE:
            self._enforce_hand_limit(state, action.player)
        elif kind is ActionKind.SHARE_TAKE:
            self._enforce_hand_limit(state, state.current_player)

        if (action.is_move and me.role is Role.MEDIC) or kind is ActionKind.DISCOVER_CURE:
            self._medic_sweep(state)
        self._check_eradication(state)

        if all(state.cured):
            self._finish(state, GameStatus.WON)

    # ------------------------------------------------------------- turn flow

    def end_turn(self, state: GameState) -> None:
        """
        행동 단계를 마치고 카드 2장 뽑기, 손패 제한, 감염 단계를 진행한 뒤 다음 플레이어로 넘긴다.
        쓰지 않은 행동은 Pass 로 집계한다.
        """
        if state.is_over:
            return
        if state.actions_left > 0:
            state.tally[ActionCategory.PASS] += state.actions_left
            state.actions_left = 0
        state.turn_number += 1

        if state.player_deck.size() < 2:
            self._lose(state, LossReason.DECK_EXHAUSTED)
            return

        me = state.player
        for _ in range(2):
            card = state.player_deck.draw()
            self._emit(state, EventKind.CARD_DRAWN, card=card)
            if card == EPIDEMIC_CARD:
                state.player_deck.discard.append(card)
                self.resolve_epidemic(state)
                if state.is_over:
                    return
            else:
                me.hand.append(card)
        self._enforce_hand_limit(state, state.current_player)

        for _ in range(infection_rate(state.epidemics_drawn)):
            if state.infection_deck.size() == 0:
                state.infection_deck.recycle_discard(state.rng)
            city = state.infection_deck.draw_top()
            self.infect_city(state, city, state.world.color(city))
            state.infection_deck.discard.append(city)
            if state.is_over:
                return

        self._emit(state, EventKind.TURN_END)
        state.current_player = (state.current_player + 1) % len(state.players)
        state.actions_left = ACTIONS_PER_TURN
        for player in state.players:
            player.ops_move_used = False

    def resolve_epidemic(self, state: GameState) -> None:
        if state.is_over:
            return
        state.epidemics_drawn += 1
        deck = state.infection_deck
        if deck.size() == 0:
            deck.recycle_discard(state.rng)
        city = deck.draw_bottom()
        color = state.world.color(city)
        self._emit(state, EventKind.EPIDEMIC, city=city, color=int(color))

        # 큐브가 이미 있으면 3개로 채운 뒤 발병 한 번
        self._infect(state, city, color, MAX_CUBES_PER_CITY)

        deck.discard.append(city)
        if not state.is_over:
            deck.recycle_discard(state.rng)

    def infect_city(self, state: GameState, city: CityId, color: int) -> None:
        if state.is_over:
            return
        self._infect(state, city, color, 1)

    @staticmethod
    def game_status(state: GameState) -> Outcome:
        return Outcome(state.status, state.loss_reason)

    # --------------------------------------------------------------- helpers

    def _infect(self, state: GameState, city: CityId, color: int, count: int) -> None:
        """count 개 큐브를 놓는다. 3개를 넘기면 발병, 한 번의 해결에서 도시당 발병은 최대 1회."""
        if state.eradicated[color]:
            return
        self._emit(state, EventKind.INFECTION, city=city, color=int(color), cubes=count)
        outbroken = set()
        queue = deque([(city, count)])
        neighbors = state.world.neighbors
        while queue:
            target, cubes = queue.popleft()
            if target in outbroken:
                continue
            room = MAX_CUBES_PER_CITY - state.cube_count(target, color)
            if not self._place(state, target, color, min(cubes, room)):
                return
            if cubes > room:
                outbroken.add(target)
                state.outbreaks += 1
                self._emit(state, EventKind.OUTBREAK, city=target, color=int(color), total=state.outbreaks)
                if state.outbreaks >= MAX_OUTBREAKS:
                    self._lose(state, LossReason.OUTBREAK_LIMIT)
                    return
                queue.extend((neighbor, 1) for neighbor in neighbors[target])

    def _place(self, state: GameState, city: CityId, color: int, cubes: int) -> bool:
        if cubes <= 0:
            return True
        if state.supply[color] < cubes:
            self._lose(state, LossReason.CUBES_EXHAUSTED)
            return False
        state.supply[color] -= cubes
        state.cubes[city * COLOR_COUNT + color] += cubes
        return True

    def _remove(self, state: GameState, city: CityId, color: int, cubes: int) -> None:
        state.cubes[city * COLOR_COUNT + color] -= cubes
        state.supply[color] += cubes

    def _treat(self, state: GameState, me: PlayerState, color: int) -> None:
        present = state.cube_count(me.location, color)
        removed = present if (state.cured[color] or me.role is Role.MEDIC) else 1
        self._remove(state, me.location, color, removed)

    def _medic_sweep(self, state: GameState) -> None:
        for player in state.players:
            if player.role is not Role.MEDIC:
                continue
            for color in range(COLOR_COUNT):
                if state.cured[color]:
                    present = state.cube_count(player.location, color)
                    if present:
                        self._remove(state, player.location, color, present)

    @staticmethod
    def _check_eradication(state: GameState) -> None:
        for color in range(COLOR_COUNT):
            if state.cured[color] and not state.eradicated[color] and state.supply[color] == CUBES_PER_COLOR:
                state.eradicated[color] = True
                GameEngine._emit(state, EventKind.ERADICATED, color=color)

    @staticmethod
    def _can_build(state: GameState, me: PlayerState) -> bool:
        loc = me.location
        if loc in state.stations or len(state.stations) >= MAX_STATIONS:
            return False
        return me.role is Role.OPERATIONS_EXPERT or loc in me.hand

    @staticmethod
    def _spend(state: GameState, me: PlayerState, card: CityId) -> None:
        me.hand.remove(card)
        state.player_deck.discard.append(card)

    def _enforce_hand_limit(self, state: GameState, player_index: int) -> None:
        player = state.players[player_index]
        while len(player.hand) > HAND_LIMIT and not state.is_over:
            card = self.discard_policy(state, player_index)
            player.hand.remove(card)
            state.player_deck.discard.append(card)
            self._emit(state, EventKind.DISCARD, card=card, owner=player_index)

    def _lose(self, state: GameState, reason: LossReason) -> None:
        state.loss_reason = reason
        self._finish(state, GameStatus.LOST)

    @staticmethod
    def _finish(state: GameState, status: GameStatus) -> None:
        state.status = status
        GameEngine._emit(state, EventKind.STATUS, status=status.value,
                         reason=state.loss_reason.value if state.loss_reason else None)

    @staticmethod
    def _emit(state: GameState, kind: EventKind, **payload) -> None:
        if state.events is not None:
            state.events.append(kind, state.turn_number, state.current_player, **payload)
