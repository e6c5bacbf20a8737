import random
from typing import Iterable, List, Optional, Sequence

from src.domain.entities.action_entity import PASS_ACTION, AtomicAction, MacroAction, MacroKind
from src.domain.entities.game_entity import GameState, Role
from src.domain.entities.world_entity import COLOR_COUNT, CityId
from src.service.engine.game_engine import GameEngine
from src.service.macros.cure_ability_service import color_ability
from src.service.macros.reach_service import ReachResult, Route, reach

ALL_KINDS = frozenset(MacroKind)
SHARE_KINDS = frozenset({MacroKind.SHARE_GIVE, MacroKind.SHARE_TAKE})
BUILD_STATION_LIMIT = 5         # 이 수 이상이면 건설 매크로를 만들지 않는다
BUILD_MIN_DISTANCE = 4          # 기존 연구소와의 최소 도보 거리


def share_benefit(state: GameState, giver: int, receiver: int, card: CityId) -> bool:
    """카드 이동 후 그 색의 A(t) 가 엄격히 커지면 True."""
    color = state.world.colors[card]
    if state.cured[color]:
        return False
    adjust = [0] * len(state.players)
    adjust[giver] -= 1
    adjust[receiver] += 1
    return color_ability(state, color, adjust) > color_ability(state, color)


def _macro(kind: MacroKind, player: int, route: Route, payoff: Sequence[AtomicAction], **fields) -> MacroAction:
    return MacroAction(kind=kind, player=player, steps=route.steps + tuple(payoff), **fields)


def _treat_macros(state: GameState, player: int, routes: ReachResult, budget: int,
                  treat_cubes: Optional[int]) -> List[MacroAction]:
    me = state.players[player]
    macros = []
    for city in routes.cities():
        for color in range(COLOR_COUNT):
            cubes = state.cube_count(city, color)
            if cubes == 0 or (treat_cubes is not None and cubes != treat_cubes):
                continue
            if me.role is Role.MEDIC and state.cured[color]:
                continue
            route = routes.best(city)
            if route.cost + 1 > budget:
                continue
            macros.append(_macro(MacroKind.TREAT_DISEASE, player, route, [AtomicAction.treat(color)],
                                 city=city, color=color))
    return macros


def _cure_macros(state: GameState, player: int, routes: ReachResult, budget: int) -> List[MacroAction]:
    me = state.players[player]
    colors = state.world.colors
    macros = []
    for color in range(COLOR_COUNT):
        if state.cured[color]:
            continue
        matching = sorted(card for card in me.hand if colors[card] == color)
        if len(matching) < me.role.cure_cost:
            continue
        cards = tuple(matching[:me.role.cure_cost])
        for station in sorted(state.stations):
            route = routes.best(station, keep=cards)
            if route is None or route.cost + 1 > budget:
                continue
            macros.append(_macro(MacroKind.DISCOVER_CURE, player, route,
                                 [AtomicAction.discover_cure(color, cards)], city=station, color=color))
    return macros


def _build_macros(state: GameState, player: int, routes: ReachResult, budget: int) -> List[MacroAction]:
    if len(state.stations) >= BUILD_STATION_LIMIT:
        return []
    me = state.players[player]
    distances = state.world.distances
    macros = []
    for city in routes.cities():
        if city in state.stations:
            continue
        if any(distances[city][station] < BUILD_MIN_DISTANCE for station in state.stations):
            continue
        if me.role is Role.OPERATIONS_EXPERT:
            route = routes.best(city)
        elif city in me.hand:
            route = routes.best(city, keep=(city,))
        else:
            continue
        if route is None or route.cost + 1 > budget:
            continue
        macros.append(_macro(MacroKind.BUILD_STATION, player, route, [AtomicAction.build()], city=city))
    return macros


def _meeting(kind: MacroKind, player: int, other: int, card: CityId, city: CityId, routes: ReachResult,
             budget: int, present: bool, payoff: AtomicAction) -> Optional[MacroAction]:
    """
    만남 도시로 가서 바로 주고받거나(상대가 이미 있고 행동이 남을 때), 가서 남은 행동을 Pass 로 기다린다.
    """
    keep = (card,) if kind is MacroKind.SHARE_GIVE else ()
    route = routes.best(city, keep=keep)
    if route is None:
        return None
    if present and route.cost + 1 <= budget:
        return _macro(kind, player, route, [payoff], city=city, card=card, other_player=other)
    if route.cost > budget:
        return None
    waiting = [PASS_ACTION] * (budget - route.cost)
    return _macro(kind, player, route, waiting, city=city, card=card, other_player=other, waits=True)


def _share_macros(state: GameState, player: int, routes: ReachResult, budget: int,
                  kinds: Iterable[MacroKind]) -> List[MacroAction]:
    me = state.players[player]
    macros = []
    for other_index, other in enumerate(state.players):
        if other_index == player:
            continue
        if MacroKind.SHARE_GIVE in kinds:
            for card in sorted(me.hand):
                if not share_benefit(state, player, other_index, card):
                    continue
                meeting_cities = [card]
                if me.role is Role.RESEARCHER and other.location != card:
                    meeting_cities.append(other.location)
                for city in meeting_cities:
                    macro = _meeting(MacroKind.SHARE_GIVE, player, other_index, card, city, routes, budget,
                                     other.location == city, AtomicAction.share_give(other_index, card))
                    if macro is not None:
                        macros.append(macro)
        if MacroKind.SHARE_TAKE in kinds:
            for card in sorted(other.hand):
                if not share_benefit(state, other_index, player, card):
                    continue
                macro = _meeting(MacroKind.SHARE_TAKE, player, other_index, card, card, routes, budget,
                                 other.location == card, AtomicAction.share_take(other_index, card))
                if macro is not None:
                    macros.append(macro)
    return macros


def walk_away(state: GameState, player: int, budget: int, rng: random.Random) -> MacroAction:
    """남은 행동을 모두 무작위 도보 이동으로 쓴다."""
    neighbors = state.world.neighbors
    city = state.players[player].location
    steps = []
    for _ in range(budget):
        city = rng.choice(neighbors[city])
        steps.append(AtomicAction.drive(city))
    return MacroAction(kind=MacroKind.WALK_AWAY, player=player, steps=tuple(steps), city=city)


def enumerate_macros(state: GameState, player: int, actions_left: int, kinds: Iterable[MacroKind] = ALL_KINDS,
                     rng: Optional[random.Random] = None, treat_cubes: Optional[int] = None,
                     routes: Optional[ReachResult] = None) -> List[MacroAction]:
    """
    이번 턴 안에 끝낼 수 있는 매크로 목록. 모든 매크로의 cost 는 actions_left 이하다.

    [입력]
        kinds: 만들 매크로 종류
        rng: WalkAway 를 만들 때만 필요
        treat_cubes: 주어지면 큐브가 정확히 그 수인 (도시, 색) 만 치료 대상으로 삼는다
        routes: 같은 상태에서 미리 계산한 reach 결과 (재사용)
    """
    if actions_left < 1 or state.is_over:
        return []
    kinds = frozenset(kinds)
    if routes is None:
        routes = reach(state, player, actions_left)

    macros: List[MacroAction] = []
    if MacroKind.DISCOVER_CURE in kinds:
        macros.extend(_cure_macros(state, player, routes, actions_left))
    if MacroKind.TREAT_DISEASE in kinds:
        macros.extend(_treat_macros(state, player, routes, actions_left, treat_cubes))
    if kinds & SHARE_KINDS:
        macros.extend(_share_macros(state, player, routes, actions_left, kinds))
    if MacroKind.BUILD_STATION in kinds:
        macros.extend(_build_macros(state, player, routes, actions_left))
    if MacroKind.WALK_AWAY in kinds and rng is not None:
        macros.append(walk_away(state, player, actions_left, rng))
    return macros


def execute_macro(engine: GameEngine, state: GameState, macro: MacroAction) -> int:
    """
    macro 를 현재 상태에 적용한다. 지금 상태에서 불가능한 단계는 Pass 로 바꾸고 낭비로 센다.
    [출력]
        낭비된 행동 수
    """
    wasted = 0
    for step in macro.steps:
        if state.is_over or state.actions_left <= 0 or state.current_player != macro.player:
            break
        if engine.is_legal(state, step):
            engine.apply_action(state, step)
        else:
            engine.apply_action(state, PASS_ACTION)
            wasted += 1
    return wasted
