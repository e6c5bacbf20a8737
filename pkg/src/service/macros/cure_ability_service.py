from typing import List, Sequence

from src.domain.entities.ability_entity import CureAbility
from src.domain.entities.game_entity import GameState, Role
from src.domain.entities.world_entity import COLOR_COUNT, CityId, WorldMap


def _hand_counts(world: WorldMap, hand: Sequence[CityId]) -> List[int]:
    counts = [0] * COLOR_COUNT
    for card in hand:
        counts[world.colors[card]] += 1
    return counts


def player_ability(count: int, role: Role) -> float:
    return min(1.0, count / role.cure_cost)


def cure_ability(world: WorldMap, hands: Sequence[Sequence[CityId]], cured: Sequence[bool],
                 roles: Sequence[Role]) -> CureAbility:
    """
    [입력]
        hands: 플레이어별 손패 (좌석 순서)
        cured: 색별 치료 여부
        roles: 플레이어별 역할 (치료 비용 결정)
    [출력]
        CureAbility (색별 A, 플레이어x색별 A_c)
    """
    per_player = tuple(
        tuple(player_ability(count, role) for count in _hand_counts(world, hand))
        for hand, role in zip(hands, roles)
    )
    per_color = tuple(
        1.0 if cured[color] else max((row[color] for row in per_player), default=0.0)
        for color in range(COLOR_COUNT)
    )
    return CureAbility(per_color, per_player)


def state_cure_ability(state: GameState) -> CureAbility:
    return cure_ability(
        state.world,
        [p.hand for p in state.players],
        state.cured,
        [p.role for p in state.players],
    )


def color_ability(state: GameState, color: int, adjust: Sequence[int] = ()) -> float:
    """
    한 색의 A(t). adjust 는 플레이어별 카드 수 보정 (예: 한 장 버린 가정이면 -1).
    """
    if state.cured[color]:
        return 1.0
    colors = state.world.colors
    best = 0.0
    for index, player in enumerate(state.players):
        count = sum(1 for card in player.hand if colors[card] == color)
        if adjust:
            count += adjust[index]
        best = max(best, player_ability(count, player.role))
    return best


def spend_eligible(state: GameState, player: int, card: CityId, spent: Sequence[CityId] = ()) -> bool:
    """
    card 를 써도 그 색의 A(t) 가 줄지 않으면 True. spent 는 이 경로에서 이미 쓴 카드.
    """
    color = state.world.colors[card]
    if state.cured[color]:
        return True
    colors = state.world.colors
    already = sum(1 for spent_card in spent if colors[spent_card] == color)
    before = [0] * len(state.players)
    before[player] = -already
    after = list(before)
    after[player] -= 1
    return color_ability(state, color, after) == color_ability(state, color, before)


def discard_drop(state: GameState, player: int, card: CityId) -> float:
    color = state.world.colors[card]
    adjust = [0] * len(state.players)
    adjust[player] = -1
    return color_ability(state, color) - color_ability(state, color, adjust)


def choose_discard(state: GameState, player: int) -> CityId:
    """
    손패 제한 초과 시 버릴 카드. 써도 되는 카드가 있으면 그중 무작위,
    없으면 ΣA 감소가 가장 작은 카드 중 무작위 (state.rng 사용).
    """
    hand = sorted(state.players[player].hand)
    eligible = [card for card in hand if spend_eligible(state, player, card)]
    if eligible:
        return state.rng.choice(eligible)

    drops = {card: discard_drop(state, player, card) for card in hand}
    lowest = min(drops.values())
    return state.rng.choice([card for card in hand if drops[card] == lowest])
