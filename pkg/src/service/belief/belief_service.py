import random
from typing import List, Tuple

from src.domain.entities.belief_entity import BeliefState, PartitionSkeleton, PublicPlayer, PublicView
from src.domain.entities.game_entity import (
    EPIDEMIC_CARD,
    GameState,
    InfectionDeck,
    PlayerDeck,
    PlayerState,
)
from src.utils.exception_handler.game_error_class import DeterminizationException

"""

    플레이어가 알 수 있는 정보(BeliefState)와 결정화(determinize).

    감염 덱: 구역 구성은 정확히 알고 구역 안 순서만 모른다.
    플레이어 덱: 셋업 당시 더미 크기와 뽑힌 에피데믹 수로 더미 골격을 다시 세운다.

"""


def public_view(state: GameState) -> PublicView:
    return PublicView(
        players=tuple(
            PublicPlayer(p.role, p.location, tuple(p.hand), p.ops_move_used) for p in state.players
        ),
        current_player=state.current_player,
        actions_left=state.actions_left,
        cubes=tuple(state.cubes),
        supply=tuple(state.supply),
        stations=frozenset(state.stations),
        cured=tuple(state.cured),
        eradicated=tuple(state.eradicated),
        epidemics_drawn=state.epidemics_drawn,
        epidemics_total=state.epidemics_total,
        outbreaks=state.outbreaks,
        status=state.status,
        loss_reason=state.loss_reason,
        turn_number=state.turn_number,
        infection_discard=tuple(state.infection_deck.discard),
        player_discard=tuple(state.player_deck.discard),
        initial_partition_sizes=tuple(state.player_deck.initial_sizes),
    )


def deck_skeleton(deck_size: int, initial_sizes: Tuple[int, ...], epidemics_left: int) -> Tuple[PartitionSkeleton, ...]:
    """
    아래 더미부터 셋업 크기 그대로 온전한 더미를 채우고, 남는 카드는 맨 위 부분 더미가 된다.
    아직 나오지 않은 에피데믹은 아래 더미부터 하나씩 배정한다.

    [입력]
        deck_size: 현재 플레이어 덱 장수
        initial_sizes: 셋업 시점 더미 크기 (위 -> 아래, 에피데믹 포함)
        epidemics_left: 덱에 남은 에피데믹 수
    [출력]
        위 -> 아래 순서의 PartitionSkeleton
    """
    sizes: List[int] = []
    remaining = deck_size
    for size in reversed(initial_sizes):
        if remaining < size:
            break
        sizes.append(size)
        remaining -= size
    if remaining > 0:
        sizes.append(remaining)

    bottom_up = [
        PartitionSkeleton(size, index < epidemics_left)
        for index, size in enumerate(sizes)
    ]
    return tuple(reversed(bottom_up))


def observe(state: GameState) -> BeliefState:
    view = public_view(state)
    seen = {card for player in state.players for card in player.hand}
    seen.update(card for card in state.player_deck.discard if card != EPIDEMIC_CARD)
    return BeliefState(
        world=state.world,
        public=view,
        infection_sections=tuple(frozenset(section) for section in state.infection_deck.sections),
        deck_skeleton=deck_skeleton(
            state.player_deck.size(),
            state.player_deck.initial_sizes,
            state.epidemics_total - state.epidemics_drawn,
        ),
        unseen_city_cards=frozenset(card for card in range(state.world.size) if card not in seen),
    )


def determinize(belief: BeliefState, seed: int) -> GameState:
    """
    belief 와 모순 없는 구체적인 GameState 하나를 뽑는다.
    구역/더미 경계를 넘어 카드가 이동하는 일은 없다.

    [오류]
        DeterminizationException: 골격의 도시 카드 수와 보이지 않는 카드 수가 다를 때
    """
    rng = random.Random(seed)
    view = belief.public

    sections = []
    for section in belief.infection_sections:
        cards = sorted(section)
        rng.shuffle(cards)
        sections.append(cards)

    unseen = sorted(belief.unseen_city_cards)
    expected = sum(partition.city_cards for partition in belief.deck_skeleton)
    if expected != len(unseen):
        raise DeterminizationException(f"덱 골격 도시 카드 {expected}장, 보이지 않는 카드 {len(unseen)}장")
    rng.shuffle(unseen)

    partitions: List[List[int]] = []
    cursor = 0
    for partition in reversed(belief.deck_skeleton):
        cards = unseen[cursor:cursor + partition.city_cards]
        cursor += partition.city_cards
        if partition.has_epidemic:
            cards.insert(rng.randrange(partition.size), EPIDEMIC_CARD)
        partitions.append(cards)
    partitions.reverse()

    return GameState(
        world=belief.world,
        players=[PlayerState(p.role, p.location, list(p.hand), p.ops_move_used) for p in view.players],
        cubes=list(view.cubes),
        supply=list(view.supply),
        stations=set(view.stations),
        infection_deck=InfectionDeck(sections, list(view.infection_discard)),
        player_deck=PlayerDeck([p for p in partitions if p], view.initial_partition_sizes, list(view.player_discard)),
        rng=random.Random(rng.getrandbits(63)),
        current_player=view.current_player,
        actions_left=view.actions_left,
        cured=list(view.cured),
        eradicated=list(view.eradicated),
        epidemics_drawn=view.epidemics_drawn,
        epidemics_total=view.epidemics_total,
        outbreaks=view.outbreaks,
        status=view.status,
        loss_reason=view.loss_reason,
        turn_number=view.turn_number,
    )
