from typing import Dict, List, Optional

from pydantic import BaseModel, Field, field_validator

from src.domain.entities.game_entity import EPIDEMIC_CARD, INITIAL_INFECTIONS, Role

SETUP_FILE_FORMAT = "pandemic-setups"
SETUP_FILE_VERSION = 1
EPIDEMIC_LABEL = "EPIDEMIC"


class InitialInfectionDTO(BaseModel):
    city: str
    cubes: int = Field(ge=1, le=3)


class SetupRecord(BaseModel):
    """
    초기 게임 상태 한 벌. 같은 기록을 다시 재생하면 같은 초기 상태가 만들어진다.
    카드는 도시 이름으로 저장한다 (지도 인덱스 변경에 안전).
    """
    setup_id: int
    seed: int
    map_id: str
    roles: List[Role]
    epidemics: int = Field(ge=1)
    hands: List[List[str]]
    player_deck: List[List[str]]            # 더미 위 -> 아래, 더미 안 카드 위 -> 아래, 에피데믹은 "EPIDEMIC"
    infection_deck: List[str]               # 위 -> 아래
    infection_discard: List[str]            # 공개된 순서
    initial_infections: List[InitialInfectionDTO]

    @field_validator("roles")
    @classmethod
    def validate_roles(cls, v):
        if len(v) != len(set(v)):
            raise ValueError('[SetupRecord] duplicate role')
        return v

    @classmethod
    def from_state(cls, state, setup_id: int, seed: int) -> "SetupRecord":
        return setup_record_from_state(state, setup_id, seed)


class SetupProfile(BaseModel):
    setup_id: int
    runs: int
    wins: int
    win_ratio: float
    mean_duration: float
    normalized_duration: float
    share_ratio: float
    mean_outbreaks: float
    loss_ratios: Dict[str, float] = Field(default_factory=dict)


class SetupFile(BaseModel):
    format: str = SETUP_FILE_FORMAT
    version: int = SETUP_FILE_VERSION
    map_id: str
    master_seed: Optional[int] = None
    setups: List[SetupRecord]
    profiles: List[SetupProfile] = Field(default_factory=list)


def _card_label(world, card: int) -> str:
    return EPIDEMIC_LABEL if card == EPIDEMIC_CARD else world.name(card)


def setup_record_from_state(state, setup_id: int, seed: int) -> SetupRecord:
    """
    방금 셋업된 GameState 를 기록으로 옮긴다. 첫 행동 전에 호출해야 한다.
    """
    world = state.world
    revealed = list(state.infection_deck.discard)
    return SetupRecord(
        setup_id=setup_id,
        seed=seed,
        map_id=world.map_id,
        roles=[player.role for player in state.players],
        epidemics=state.epidemics_total,
        hands=[[world.name(card) for card in player.hand] for player in state.players],
        player_deck=[[_card_label(world, card) for card in partition] for partition in state.player_deck.partitions],
        infection_deck=[world.name(card) for section in state.infection_deck.sections for card in section],
        infection_discard=[world.name(card) for card in revealed],
        initial_infections=[
            InitialInfectionDTO(city=world.name(card), cubes=cubes)
            for card, cubes in zip(revealed, INITIAL_INFECTIONS)
        ],
    )
