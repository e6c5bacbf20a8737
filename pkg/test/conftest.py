import json
import random
from typing import Dict, Iterable, Optional, Sequence, Tuple

import pytest

from src.domain.dto.metrics.metrics_dto import RunMetrics
from src.domain.entities.game_entity import (
    CUBES_PER_COLOR,
    GameState,
    InfectionDeck,
    PlayerDeck,
    PlayerState,
    Role,
)
from src.domain.entities.world_entity import COLOR_COUNT, WorldMap
from src.service.engine.game_engine import GameEngine
from src.service.world.world_service import load_map, load_standard_map


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run desk-scale slow tests")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


def map_document(cities: Sequence[Tuple[str, str]], edges: Iterable[Tuple[str, str]], start: str,
                 map_id: str = "test") -> dict:
    both = []
    for a, b in edges:
        both.append([a, b])
        both.append([b, a])
    return {
        "map_id": map_id,
        "cities": [{"name": name, "color": color} for name, color in cities],
        "edges": both,
        "start": start,
    }


def build_map(cities, edges, start, map_id="test") -> WorldMap:
    return load_map(map_document(cities, edges, start, map_id))


@pytest.fixture(scope="session")
def standard_map() -> WorldMap:
    return load_standard_map()


@pytest.fixture
def line_map() -> WorldMap:
    return build_map([("A", "blue"), ("B", "blue"), ("C", "blue")], [("A", "B"), ("B", "C")], "A", "line")


@pytest.fixture
def triangle_map() -> WorldMap:
    return build_map([("A", "blue"), ("B", "blue"), ("C", "blue")], [("A", "B"), ("B", "C"), ("A", "C")], "A",
                     "triangle")


@pytest.fixture
def ring_map() -> WorldMap:
    """8 도시 원형 지도. 색은 blue x4, yellow x2, black x1, red x1."""
    names = [f"R{i}" for i in range(8)]
    colors = ["blue", "blue", "blue", "blue", "yellow", "yellow", "black", "red"]
    edges = [(names[i], names[(i + 1) % 8]) for i in range(8)]
    return build_map(list(zip(names, colors)), edges, "R0", "ring")


@pytest.fixture
def engine() -> GameEngine:
    return GameEngine()


def make_state(world: WorldMap, roles: Sequence[Role] = (Role.MEDIC, Role.SCIENTIST),
               hands: Optional[Sequence[Sequence[int]]] = None, locations: Optional[Sequence[int]] = None,
               stations: Optional[Iterable[int]] = None, cubes: Optional[Dict[Tuple[int, int], int]] = None,
               infection_sections: Optional[Sequence[Sequence[int]]] = None,
               infection_discard: Sequence[int] = (), player_deck: Optional[Sequence[Sequence[int]]] = None,
               player_discard: Sequence[int] = (), epidemics_total: int = 0, seed: int = 0, **fields) -> GameState:
    """
    규칙 테스트용 상태 조립. 카드 보존은 검사하지 않으므로 필요한 것만 채운다.
    cubes 는 {(city, color): count}.
    """
    hands = hands or [[] for _ in roles]
    locations = locations or [world.starting_city] * len(roles)
    board = [0] * (world.size * COLOR_COUNT)
    supply = [CUBES_PER_COLOR] * COLOR_COUNT
    for (city, color), count in (cubes or {}).items():
        board[city * COLOR_COUNT + color] = count
        supply[color] -= count
    deck = [list(p) for p in (player_deck or [])]
    state = GameState(
        world=world,
        players=[PlayerState(role, location, list(hand)) for role, hand, location in zip(roles, hands, locations)],
        cubes=board,
        supply=supply,
        stations=set(stations if stations is not None else {world.starting_city}),
        infection_deck=InfectionDeck([list(s) for s in (infection_sections or [])], list(infection_discard)),
        player_deck=PlayerDeck(deck, tuple(len(p) for p in deck), list(player_discard)),
        rng=random.Random(seed),
        epidemics_total=epidemics_total,
    )
    for name, value in fields.items():
        setattr(state, name, value)
    return state


@pytest.fixture
def state_factory():
    return make_state


@pytest.fixture
def map_builder():
    return build_map


@pytest.fixture
def document_builder():
    return map_document


@pytest.fixture
def micro_map_path(tmp_path) -> str:
    """
    12 도시, 색마다 3 도시인 작은 지도 파일. 어떤 역할도 치료제를 만들 수 없어서 게임은 반드시 진다.
    """
    names = [f"M{i}" for i in range(12)]
    colors = ["blue"] * 3 + ["yellow"] * 3 + ["black"] * 3 + ["red"] * 3
    edges = [(names[i], names[(i + 1) % 12]) for i in range(12)] + [(names[0], names[6])]
    path = tmp_path / "micro.json"
    path.write_text(json.dumps(map_document(list(zip(names, colors)), edges, "M0", "micro")), encoding="utf-8")
    return str(path)


def make_run_metrics(won: bool, duration: int, reason=None, share: int = 0, total: Optional[int] = None) -> RunMetrics:
    total = total if total is not None else 4 * duration
    return RunMetrics(won=won, duration=duration, loss_reason=reason, outbreaks=2,
                      action_counts={"move": total - share, "share": share}, research_stations=1,
                      stations_built=0, cured=0, epidemics_drawn=1)


@pytest.fixture
def metrics_factory():
    return make_run_metrics
