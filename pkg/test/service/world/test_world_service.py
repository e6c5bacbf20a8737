import itertools
import json
from collections import Counter

import pytest

from src.domain.entities.world_entity import DiseaseColor
from src.service.world.world_service import load_map, load_named_map, walk_distance
from src.utils.exception_handler.game_error_class import MapValidationException


def test_standard_map_has_48_cities_12_per_color(standard_map):
    assert standard_map.size == 48
    assert Counter(standard_map.colors) == {color: 12 for color in DiseaseColor}
    assert standard_map.name(standard_map.starting_city) == "Atlanta"


def test_standard_map_adjacency_is_symmetric_and_irreflexive(standard_map):
    for a, b in standard_map.edges():
        assert a != b
        assert a in standard_map.neighbors[b]


def test_standard_map_distances(standard_map):
    atlanta = standard_map.city_id("Atlanta")
    assert walk_distance(standard_map, atlanta, standard_map.city_id("Chicago")) == 1
    assert walk_distance(standard_map, atlanta, atlanta) == 0
    assert walk_distance(standard_map, atlanta, standard_map.city_id("Manila")) == 3


def test_named_map_loads_standard(standard_map):
    assert load_named_map("standard") is standard_map


def test_line_map_is_valid(line_map):
    assert line_map.size == 3
    a, c = line_map.city_id("A"), line_map.city_id("C")
    assert walk_distance(line_map, a, c) == 2
    assert line_map.neighbors[line_map.city_id("B")] == (0, 2)


def test_load_map_from_file(tmp_path, document_builder):
    path = tmp_path / "tiny.json"
    path.write_text(json.dumps(document_builder([("X", "red"), ("Y", "black")], [("X", "Y")], "Y", "tiny")))
    world = load_map(path)
    assert world.map_id == "tiny"
    assert world.color(world.city_id("X")) is DiseaseColor.RED
    assert world.starting_city == world.city_id("Y")


@pytest.mark.parametrize("fixture_name", ["line_map", "triangle_map", "ring_map", "standard_map"])
def test_walk_distance_is_a_metric(request, fixture_name):
    world = request.getfixturevalue(fixture_name)
    cities = range(world.size)
    for a, b in itertools.product(cities, cities):
        d = walk_distance(world, a, b)
        assert (d == 0) == (a == b)
        assert d == walk_distance(world, b, a)
    if world.size <= 8:
        for a, b, c in itertools.product(cities, cities, cities):
            assert walk_distance(world, a, c) <= walk_distance(world, a, b) + walk_distance(world, b, c)


def test_asymmetric_edge_is_rejected():
    document = {
        "cities": [{"name": "A", "color": "blue"}, {"name": "B", "color": "blue"}],
        "edges": [["A", "B"]],
        "start": "A",
    }
    with pytest.raises(MapValidationException) as error:
        load_map(document)
    assert "A -> B" in error.value.message


def test_disconnected_map_is_rejected(document_builder):
    document = document_builder([("A", "blue"), ("B", "blue"), ("C", "red"), ("D", "red")],
                                [("A", "B"), ("C", "D")], "A")
    with pytest.raises(MapValidationException):
        load_map(document)


@pytest.mark.parametrize("cities, edges, start", [
    ([("A", "blue"), ("A", "red")], [], "A"),                      # 중복 이름
    ([("A", "purple"), ("B", "blue")], [("A", "B")], "A"),          # 알 수 없는 색
    ([("A", "blue"), ("B", "blue")], [("A", "Z")], "A"),            # 알 수 없는 도시
    ([("A", "blue"), ("B", "blue")], [("A", "A"), ("A", "B")], "A"),  # 자기 간선
    ([("A", "blue"), ("B", "blue")], [("A", "B")], "Q"),            # 시작 도시 없음
])
def test_invalid_documents_are_rejected(document_builder, cities, edges, start):
    with pytest.raises(MapValidationException):
        load_map(document_builder(cities, edges, start))


def test_malformed_document_is_rejected():
    with pytest.raises(MapValidationException):
        load_map({"cities": "nope"})


def test_missing_file_is_rejected(tmp_path):
    with pytest.raises(MapValidationException):
        load_map(tmp_path / "missing.json")
