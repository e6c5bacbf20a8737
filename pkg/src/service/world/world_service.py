import json
from pathlib import Path
from typing import Dict, List, Set, Tuple, Union

import numpy as np
from pydantic import ValidationError
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components, shortest_path

from src.domain.dto.world.map_document_dto import MapDocumentDTO
from src.domain.entities.world_entity import City, CityId, DiseaseColor, WorldMap
from src.logger.custom_logger import get_logger
from src.utils.exception_handler.game_error_class import MapValidationException
from src.utils.path import path_dic

logger = get_logger(__name__)

MapSource = Union[str, Path, dict, MapDocumentDTO]

_standard_map_cache: Dict[str, WorldMap] = {}


def _read_document(source: MapSource) -> MapDocumentDTO:
    if isinstance(source, MapDocumentDTO):
        return source
    try:
        if isinstance(source, dict):
            return MapDocumentDTO.model_validate(source)
        with open(source, encoding="utf-8") as f:
            return MapDocumentDTO.model_validate(json.load(f))
    except OSError as e:
        raise MapValidationException(f"지도 파일을 열 수 없습니다: {source} ({e})")
    except json.JSONDecodeError as e:
        raise MapValidationException(f"지도 파일이 JSON 이 아닙니다: {source} ({e})")
    except ValidationError as e:
        raise MapValidationException(f"지도 문서 형식 오류: {e.errors()[0]['loc']} {e.errors()[0]['msg']}")


def _parse_cities(document: MapDocumentDTO) -> Tuple[Tuple[City, ...], Dict[str, CityId]]:
    cities: List[City] = []
    index: Dict[str, CityId] = {}
    for raw in document.cities:
        if raw.name in index:
            raise MapValidationException(f"중복된 도시 이름: {raw.name}")
        try:
            color = DiseaseColor.parse(raw.color)
        except KeyError:
            raise MapValidationException(f"알 수 없는 색: {raw.color} (도시 {raw.name})")
        index[raw.name] = len(cities)
        cities.append(City(raw.name, color))
    if not cities:
        raise MapValidationException("도시가 하나도 없습니다.")
    return tuple(cities), index


def _parse_edges(document: MapDocumentDTO, index: Dict[str, CityId]) -> Set[Tuple[CityId, CityId]]:
    edges: Set[Tuple[CityId, CityId]] = set()
    for a, b in document.edges:
        for name in (a, b):
            if name not in index:
                raise MapValidationException(f"간선에 알 수 없는 도시: {name} ({a} - {b})")
        if a == b:
            raise MapValidationException(f"자기 자신으로 가는 간선: {a}")
        edges.add((index[a], index[b]))

    for a, b in sorted(edges):
        if (b, a) not in edges:
            names = document.cities
            raise MapValidationException(f"비대칭 간선: {names[a].name} -> {names[b].name} 의 역방향이 없습니다.")
    return edges


def _distance_table(size: int, edges: Set[Tuple[CityId, CityId]]) -> Tuple[Tuple[int, ...], ...]:
    rows = [a for a, _ in edges]
    cols = [b for _, b in edges]
    graph = csr_matrix((np.ones(len(edges)), (rows, cols)), shape=(size, size))

    components, labels = connected_components(graph, directed=False)
    if components > 1:
        stranded = int(np.flatnonzero(labels != labels[0])[0])
        raise MapValidationException(f"연결되지 않은 지도: 도시 #{stranded} 에 도달할 수 없습니다.")

    table = shortest_path(graph, method="D", unweighted=True, directed=False)
    return tuple(tuple(int(d) for d in row) for row in table)


def load_map(source: MapSource) -> WorldMap:
    """
    지도 문서를 읽어 검증된 WorldMap 을 만든다.

    [입력]
        source: JSON 파일 경로, 이미 읽은 dict, 또는 MapDocumentDTO
    [출력]
        WorldMap (불변, 모든 도시 쌍 거리 포함)
    [오류]
        MapValidationException: 형식 오류, 중복 이름, 비대칭/자기 간선, 비연결 그래프
    """
    document = _read_document(source)
    cities, index = _parse_cities(document)
    edges = _parse_edges(document, index)

    if document.start not in index:
        raise MapValidationException(f"시작 도시가 지도에 없습니다: {document.start}")

    neighbors = tuple(
        tuple(sorted(b for a, b in edges if a == city))
        for city in range(len(cities))
    )
    distances = _distance_table(len(cities), edges)

    world = WorldMap(
        map_id=document.map_id,
        cities=cities,
        neighbors=neighbors,
        starting_city=index[document.start],
        distances=distances,
        index=index,
        colors=tuple(city.color for city in cities),
    )
    logger.debug(f"map loaded: {world.map_id} ({world.size} cities, {len(edges) // 2} edges)")
    return world


def load_standard_map() -> WorldMap:
    key = str(path_dic["standard_map"])
    if key not in _standard_map_cache:
        _standard_map_cache[key] = load_map(path_dic["standard_map"])
    return _standard_map_cache[key]


def load_named_map(name: str) -> WorldMap:
    """'standard' 또는 resources/maps 아래 파일 이름, 혹은 임의 경로."""
    if name == "standard":
        return load_standard_map()
    candidate = Path(path_dic["maps"]).joinpath(f"{name}.json")
    return load_map(candidate if candidate.exists() else Path(name))


def walk_distance(world: WorldMap, a: CityId, b: CityId) -> int:
    return world.distances[a][b]
