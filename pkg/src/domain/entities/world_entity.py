from dataclasses import dataclass, field
from enum import IntEnum
from typing import Dict, Tuple

"""

    지도는 한 번 불러오면 바뀌지 않는다. 여러 시뮬레이션이 같은 WorldMap 을 공유한다.
    CityId 는 cities 튜플의 0 기반 인덱스다.

"""

CityId = int


class DiseaseColor(IntEnum):
    BLUE = 0
    YELLOW = 1
    BLACK = 2
    RED = 3

    @property
    def label(self) -> str:
        return self.name.lower()

    @classmethod
    def parse(cls, value: str) -> "DiseaseColor":
        return cls[value.strip().upper()]


COLORS: Tuple[DiseaseColor, ...] = tuple(DiseaseColor)
COLOR_COUNT = len(COLORS)


@dataclass(frozen=True, slots=True)
class City:
    name: str
    color: DiseaseColor


@dataclass(frozen=True, eq=False)
class WorldMap:
    map_id: str
    cities: Tuple[City, ...]
    neighbors: Tuple[Tuple[CityId, ...], ...]
    starting_city: CityId
    distances: Tuple[Tuple[int, ...], ...]
    index: Dict[str, CityId] = field(repr=False)
    colors: Tuple[DiseaseColor, ...] = field(repr=False)

    @property
    def size(self) -> int:
        return len(self.cities)

    def city_id(self, name: str) -> CityId:
        return self.index[name]

    def name(self, city: CityId) -> str:
        return self.cities[city].name

    def color(self, city: CityId) -> DiseaseColor:
        return self.colors[city]

    def edges(self) -> Tuple[Tuple[CityId, CityId], ...]:
        return tuple((a, b) for a, adjacent in enumerate(self.neighbors) for b in adjacent)
