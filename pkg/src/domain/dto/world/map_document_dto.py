from typing import List, Tuple

from pydantic import BaseModel, ConfigDict, field_validator


# 지도 문서 (JSON)

class MapCityDTO(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str       # 대소문자 구분
    color: str      # blue | yellow | black | red

    @field_validator("name")
    @classmethod
    def validate_name(cls, v):
        if not v or not v.strip():
            raise ValueError('[MapCityDTO] empty city name')
        return v


class MapDocumentDTO(BaseModel):
    model_config = ConfigDict(extra="ignore")

    map_id: str = "custom"
    cities: List[MapCityDTO]
    edges: List[Tuple[str, str]]     # 양방향 모두 기재해야 한다
    start: str
