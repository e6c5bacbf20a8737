import json
from pathlib import Path
from typing import List, Optional, Sequence, Union

from pydantic import ValidationError

from src.domain.dto.setup.setup_dto import SETUP_FILE_FORMAT, SETUP_FILE_VERSION, SetupFile, SetupProfile, SetupRecord
from src.logger.custom_logger import get_logger
from src.utils.exception_handler.game_error_class import SetupFileException


class SetupRepository:
    """셋업/프로파일 파일 (버전 헤더가 있는 JSON) 저장소."""

    def __init__(self):
        self.logger = get_logger(__name__)

    def save(self, path: Union[str, Path], map_id: str, setups: Sequence[SetupRecord],
             profiles: Sequence[SetupProfile] = (), master_seed: Optional[int] = None) -> Path:
        document = SetupFile(map_id=map_id, master_seed=master_seed, setups=list(setups), profiles=list(profiles))
        target = Path(path)
        target.parent.mkdir(parents=True, exist_ok=True)
        with open(target, "w", encoding="utf-8") as f:
            f.write(document.model_dump_json(indent=2))
            f.write("\n")
        self.logger.info(f"saved {len(document.setups)} setups ({len(document.profiles)} profiles) to {target}")
        return target

    def load(self, path: Union[str, Path]) -> SetupFile:
        """
        [오류]
            SetupFileException: 파일 없음, JSON 오류, 형식/버전 불일치, 필드 오류
        """
        try:
            with open(path, encoding="utf-8") as f:
                raw = json.load(f)
        except OSError as e:
            raise SetupFileException(f"셋업 파일을 열 수 없습니다: {path} ({e})")
        except json.JSONDecodeError as e:
            raise SetupFileException(f"셋업 파일이 JSON 이 아닙니다: {path} ({e})")

        if not isinstance(raw, dict) or raw.get("format") != SETUP_FILE_FORMAT:
            raise SetupFileException(f"셋업 파일 형식이 아닙니다: {path}")
        if raw.get("version") != SETUP_FILE_VERSION:
            raise SetupFileException(f"지원하지 않는 셋업 파일 버전: {raw.get('version')}")
        try:
            return SetupFile.model_validate(raw)
        except ValidationError as e:
            raise SetupFileException(f"셋업 파일 필드 오류: {e.errors()[0]['loc']} {e.errors()[0]['msg']}")

    def load_setups(self, path: Union[str, Path]) -> List[SetupRecord]:
        return self.load(path).setups
