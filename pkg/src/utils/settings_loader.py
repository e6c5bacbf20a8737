import json
from pathlib import Path
from typing import Optional, Union

from pydantic import ValidationError

from src.domain.dto.settings.settings_dto import HarnessSettings
from src.utils.exception_handler.game_error_class import ExperimentConfigException
from src.utils.path import path_dic


def load_harness_settings(path: Optional[Union[str, Path]] = None) -> HarnessSettings:
    """
    harness_config.json 을 읽어 검증한다. 파일이 없으면 기본값.
    [오류]
        ExperimentConfigException
    """
    target = Path(path) if path is not None else path_dic["harness_config"]
    if not target.exists():
        if path is not None:
            raise ExperimentConfigException(f"설정 파일이 없습니다: {target}")
        return HarnessSettings()
    try:
        with open(target, encoding="utf-8") as f:
            return HarnessSettings.model_validate(json.load(f))
    except json.JSONDecodeError as e:
        raise ExperimentConfigException(f"설정 파일이 JSON 이 아닙니다: {target} ({e})")
    except ValidationError as e:
        raise ExperimentConfigException(f"설정 오류: {e.errors()[0]['loc']} {e.errors()[0]['msg']}")
