import csv
import io
import json
from enum import Enum
from pathlib import Path
from typing import List, Optional, Sequence, Type, TypeVar, Union

from pydantic import BaseModel, ValidationError

from src.domain.dto.metrics.metrics_dto import CellResult
from src.logger.custom_logger import get_logger
from src.utils.exception_handler.game_error_class import SetupFileException

Row = TypeVar("Row", bound=BaseModel)


class ResultFormat(str, Enum):
    CSV = "csv"
    JSON = "json"


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def render(rows: Sequence[BaseModel], columns: Sequence[str], fmt: ResultFormat) -> str:
    """행 순서와 열 순서를 그대로 지키므로 같은 입력은 같은 바이트를 만든다."""
    if fmt is ResultFormat.JSON:
        return json.dumps([row.model_dump(mode="json") for row in rows], indent=2) + "\n"
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        data = row.model_dump()
        writer.writerow([_cell(data[column]) for column in columns])
    return buffer.getvalue()


class ResultsRepository:
    def __init__(self):
        self.logger = get_logger(__name__)

    def write(self, rows: Sequence[BaseModel], columns: Sequence[str], fmt: ResultFormat,
              path: Optional[Union[str, Path]] = None) -> str:
        text = render(rows, columns, fmt)
        if path is not None:
            target = Path(path)
            target.parent.mkdir(parents=True, exist_ok=True)
            with open(target, "w", encoding="utf-8", newline="") as f:
                f.write(text)
            self.logger.info(f"wrote {len(rows)} rows to {target}")
        return text

    def read(self, path: Union[str, Path], model: Type[Row] = CellResult) -> List[Row]:
        """write 로 쓴 csv/json 결과 파일을 다시 읽는다. 형식은 확장자로 정한다."""
        try:
            with open(path, encoding="utf-8", newline="") as f:
                text = f.read()
        except OSError as e:
            raise SetupFileException(f"결과 파일을 열 수 없습니다: {path} ({e})")
        try:
            if str(path).endswith(".json"):
                return [model.model_validate(item) for item in json.loads(text)]
            reader = csv.DictReader(io.StringIO(text))
            return [model.model_validate({k: (v if v != "" else None) for k, v in item.items()}) for item in reader]
        except (ValidationError, json.JSONDecodeError) as e:
            raise SetupFileException(f"결과 파일을 읽을 수 없습니다: {path} ({e})")
