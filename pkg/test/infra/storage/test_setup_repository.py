import json

import pytest

from src.domain.dto.setup.setup_dto import SETUP_FILE_FORMAT
from src.infra.storage.setup_repository import SetupRepository
from src.service.harness.profiling_service import generate_setups
from src.utils.exception_handler.game_error_class import SetupFileException


@pytest.fixture
def records(standard_map):
    return generate_setups(standard_map, 2, master_seed=3)


def test_save_then_load(tmp_path, records):
    repository = SetupRepository()
    target = repository.save(tmp_path / "nested" / "setups.json", "standard", records, master_seed=3)
    assert target.exists()
    loaded = repository.load(target)
    assert loaded.format == SETUP_FILE_FORMAT
    assert loaded.master_seed == 3
    assert loaded.setups == records
    assert repository.load_setups(target) == records


def test_save_is_byte_stable(tmp_path, records):
    repository = SetupRepository()
    first = repository.save(tmp_path / "a.json", "standard", records).read_bytes()
    second = repository.save(tmp_path / "b.json", "standard", records).read_bytes()
    assert first == second


@pytest.mark.parametrize("content", [
    "not json",
    json.dumps([1, 2]),
    json.dumps({"format": "something-else", "version": 1}),
    json.dumps({"format": SETUP_FILE_FORMAT, "version": 99, "map_id": "standard", "setups": []}),
    json.dumps({"format": SETUP_FILE_FORMAT, "version": 1, "setups": []}),
])
def test_bad_files_are_rejected(tmp_path, content):
    path = tmp_path / "bad.json"
    path.write_text(content, encoding="utf-8")
    with pytest.raises(SetupFileException):
        SetupRepository().load(path)


def test_missing_file(tmp_path):
    with pytest.raises(SetupFileException) as exc_info:
        SetupRepository().load(tmp_path / "missing.json")
    assert exc_info.value.code == "setup_file"
