import json

import pytest

from src.infra.storage.results_repository import ResultsRepository
from src.infra.storage.setup_repository import SetupRepository
from src.main import build_parser, main


@pytest.fixture
def config_path(tmp_path, micro_map_path):
    path = tmp_path / "harness_config.json"
    path.write_text(json.dumps({"map": micro_map_path, "workers": 1, "bench_runs": 1}), encoding="utf-8")
    return str(path)


@pytest.fixture
def profiled(tmp_path, config_path):
    out = tmp_path / "profiled.json"
    code = main(["profile", "--config", config_path, "--count", "3", "--runs", "1", "--players", "2",
                 "--seed", "5", "--out", str(out)])
    assert code == 0
    return out


def test_profile_writes_setups_with_profiles(profiled):
    document = SetupRepository().load(profiled)
    assert document.map_id == "micro"
    assert document.master_seed == 5
    assert [s.setup_id for s in document.setups] == [0, 1, 2]
    assert all(len(s.roles) == 2 for s in document.setups)
    assert all(p.win_ratio == 0.0 for p in document.profiles)


def test_select_keeps_k_setups(tmp_path, config_path, profiled):
    out = tmp_path / "testbeds.json"
    code = main(["select", "--config", config_path, "--setups", str(profiled), "--k", "2",
                 "--top-fraction", "1.0", "--min-win-ratio", "0", "--out", str(out)])
    assert code == 0
    document = SetupRepository().load(out)
    assert len(document.setups) == 2
    assert {p.setup_id for p in document.profiles} == {s.setup_id for s in document.setups}


def test_select_without_enough_winners_is_a_domain_error(tmp_path, config_path, profiled):
    code = main(["select", "--config", config_path, "--setups", str(profiled), "--k", "2",
                 "--out", str(tmp_path / "none.json")])
    assert code == 2


def test_play_writes_metrics_and_events(tmp_path, config_path, profiled):
    out = tmp_path / "metrics.json"
    events = tmp_path / "events.jsonl"
    code = main(["play", "--config", config_path, "--setups", str(profiled), "--setup-id", "1",
                 "--events", str(events), "--out", str(out)])
    assert code == 0
    metrics = json.loads(out.read_text(encoding="utf-8"))
    assert metrics["won"] is False
    lines = events.read_text(encoding="utf-8").splitlines()
    assert lines and all(json.loads(line)["kind"] for line in lines)


def test_play_unknown_setup_id(tmp_path, config_path, profiled):
    code = main(["play", "--config", config_path, "--setups", str(profiled), "--setup-id", "99"])
    assert code == 2


def test_profile_with_rhea_agent(tmp_path, config_path):
    out = tmp_path / "rhea_profiled.json"
    code = main(["profile", "--config", config_path, "--agent", "rhea", "--horizon", "1", "--generations", "1",
                 "--trials", "1", "--count", "1", "--runs", "1", "--players", "2", "--out", str(out)])
    assert code == 0
    document = SetupRepository().load(out)
    assert [p.runs for p in document.profiles] == [1]


def test_play_new_game_uses_players_and_epidemics(tmp_path, config_path):
    events = tmp_path / "events.jsonl"
    code = main(["play", "--config", config_path, "--players", "2", "--epidemics", "4",
                 "--events", str(events), "--out", str(tmp_path / "metrics.json")])
    assert code == 0
    setup = json.loads(events.read_text(encoding="utf-8").splitlines()[0])
    assert setup["kind"] == "setup"
    assert len(setup["roles"]) == 2
    assert setup["epidemics"] == 4

    out_of_range = main(["play", "--config", config_path, "--players", "2", "--epidemics", "7"])
    assert out_of_range == 2


@pytest.mark.parametrize("flag", [["--players", "3"], ["--epidemics", "5"]])
def test_play_rejects_deal_flags_with_setups(tmp_path, config_path, profiled, flag):
    out = tmp_path / "metrics.json"
    code = main(["play", "--config", config_path, "--setups", str(profiled), *flag, "--out", str(out)])
    assert code == 2
    assert not out.exists()


def test_bench_then_report(tmp_path, config_path, profiled):
    results = tmp_path / "results.csv"
    code = main(["bench", "--config", config_path, "--setups", str(profiled), "--agent", "dp",
                 "--out", str(results)])
    assert code == 0
    rows = ResultsRepository().read(results)
    assert [r.setup_id for r in rows] == [0, 1, 2]
    assert all(r.runs == 1 and r.agent == "dp" for r in rows)

    summary = tmp_path / "summary.json"
    assert main(["report", "--results", str(results), "--format", "json", "--out", str(summary)]) == 0
    assert len(json.loads(summary.read_text(encoding="utf-8"))) == 1


def test_bench_with_bad_fitness(tmp_path, config_path, profiled):
    code = main(["bench", "--config", config_path, "--setups", str(profiled), "--agent", "rhea",
                 "--fitness", "f_zz"])
    assert code == 2


def test_missing_config_file(tmp_path, profiled):
    code = main(["select", "--config", str(tmp_path / "absent.json"), "--setups", str(profiled),
                 "--out", str(tmp_path / "x.json")])
    assert code == 2


def test_subcommand_is_required():
    with pytest.raises(SystemExit):
        build_parser().parse_args([])
