from pathlib import Path

project_dir = Path(__file__).resolve().parent.parent

path_dic = {
    "log_config": project_dir.joinpath("resources").joinpath("config").joinpath("log_config.json"),
    "harness_config": project_dir.joinpath("resources").joinpath("config").joinpath("harness_config.json"),
    "env": project_dir.joinpath("resources").joinpath("config").joinpath(".env"),
    "maps": project_dir.joinpath("resources").joinpath("maps"),
    "standard_map": project_dir.joinpath("resources").joinpath("maps").joinpath("standard.json"),
}
