import datetime
import json
import logging
import logging.config
import os
from pathlib import Path

from dotenv import load_dotenv

from ..utils.path import path_dic

load_dotenv(dotenv_path=path_dic["env"])

logger_cache = {}
logger_abs_path = os.path.abspath(os.path.dirname(__file__))


def get_logger(name):
    """
    :param name:
        모듈 이름 (__name__). 첫 마디가 프로세스 이름이 된다.
    :return:
        로거 객체
    """

    name = list(name.split('.'))
    name = '.'.join(name[:1])

    default_dir = Path(logger_abs_path).parent.parent.joinpath('logs')
    log_path = Path(os.getenv("PANDEMIC_LOG_DIR", default_dir)).joinpath(name)

    cache_key = (name, log_path)
    if cache_key in logger_cache:
        return logger_cache[cache_key]

    if not Path(log_path).exists():
        Path(log_path).mkdir(parents=True, exist_ok=True)

    with open(path_dic["log_config"], encoding="utf-8") as f:
        config = json.load(f)
    config['handlers']['file']['filename'] = f"{name}-{datetime.datetime.now().strftime('%Y-%m-%d')}.txt"
    config['handlers']['file']['filename'] = str(Path(log_path).joinpath(config['handlers']['file']['filename']))

    level = os.getenv("PANDEMIC_LOG_LEVEL")
    if level:
        for handler in config['handlers'].values():
            handler['level'] = level.upper()
        for logger_config in config.get('loggers', {}).values():
            logger_config['level'] = level.upper()
        config['root']['level'] = level.upper()
    logging.config.dictConfig(config)

    new_logger = logging.getLogger(name)
    logger_cache[cache_key] = new_logger

    return new_logger
