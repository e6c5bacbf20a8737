import os
from concurrent.futures import ProcessPoolExecutor, as_completed
from typing import Callable, Dict, List, Sequence, TypeVar

from dotenv import load_dotenv

from src.logger.custom_logger import get_logger
from src.utils.path import path_dic

load_dotenv(dotenv_path=path_dic["env"])

logger = get_logger(__name__)

Task = TypeVar("Task")
Result = TypeVar("Result")


def resolve_workers(requested: int) -> int:
    """0 이면 PANDEMIC_WORKERS, 그것도 없으면 CPU 수."""
    if requested and requested > 0:
        return requested
    env = os.getenv("PANDEMIC_WORKERS")
    if env and env.isdigit() and int(env) > 0:
        return int(env)
    return os.cpu_count() or 1


def run_tasks(worker: Callable[[Task], Result], tasks: Sequence[Task], workers: int, label: str) -> List[Result]:
    """
    작업을 병렬 실행하고 결과를 입력 순서대로 돌려준다 (완료 순서와 무관).
    workers == 1 이면 현재 프로세스에서 차례로 실행한다.
    """
    if workers <= 1 or len(tasks) <= 1:
        return [worker(task) for task in tasks]

    results: Dict[int, Result] = {}
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = {pool.submit(worker, task): index for index, task in enumerate(tasks)}
        for done, future in enumerate(as_completed(futures), start=1):
            results[futures[future]] = future.result()
            if done % max(1, len(tasks) // 10) == 0:
                logger.info(f"{label}: {done}/{len(tasks)} done")
    return [results[index] for index in range(len(tasks))]
