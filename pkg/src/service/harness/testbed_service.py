import math
from typing import Dict, List, Sequence

import numpy as np
from scipy.spatial.distance import cdist
from sklearn_extra.cluster import KMedoids

from src.domain.dto.setup.setup_dto import SetupProfile, SetupRecord
from src.logger.custom_logger import get_logger
from src.utils.exception_handler.game_error_class import TestbedSelectionException


def farthest_point_init(distances: np.ndarray, k: int, seed: int) -> List[int]:
    """시드로 고른 첫 점에서 시작해 이미 고른 점들과 가장 먼 점을 차례로 더한다."""
    n = distances.shape[0]
    rng = np.random.default_rng(seed)
    chosen = [int(rng.integers(n))]
    nearest = distances[chosen[0]].copy()
    while len(chosen) < k:
        candidates = nearest.copy()
        candidates[chosen] = -np.inf
        pick = int(np.argmax(candidates))
        chosen.append(pick)
        nearest = np.minimum(nearest, distances[pick])
    return chosen


def k_medoids(points: np.ndarray, k: int, seed: int, max_iterations: int = 100) -> List[int]:
    """
    최원점 초기화 위에서 PAM (sklearn_extra KMedoids) 을 돌린다.
    같은 좌표의 점은 한 점으로 묶어 군집하고, 대표는 가장 앞 인덱스로 돌려준다.

    [출력]
        medoid 점 인덱스 (오름차순)
    [오류]
        TestbedSelectionException: k 가 1..n 밖일 때
    """
    n = points.shape[0]
    if not 1 <= k <= n:
        raise TestbedSelectionException(f"k={k} 는 1 이상 {n} 이하여야 합니다.")
    unique, first_index = np.unique(points, axis=0, return_index=True)
    if len(unique) <= k:
        kept = set(first_index.tolist())
        rest = [index for index in range(n) if index not in kept]
        return sorted(first_index.tolist() + rest[:k - len(unique)])

    distances = cdist(unique, unique, metric="euclidean")
    init = farthest_point_init(distances, k, seed)
    model = KMedoids(n_clusters=k, metric="precomputed", method="pam", init=distances[init],
                     max_iter=max_iterations, random_state=seed)
    model.fit(distances)
    return sorted(int(first_index[index]) for index in model.medoid_indices_)


def candidate_pool(profiles: Sequence[SetupProfile], top_fraction: float, min_win_ratio: float) -> List[SetupProfile]:
    ranked = sorted(profiles, key=lambda p: (-p.win_ratio, p.setup_id))
    top = ranked[:max(1, math.ceil(len(ranked) * top_fraction))]
    return [profile for profile in top if profile.win_ratio >= min_win_ratio]


class TestbedService:
    __test__ = False

    def __init__(self):
        self.logger = get_logger(__name__)

    def select_testbeds(self, records: Sequence[SetupRecord], profiles: Sequence[SetupProfile], k: int,
                        seed: int = 0, top_fraction: float = 0.1, min_win_ratio: float = 0.02,
                        max_iterations: int = 100) -> List[SetupRecord]:
        """
        승률 상위 셋업 중 (승률, 정규화 길이) 평면에서 k-medoids 대표 k 개를 고른다.
        [오류]
            TestbedSelectionException: 후보가 k 개보다 적을 때
        """
        by_id: Dict[int, SetupRecord] = {record.setup_id: record for record in records}
        pool = [p for p in candidate_pool(profiles, top_fraction, min_win_ratio) if p.setup_id in by_id]
        if len(pool) < k:
            raise TestbedSelectionException(
                f"후보 셋업 {len(pool)}개 (승률 >= {min_win_ratio}, 상위 {top_fraction:.0%}) 로 {k}개를 고를 수 없습니다."
            )

        points = np.array([[p.win_ratio, p.normalized_duration] for p in pool], dtype=float)
        chosen = k_medoids(points, k, seed, max_iterations)
        selected = [by_id[pool[index].setup_id] for index in chosen]
        self.logger.info(f"selected testbeds {[r.setup_id for r in selected]} from pool of {len(pool)}")
        return sorted(selected, key=lambda r: r.setup_id)
