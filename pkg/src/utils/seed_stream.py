"""
재현 가능한 난수 스트림 유틸리티.

마스터 시드와 (셀, 실행) 같은 키 묶음에서 독립적인 하위 시드를 파생한다.
같은 키는 언제나 같은 시드를 돌려주므로 병렬 실행 순서와 무관하게 결과가 재현된다.
"""
import random

import numpy as np

SEED_BITS = 63


def derive_seed(master_seed: int, *keys: int) -> int:
    """
    [입력]
        master_seed: 실험 전체의 마스터 시드 (0 이상)
        keys: 스트림을 구분하는 정수 키 (예: 셀 번호, 실행 번호)
    [출력]
        63비트 정수 시드
    """
    sequence = np.random.SeedSequence(entropy=int(master_seed), spawn_key=tuple(int(k) for k in keys))
    return int(sequence.generate_state(1, dtype=np.uint64)[0] >> np.uint64(64 - SEED_BITS))


def next_seed(rng: random.Random) -> int:
    """이미 존재하는 스트림에서 새 하위 시드를 뽑는다."""
    return rng.getrandbits(SEED_BITS)
