import random

from src.utils.seed_stream import SEED_BITS, derive_seed, next_seed


def test_same_keys_same_seed():
    assert derive_seed(7, 1, 2) == derive_seed(7, 1, 2)
    assert random.Random(derive_seed(7, 1)).random() == random.Random(derive_seed(7, 1)).random()


def test_keys_separate_streams():
    seeds = {derive_seed(7, setup, run) for setup in range(20) for run in range(20)}
    assert len(seeds) == 400
    assert derive_seed(7, 1, 2) != derive_seed(7, 2, 1)
    assert derive_seed(7) != derive_seed(8)


def test_seeds_fit_in_bits():
    seeds = [derive_seed(master, 3) for master in range(200)] + [next_seed(random.Random(s)) for s in range(200)]
    assert all(0 <= seed < 2 ** SEED_BITS for seed in seeds)


def test_next_seed_follows_the_stream():
    first, second = random.Random(4), random.Random(4)
    assert [next_seed(first) for _ in range(3)] == [next_seed(second) for _ in range(3)]
