import random

import pytest

from src.domain.dto.evaluation.fitness_dto import (
    DEFAULT_FITNESS,
    FitnessBase,
    FitnessSpec,
    FitnessWrapper,
    FoaMode,
)
from src.domain.entities.game_entity import DEFAULT_ROLE_ORDER, GameStatus, LossReason, Role
from src.service.evaluation.evaluation_service import (
    base_score,
    cure_ability_fitness,
    cubes_average_fitness,
    cubes_minimum_fitness,
    cubes_product_fitness,
    cured_fitness,
    evaluate,
    outbreak_fitness,
)

ALL_BASES = list(FitnessBase)


def spec(*bases, wrapper=FitnessWrapper.NONE, **fields):
    return FitnessSpec(bases=tuple(bases), wrapper=wrapper, **fields)


def test_outbreak_fitness(line_map, state_factory):
    assert outbreak_fitness(state_factory(line_map, outbreaks=3)) == pytest.approx(0.625)


def test_one_cure_quarter_score(line_map, state_factory):
    assert cured_fitness(state_factory(line_map, cured=[True, False, False, False])) == 0.25


def test_penalty_on_lost_state(line_map, state_factory):
    lost = state_factory(line_map, outbreaks=3, status=GameStatus.LOST, loss_reason=LossReason.OUTBREAK_LIMIT)
    assert evaluate(lost, spec(FitnessBase.F_B, wrapper=FitnessWrapper.PENALTY)) == pytest.approx(0.0625)
    assert evaluate(lost, spec(FitnessBase.F_B, wrapper=FitnessWrapper.PENALTY, penalty=0.5)) == pytest.approx(0.3125)
    assert evaluate(lost, spec(FitnessBase.F_B, wrapper=FitnessWrapper.WIN_LOSE)) == 0.0
    assert evaluate(lost, spec(FitnessBase.F_B)) == pytest.approx(0.625)


def test_won_state_scores_one_with_wrappers(line_map, state_factory):
    won = state_factory(line_map, status=GameStatus.WON, outbreaks=6)
    assert evaluate(won, spec(FitnessBase.F_B, wrapper=FitnessWrapper.WIN_LOSE)) == 1.0
    assert evaluate(won, spec(FitnessBase.F_B, wrapper=FitnessWrapper.PENALTY)) == 1.0
    assert evaluate(won, spec(FitnessBase.F_B)) == pytest.approx(0.25)


def test_cube_product_boundaries(line_map, state_factory):
    assert cubes_product_fitness(state_factory(line_map)) == 1.0
    assert cubes_product_fitness(state_factory(line_map, supply=[0, 24, 24, 24])) == 0.0


def test_cure_ability_fitness_modes(standard_map, state_factory):
    red = [standard_map.city_id(name) for name in ("Manila", "Tokyo")]
    state = state_factory(standard_map, roles=[Role.SCIENTIST, Role.MEDIC], hands=[red, []],
                          cured=[True, True, False, False])
    ability = (1 + 1 + 0 + 0.5) / 4
    assert cure_ability_fitness(state, FoaMode.SCALED) == pytest.approx((ability + 0.3 * 2 / 4) / 1.3)
    assert cure_ability_fitness(state, FoaMode.CLAMPED) == pytest.approx(min(1.0, (ability + 0.3 * 2) / 1.3))


def test_all_cured_reaches_exactly_one(line_map, state_factory):
    state = state_factory(line_map, cured=[True] * 4)
    assert cure_ability_fitness(state) == pytest.approx(1.0)
    assert cure_ability_fitness(state, FoaMode.CLAMPED) == 1.0


def test_average_and_weighted_average(line_map, state_factory):
    state = state_factory(line_map, outbreaks=4, cured=[True, False, False, False])
    assert evaluate(state, spec(FitnessBase.F_B, FitnessBase.F_OD)) == pytest.approx((0.5 + 0.25) / 2)
    weighted = spec(FitnessBase.F_B, FitnessBase.F_OD, weights=(0.8, 0.2))
    assert evaluate(state, weighted) == pytest.approx(0.8 * 0.5 + 0.2 * 0.25)


def test_cube_fitness_ordering(ring_map, state_factory):
    state = state_factory(ring_map, cubes={(0, 0): 3, (1, 0): 2, (4, 1): 1, (6, 2): 3})
    assert cubes_product_fitness(state) <= cubes_minimum_fitness(state) <= cubes_average_fitness(state)


def test_adding_cubes_never_raises_cube_scores(ring_map, state_factory):
    calm = state_factory(ring_map, cubes={(0, 0): 1})
    busy = state_factory(ring_map, cubes={(0, 0): 2, (7, 3): 1})
    for base in (FitnessBase.F_CA, FitnessBase.F_CM, FitnessBase.F_CP):
        assert base_score(busy, base) <= base_score(calm, base)


@pytest.mark.parametrize("wrapper", [FitnessWrapper.WIN_LOSE, FitnessWrapper.PENALTY])
def test_wrappers_are_transparent_while_ongoing(ring_map, state_factory, wrapper):
    state = state_factory(ring_map, cubes={(2, 0): 2}, outbreaks=1)
    for base in ALL_BASES:
        assert evaluate(state, spec(base, wrapper=wrapper)) == evaluate(state, spec(base))


def test_scores_stay_in_unit_range_over_playouts(engine, standard_map):
    specs = [spec(base, wrapper=w) for base in ALL_BASES for w in FitnessWrapper]
    specs.append(DEFAULT_FITNESS)
    for seed in range(8):
        rng = random.Random(seed)
        state = engine.new_game(standard_map, DEFAULT_ROLE_ORDER, 4, seed)
        while not state.is_over:
            engine.apply_action(state, rng.choice(engine.legal_actions(state)))
            if state.actions_left == 0:
                engine.end_turn(state)
                for fitness in specs:
                    assert 0.0 <= evaluate(state, fitness) <= 1.0


def test_default_fitness_label():
    assert DEFAULT_FITNESS.label == "p:avg(f_oa,f_cm)"
    assert str(spec(FitnessBase.F_OD)) == "f_od"


@pytest.mark.parametrize("bases, weights", [
    ((), None),
    ((FitnessBase.F_OD, FitnessBase.F_B, FitnessBase.F_CA), None),
    ((FitnessBase.F_OD,), (0.5, 0.5)),
    ((FitnessBase.F_OD, FitnessBase.F_B), (0.7, 0.7)),
])
def test_invalid_spec_shapes(bases, weights):
    with pytest.raises(ValueError):
        FitnessSpec(bases=bases, weights=weights)


def test_penalty_must_be_inside_unit_interval():
    with pytest.raises(ValueError):
        FitnessSpec(bases=(FitnessBase.F_OD,), penalty=1.0)


def formula_score(state, base, foa_mode):
    cured = sum(state.cured)
    left = [(24 - sum(state.cubes[city * 4 + color] for city in range(state.world.size))) / 24 for color in range(4)]
    if base is FitnessBase.F_OD:
        return cured / 4
    if base is FitnessBase.F_OA:
        ability = 0.0
        for color in range(4):
            if state.cured[color]:
                ability += 1.0
                continue
            held = [sum(1 for card in p.hand if int(state.world.colors[card]) == color) for p in state.players]
            ability += max(min(1.0, n / (4 if p.role is Role.SCIENTIST else 5)) for n, p in zip(held, state.players))
        if foa_mode is FoaMode.SCALED:
            return (ability / 4 + 0.3 * cured / 4) / 1.3
        return min(1.0, (ability / 4 + 0.3 * cured) / 1.3)
    if base is FitnessBase.F_CA:
        return sum(left) / 4
    if base is FitnessBase.F_CM:
        return min(left)
    if base is FitnessBase.F_CP:
        return left[0] * left[1] * left[2] * left[3]
    return max(0.0, 1.0 - state.outbreaks / 8)


def formula_evaluate(state, fitness):
    if fitness.wrapper is not FitnessWrapper.NONE and state.status is GameStatus.WON:
        return 1.0
    if fitness.wrapper is FitnessWrapper.WIN_LOSE and state.status is GameStatus.LOST:
        return 0.0
    scores = [formula_score(state, base, fitness.foa_mode) for base in fitness.bases]
    weights = fitness.weights or ((0.5, 0.5) if len(scores) == 2 else (1.0,))
    value = sum(w * s for w, s in zip(weights, scores))
    return fitness.penalty * value if fitness.wrapper is FitnessWrapper.PENALTY and state.status is GameStatus.LOST \
        else value


def random_state(world, state_factory, rng):
    roles = rng.sample(list(Role), rng.randint(2, 4))
    cards = rng.sample(range(world.size), 7 * len(roles))
    hands = [cards[i * 7:i * 7 + rng.randint(0, 7)] for i in range(len(roles))]
    cubes = {(rng.randrange(world.size), rng.randrange(4)): rng.randint(1, 3) for _ in range(rng.randint(0, 8))}
    status = rng.choice(list(GameStatus))
    return state_factory(world, roles=roles, hands=hands, cubes=cubes, outbreaks=rng.randint(0, 8),
                         cured=[rng.random() < 0.3 for _ in range(4)], status=status,
                         loss_reason=LossReason.OUTBREAK_LIMIT if status is GameStatus.LOST else None)


def test_evaluate_matches_formulas_on_random_states(standard_map, state_factory):
    rng = random.Random(8)
    specs = [spec(base, wrapper=w, foa_mode=mode) for base in ALL_BASES for w in FitnessWrapper for mode in FoaMode]
    specs += [spec(a, b, wrapper=w) for a in ALL_BASES for b in ALL_BASES if a is not b for w in FitnessWrapper]
    specs += [spec(FitnessBase.F_OA, FitnessBase.F_CM, weights=(0.7, 0.3), wrapper=FitnessWrapper.PENALTY, penalty=0.25)]
    for _ in range(1000):
        state = random_state(standard_map, state_factory, rng)
        for fitness in specs:
            assert evaluate(state, fitness) == pytest.approx(formula_evaluate(state, fitness), abs=1e-12)
