import random
from collections import Counter

import pytest
from scipy.stats import chisquare

from src.domain.dto.agent.rhea_dto import AgentKind, CommitMode, RheaConfig
from src.domain.dto.evaluation.fitness_dto import FitnessBase, FitnessSpec, FitnessWrapper
from src.domain.entities.action_entity import MacroKind
from src.domain.entities.game_entity import DEFAULT_ROLE_ORDER, Role
from src.domain.entities.world_entity import DiseaseColor
from src.service.agents.agent_factory import make_agent
from src.service.agents.rhea_agent import (
    MUTATION_TIERS,
    Genome,
    RheaAgent,
    TurnPlan,
    commit,
    dp_rollout,
    evolve,
    genome_fitness,
    mutate,
    mutation_tier_order,
    rhea_decide,
)
from src.service.belief.belief_service import observe

SMALL = RheaConfig(horizon=2, generations=3, trials=2)


@pytest.fixture
def opening_belief(engine, standard_map):
    return observe(engine.new_game(standard_map, DEFAULT_ROLE_ORDER, 4, seed=31))


@pytest.fixture
def short_deck_belief(standard_map, state_factory):
    """플레이어 덱이 3장뿐이라 두 번째 턴 끝에 덱이 떨어진다."""
    state = state_factory(standard_map, player_deck=[[0, 1, 2]], player_discard=list(range(3, 48)),
                          infection_sections=[list(range(48))])
    return observe(state)


@pytest.fixture
def winning_belief(standard_map, state_factory):
    red = [standard_map.city_id(name) for name in ("Manila", "Tokyo", "Osaka", "Seoul")]
    rest = [card for card in range(standard_map.size) if card not in red]
    state = state_factory(standard_map, roles=[Role.SCIENTIST, Role.MEDIC], hands=[red, []],
                          player_discard=rest, cured=[True, True, True, False])
    return observe(state)


def test_rollout_with_single_turn_horizon(engine, opening_belief):
    genome = dp_rollout(engine, opening_belief, 1, seed=5)
    assert len(genome.turns) == 1
    assert genome.turns[0].player == opening_belief.public.current_player
    assert sum(m.cost for m in genome.turns[0].macros) == 4


def test_rollout_follows_seat_order(engine, opening_belief):
    genome = dp_rollout(engine, opening_belief, 5, seed=2)
    assert [plan.player for plan in genome.turns] == [0, 1, 2, 3, 0][:len(genome.turns)]


def test_rollout_is_reproducible(engine, opening_belief):
    first = dp_rollout(engine, opening_belief, 3, seed=9)
    second = dp_rollout(engine, opening_belief, 3, seed=9)
    assert first.turns == second.turns


def test_rollout_stops_when_game_ends(engine, short_deck_belief):
    genome = dp_rollout(engine, short_deck_belief, 5, seed=1)
    assert len(genome.turns) == 2


def test_tier_order_is_uniform():
    firsts = Counter(mutation_tier_order(random.Random(seed))[0] for seed in range(4000))
    assert set(firsts) == set(MUTATION_TIERS)
    assert chisquare([firsts[tier] for tier in MUTATION_TIERS]).pvalue > 0.001


def test_walk_only_genome_mutates_to_same_shape(engine, ring_map, state_factory):
    belief = observe(state_factory(ring_map, player_discard=list(range(8))))
    parent = dp_rollout(engine, belief, 1, seed=0)
    assert parent.kinds == [(MacroKind.WALK_AWAY,)]
    child = mutate(engine, parent, belief, 1, random.Random(4))
    assert child.kinds == parent.kinds


def test_mutant_keeps_horizon_and_budget(engine, opening_belief):
    parent = dp_rollout(engine, opening_belief, 3, seed=3)
    rng = random.Random(8)
    for _ in range(5):
        child = mutate(engine, parent, opening_belief, 3, rng)
        assert len(child.turns) == 3
        for plan in child.turns:
            assert sum(m.cost for m in plan.macros) <= 4
            assert all(m.player == plan.player for m in plan.macros)
        parent = child


def test_fitness_single_trial_is_reproducible(engine, opening_belief):
    cfg = RheaConfig(horizon=2, trials=1)
    genome = dp_rollout(engine, opening_belief, 2, seed=4)
    first = genome_fitness(engine, genome, opening_belief, cfg, random.Random(6))
    second = genome_fitness(engine, genome, opening_belief, cfg, random.Random(6))
    assert first == second
    assert 0.0 <= first <= 1.0
    assert genome.trials_used == 1


def test_winning_plan_scores_one(engine, winning_belief):
    cfg = RheaConfig(horizon=2, trials=3, fitness=FitnessSpec(bases=(FitnessBase.F_B,),
                                                               wrapper=FitnessWrapper.WIN_LOSE))
    genome = dp_rollout(engine, winning_belief, 2, seed=0)
    assert genome.turns[0].macros[0].kind is MacroKind.DISCOVER_CURE
    assert genome_fitness(engine, genome, winning_belief, cfg, random.Random(0)) == 1.0


def test_zero_generations_returns_dp_seed(engine, opening_belief):
    cfg = RheaConfig(horizon=2, generations=0, trials=1)
    genome, history = evolve(engine, opening_belief, cfg, seed=12)
    assert len(history) == 1
    assert genome.turns == dp_rollout(engine, opening_belief, 2, random.Random(12).getrandbits(63)).turns


def test_incumbent_fitness_never_drops(engine, opening_belief):
    _, history = evolve(engine, opening_belief, SMALL, seed=7)
    assert len(history) == SMALL.generations + 1
    assert all(later >= earlier for earlier, later in zip(history, history[1:]))


def test_evolve_is_reproducible(engine, opening_belief):
    first, _ = evolve(engine, opening_belief, SMALL, seed=3)
    second, _ = evolve(engine, opening_belief, SMALL, seed=3)
    assert first.turns == second.turns


def test_commit_on_empty_plans():
    assert commit(Genome([TurnPlan(0, ())]), CommitMode.FIRST_MACRO) == []
    assert commit(Genome([]), CommitMode.WHOLE_TURN) == []


def test_commit_first_macro_versus_whole_turn(engine, opening_belief):
    genome = dp_rollout(engine, opening_belief, 1, seed=5)
    first = commit(genome, CommitMode.FIRST_MACRO)
    whole = commit(genome, CommitMode.WHOLE_TURN)
    assert first == [genome.turns[0].macros[0]]
    assert whole == list(genome.turns[0].macros)


def test_decide_returns_current_player_macros(engine, opening_belief):
    macros = rhea_decide(engine, opening_belief, SMALL, seed=1)
    assert len(macros) == 1
    assert macros[0].player == opening_belief.public.current_player


def test_factory_builds_rhea_agent(engine, opening_belief):
    agent = make_agent(AgentKind.RHEA, engine, SMALL.model_copy(update={"commit": CommitMode.WHOLE_TURN}))
    assert isinstance(agent, RheaAgent)
    macros = agent.decide(opening_belief, random.Random(0))
    assert sum(m.cost for m in macros) <= 4


def test_evolution_adopts_a_mutant_that_cures(engine, ring_map, state_factory):
    # DP 는 R7 의 큐브 3개를 먼저 치료하느라 카드를 받은 뒤 치료제를 만들 행동이 없다
    red = int(DiseaseColor.RED)
    state = state_factory(ring_map, roles=[Role.SCIENTIST, Role.MEDIC], hands=[[1, 2, 3], [0]],
                          cubes={(7, red): 3}, player_deck=[[4, 5, 6, 7]], infection_sections=[list(range(8))])
    belief = observe(state)
    cfg = RheaConfig(horizon=1, generations=60, trials=1, commit=CommitMode.WHOLE_TURN,
                     fitness=FitnessSpec(bases=(FitnessBase.F_OD,)))

    seed_plan = dp_rollout(engine, belief, 1, seed=0)
    assert seed_plan.kinds == [(MacroKind.TREAT_DISEASE, MacroKind.SHARE_TAKE)]

    genome, history = evolve(engine, belief, cfg, seed=21)
    assert history[0] == 0.0
    assert history[-1] == 0.25
    assert MacroKind.DISCOVER_CURE in genome.kinds[0]
    assert MacroKind.DISCOVER_CURE in [m.kind for m in commit(genome, cfg.commit)]
