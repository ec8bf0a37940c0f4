"""Tests for model enumeration and observation filtering."""

import random

import pytest

from src.granular.errors import InputError
from src.granular.tables import granules_from_relation
from src.inclusion.grif import GrifMatrix
from src.decision.inverse import (
    CandidateModel,
    Observation,
    aggregate_unknown,
    consistency_filter,
    count_grif_pairs,
    enumerate_models,
    enumerate_unknown,
    match_placeholders,
    model_consistent,
    mutate_relation,
    mutation_models,
    observations_from_model,
)

from .conftest import RELATION, UNIVERSE


def fs(text):
    return frozenset(text)


@pytest.fixture
def true_model(relation_space):
    return CandidateModel(UNIVERSE, granules_from_relation(relation_space), RELATION)


@pytest.fixture
def small_model():
    return CandidateModel(("x", "y", "z"), (frozenset({"x"}), frozenset({"y", "z"})))


class TestEnumeration:
    """Candidate streams and their bounds."""

    def test_two_points_give_sixteen_relations(self):
        models = list(enumerate_models(("x", "y"), dedupe=False))
        assert len(models) == 16
        assert len({m.relation for m in models}) == 16
        assert len(list(enumerate_models(("x", "y")))) <= 16

    def test_single_point(self):
        keys = [m.key for m in enumerate_models(1)]
        assert keys == [frozenset({frozenset()}), frozenset({frozenset({"x1"})})]

    def test_deterministic_order(self):
        first = [m.granulation for m in enumerate_models(("x", "y"))]
        second = [m.granulation for m in enumerate_models(("x", "y"))]
        assert first == second

    def test_pool_contains_true_model(self, true_model):
        models = enumerate_models(UNIVERSE, "pool", pool=true_model.granulation, max_blocks=5)
        assert true_model.key in {m.key for m in models}

    def test_relations_bound(self):
        with pytest.raises(InputError):
            list(enumerate_models(UNIVERSE))

    def test_pool_bound(self):
        pool = [{x} for x in UNIVERSE]
        with pytest.raises(InputError):
            list(enumerate_models(UNIVERSE, "pool", pool=pool, max_combinations=10))

    def test_pool_required(self):
        with pytest.raises(InputError):
            list(enumerate_models(UNIVERSE, "pool"))

    def test_unknown_generator(self):
        with pytest.raises(InputError):
            list(enumerate_models(("x",), "lattices"))

    def test_unknown_universe_sizes(self):
        sizes = {len(m.universe) for m in enumerate_unknown(2)}
        assert sizes == {1, 2}

    def test_granule_outside_universe(self):
        with pytest.raises(InputError):
            CandidateModel(("x",), (frozenset({"y"}),))


class TestObservations:
    """Observation records and helpers."""

    def test_empty_observation_refused(self):
        with pytest.raises(InputError):
            Observation(fs("a"))

    def test_from_model(self, true_model):
        observations = observations_from_model(true_model, grif_pairs=[("ab", "acf")])
        assert len(observations) == 32
        ab = next(o for o in observations if o.subject == fs("ab"))
        assert (ab.lower, ab.upper) == (fs("a"), fs("abe"))
        assert ab.grif == ((fs("acf"), GrifMatrix.from_rows([[1, 1], ["1/3", 1]])),)

    def test_grif_only_subject(self, true_model):
        observations = observations_from_model(true_model, subjects=[], grif_pairs=[("ab", "acf")])
        assert len(observations) == 1
        assert observations[0].lower is None

    def test_pair_count(self):
        assert count_grif_pairs([f"s{i}" for i in range(12)]) == 132
        assert count_grif_pairs(["a", "a"]) == 0

    def test_aggregate(self):
        x = GrifMatrix.from_rows([["1/4", 1], [0, "1/2"]])
        y = GrifMatrix.from_rows([["1/2", 0], [0, "1/4"]])
        assert aggregate_unknown([x, y]) == GrifMatrix.from_rows([["1/2", 1], [0, "1/2"]])
        with pytest.raises(InputError):
            aggregate_unknown([])

    def test_mutation_is_seeded(self):
        first = mutate_relation(UNIVERSE, RELATION, random.Random(3))
        second = mutate_relation(UNIVERSE, RELATION, random.Random(3))
        assert first == second
        assert len(first ^ RELATION) == 1


class TestFiltering:
    """Exact matching of candidates against observations."""

    def test_true_model_survives_mutations(self, true_model):
        observations = observations_from_model(true_model)
        models = mutation_models(UNIVERSE, RELATION, 100)
        survivors = consistency_filter(models, observations)
        assert survivors[0] is models[0]
        reference = true_model.space()
        for model in models:
            space = model.space()
            same = all(space.lower(x) == reference.lower(x) and space.upper(x) == reference.upper(x)
                       for x in reference.family)
            assert (model in survivors) == same

    def test_infeasible_matrix_empties_survivors(self, true_model):
        bad = Observation(fs("a"), grif=((fs("b"), GrifMatrix.from_rows([[0, 1], [1, 1]])),))
        assert consistency_filter([true_model], [bad]) == []

    def test_no_observations_keep_everything(self):
        models = list(enumerate_models(("x", "y")))
        assert consistency_filter(models, []) == models

    def test_round_trip_on_small_universes(self):
        for model in enumerate_unknown(3):
            assert model_consistent(model, observations_from_model(model)), model

    def test_every_relation_on_four_points_survives_its_own_table(self):
        count = 0
        for model in enumerate_models(("w", "x", "y", "z"), dedupe=False):
            assert model_consistent(model, observations_from_model(model)), model.relation
            count += 1
        assert count == 1 << 16

    def test_more_observations_never_add_survivors(self):
        models = list(enumerate_models(("x", "y", "z")))
        model = models[5]
        observations = observations_from_model(model)
        fewer = consistency_filter(models, observations[:3])
        more = consistency_filter(models, observations)
        assert set(m.key for m in more) <= set(m.key for m in fewer)

    def test_subject_outside_universe(self, small_model):
        assert not model_consistent(small_model, [Observation(fs("w"), lower=frozenset())])

    def test_worker_pool_keeps_order(self):
        models = list(enumerate_models(("x", "y")))
        observations = [Observation(frozenset({"x"}), lower=frozenset())]
        assert consistency_filter(models, observations, workers=2) == consistency_filter(models, observations)


class TestPlaceholders:
    """Subjects known only by label."""

    def test_single_placeholder(self, small_model):
        space = small_model.space()
        observations = [Observation("X", lower=fs("x"), upper=fs("x"))]
        assert match_placeholders(space, observations) == {"X": fs("x")}
        assert model_consistent(small_model, observations)

    def test_placeholder_pair_with_matrix(self, small_model):
        space = small_model.space()
        observations = [
            Observation("X", lower=fs("x"), upper=fs("x")),
            Observation("Y", lower=fs("yz"), grif=(("X", GrifMatrix.zero()),)),
        ]
        assert match_placeholders(space, observations) == {"X": fs("x"), "Y": fs("yz")}

    def test_unmatchable_placeholder(self, small_model):
        observations = [Observation("X", lower=fs("y"))]
        assert match_placeholders(small_model.space(), observations) is None
        assert not model_consistent(small_model, observations)

    def test_size_limit(self, true_model):
        with pytest.raises(InputError):
            match_placeholders(true_model.space(), [Observation("X", lower=fs("a"))])
