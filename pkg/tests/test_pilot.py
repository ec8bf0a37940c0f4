"""Tests for action ranking, scenario runs and generated datasets."""

import pytest

from src.decision.actions import Action, ActionCatalog
from src.decision.pilot import (
    GRIF,
    RIF,
    Measure,
    Scenario,
    check_dataset,
    discrimination_gap,
    generate_dataset,
    generate_scenario,
    run_scenario,
    suggest_action,
)
from src.granular.errors import InputError
from src.granular.report import FAILS, HOLDS, VACUOUS
from src.inclusion.grif import GrifMatrix


def fs(text):
    return frozenset(text)


@pytest.fixture
def growth(example_space):
    return ActionCatalog(example_space, [Action("add a", "union", fs("a")), Action("add c", "union", fs("c"))])


def scenario(space, sok, sokp, sok1, sokp1):
    stages = {"Er": frozenset(), "Erp": frozenset(), "Sok": fs(sok), "Sokp": fs(sokp),
              "Sok1": fs(sok1), "Sokp1": fs(sokp1)}
    catalogs = {
        "A": ActionCatalog(space, [Action("add a", "union", fs("a")), Action("add c", "union", fs("c"))]),
        "C": ActionCatalog(space, [Action("wait", "identity")]),
    }
    return Scenario(space, stages, catalogs)


class TestSuggestion:
    """Ranking a catalog against a target."""

    def test_matrix_separates_equal_scalars(self, example_space, growth):
        ranking = suggest_action(example_space, frozenset(), growth, fs("acf"))
        assert [r.action.name for r in ranking.entries] == ["add c", "add a"]
        assert [r.layer for r in ranking.entries] == [0, 1]
        assert ranking.best.value == GrifMatrix.from_rows([[1, 1], ["2/3", 1]])
        assert ranking.trace == []

    def test_scalar_tie_uses_catalog_order(self, example_space, growth):
        ranking = suggest_action(example_space, frozenset(), growth, fs("acf"), RIF)
        assert [r.action.name for r in ranking.entries] == ["add a", "add c"]
        assert len(ranking.trace) == 1

    def test_single_action(self, example_space):
        catalog = ActionCatalog(example_space, [Action("wait", "identity")])
        ranking = suggest_action(example_space, fs("ab"), catalog, fs("ab"))
        assert len(ranking) == 1
        assert ranking.best.outcome == fs("ab")

    def test_empty_catalog(self, example_space):
        with pytest.raises(InputError):
            suggest_action(example_space, frozenset(), ActionCatalog(example_space, []), fs("a"))

    def test_discrimination_gap(self, example_space, growth):
        gaps = discrimination_gap(example_space, frozenset(), growth, fs("acf"))
        assert len(gaps) == 1
        first, second, value, m1, m2 = gaps[0]
        assert (first, second, value) == ("add a", "add c", 1)
        assert m1 == GrifMatrix.from_rows([[1, 1], ["1/3", 1]])
        assert m2 == GrifMatrix.from_rows([[1, 1], ["2/3", 1]])

    def test_unknown_measure(self):
        with pytest.raises(InputError):
            Measure("entropy")


class TestScenario:
    """Replays of the fixed step schema."""

    def test_unchanged_closeness_is_vacuous(self, example_space):
        log = run_scenario(scenario(example_space, "ab", "acf", "ab", "acf"))
        result = log.checks["step 11 improvement"]
        assert result.status == VACUOUS
        assert result.note == "closeness unchanged (non-strict)"
        assert log.passed

    def test_improvement(self, example_space):
        log = run_scenario(scenario(example_space, "c", "a", "acf", "acf"))
        assert log.checks["step 11 improvement"].status == HOLDS

    def test_worsening_names_entries(self, example_space):
        log = run_scenario(scenario(example_space, "acf", "acf", "c", "a"))
        result = log.checks["step 11 improvement"]
        assert result.status == FAILS
        assert result.note == "entries ul, uu decreased"
        assert not log.passed

    def test_schema_steps(self, example_space):
        log = run_scenario(scenario(example_space, "ab", "acf", "ab", "acf"))
        steps = [entry.step for entry in log.entries]
        assert steps == sorted(steps)
        assert steps[0] == 1 and steps[-1] == 14
        performed = [entry for entry in log.entries if entry.step == 8]
        assert performed[0].event == "perform add c"
        assert log.entries[-1].values["state"] == fs("c")

    def test_chooser_out_of_range(self, example_space):
        with pytest.raises(InputError):
            run_scenario(scenario(example_space, "ab", "acf", "ab", "acf"), chooser=lambda name, ranking: 5)

    def test_scalar_measure(self, example_space):
        log = run_scenario(scenario(example_space, "ab", "acf", "ab", "acf"), RIF)
        assert log.measure.startswith("rif:")
        assert log.checks["step 11 improvement"].status == VACUOUS

    def test_missing_stage(self, example_space):
        sc = scenario(example_space, "ab", "acf", "ab", "acf")
        stages = dict(sc.stages)
        del stages["Sok1"]
        with pytest.raises(InputError):
            Scenario(example_space, stages, sc.catalogs)

    def test_empty_catalog(self, example_space):
        sc = scenario(example_space, "ab", "acf", "ab", "acf")
        with pytest.raises(InputError):
            Scenario(example_space, sc.stages, {"A": sc.catalogs["A"], "C": ActionCatalog(example_space, [])})

    def test_generated_is_deterministic(self):
        first, second = generate_scenario(11), generate_scenario(11)
        assert first.stages == second.stages
        assert first.catalogs["A"].actions == second.catalogs["A"].actions
        events = [e.event for e in run_scenario(first, GRIF).entries]
        assert events == [e.event for e in run_scenario(second, GRIF).entries]


class TestDataset:
    """Generated benchmark datasets."""

    def test_invariants(self):
        dataset, bundle = generate_dataset(3, 2, 1, 2, 7)
        assert dataset.invariants(bundle.space).passed
        report = check_dataset(dataset, bundle)
        assert "GGS axioms" in report
        assert (len(dataset.C), len(dataset.A), len(dataset.B)) == (3, 2, 4)
        assert dataset.granules == dataset.C[:2]
        assert set(bundle.table.objects) == set(dataset.elements)

    def test_deterministic(self):
        first, _ = generate_dataset(3, 2, 1, 2, 7)
        second, _ = generate_dataset(3, 2, 1, 2, 7)
        assert first.elements == second.elements

    def test_no_extra_elements(self):
        dataset, bundle = generate_dataset(2, 1, 0, 1, 3)
        assert dataset.B == dataset.C
        assert dataset.invariants(bundle.space).passed

    def test_granulation_fills_c(self):
        dataset, bundle = generate_dataset(2, 1, 0, 2)
        assert dataset.granules == dataset.C
        assert dataset.invariants(bundle.space).passed

    @pytest.mark.parametrize("sizes", [(1, 1, 0, 2), (5, 1, 0, 2), (1, 0, 0, 1)])
    def test_bad_sizes(self, sizes):
        with pytest.raises(InputError):
            generate_dataset(*sizes)
