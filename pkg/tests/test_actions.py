"""Tests for action catalogs."""

import pytest

from src.decision.actions import Action, ActionCatalog
from src.granular.errors import InputError, PreconditionError
from src.granular.spaces import build_set_hgos


def fs(text):
    return frozenset(text)


@pytest.fixture
def catalog(example_space):
    return ActionCatalog(example_space, [
        Action("Add C", "union", fs("c")),
        Action("drop b", "difference", fs("b")),
        Action("keep", "intersection", fs("ace")),
        Action("reset", "replace", fs("f")),
        Action("lower", "lower"),
        Action("upper", "upper"),
        Action("wait", "identity"),
    ])


class TestActions:
    """Effects of the catalog operations."""

    @pytest.mark.parametrize("name, expected", [
        ("Add C", "abc"),
        ("drop b", "a"),
        ("keep", "a"),
        ("reset", "f"),
        ("lower", "a"),
        ("upper", "abe"),
        ("wait", "ab"),
    ])
    def test_apply(self, catalog, name, expected):
        assert catalog.apply(name, fs("ab")) == fs(expected)

    def test_names_are_case_insensitive(self, catalog):
        assert catalog.get("  add c ") is catalog.actions[0]
        assert catalog.get("missing") is None

    def test_outcomes_follow_catalog_order(self, catalog):
        outcomes = catalog.outcomes(fs("ab"))
        assert [a.name for a, _ in outcomes] == catalog.names
        assert outcomes[0][1] == fs("abc")
        assert catalog.index(catalog.actions[3]) == 3

    def test_from_mapping(self, example_space):
        catalog = ActionCatalog.from_mapping(example_space, {
            "first": {"op": "union", "operand": ["e"]},
            "second": {},
        })
        assert catalog.names == ["first", "second"]
        assert catalog.apply("second", fs("c")) == fs("c")
        assert catalog.apply("first", fs("c")) == fs("ce")


class TestValidation:
    """Malformed catalogs and effects."""

    def test_unknown_operation(self):
        with pytest.raises(InputError):
            Action("x", "xor", fs("a"))

    def test_duplicate_names(self, example_space):
        with pytest.raises(InputError):
            ActionCatalog(example_space, [Action("Go", "identity"), Action("go ", "identity")])

    def test_operand_outside_universe(self, example_space):
        with pytest.raises(InputError):
            ActionCatalog(example_space, [Action("bad", "union", fs("z"))])

    def test_unknown_action(self, catalog):
        with pytest.raises(InputError):
            catalog.apply("jump", fs("a"))

    def test_result_outside_space(self):
        space = build_set_hgos(("a", "b"), [{"a"}, {"a", "b"}], family=[set(), {"a"}, {"a", "b"}])
        catalog = ActionCatalog(space, [Action("to b", "replace", fs("b"))])
        with pytest.raises(PreconditionError):
            catalog.apply("to b", fs("a"))
