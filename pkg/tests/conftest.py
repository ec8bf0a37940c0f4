"""Shared fixtures: the five-point relation example and the doctors example."""

import pytest

from src.granular.mereo import ParthoodRelation
from src.granular.spaces import build_set_hgos
from src.granular.tables import BinaryRelationSpace, InformationTable, granules_from_relation

UNIVERSE = ("a", "b", "c", "e", "f")
RELATION = frozenset({
    ("a", "a"), ("b", "b"), ("c", "c"), ("a", "b"),
    ("c", "e"), ("e", "f"), ("e", "c"), ("f", "e"), ("e", "b"),
})


def fs(text):
    """frozenset from a string of one-letter points: fs("abe")."""
    return frozenset(text)


@pytest.fixture
def relation_space():
    return BinaryRelationSpace(UNIVERSE, RELATION)


@pytest.fixture
def example_space(relation_space):
    return build_set_hgos(UNIVERSE, granules_from_relation(relation_space))


@pytest.fixture
def doctors_parthood():
    return ParthoodRelation.reflexive_closure(
        UNIVERSE, [("a", "c"), ("b", "c"), ("a", "e"), ("b", "e")])


@pytest.fixture
def doctors_table():
    rows = {
        "X": {"att1-3": "smm", "att4-6": "www", "att7-9": "nnw", "diagnosis": "a"},
        "W": {"att1-3": "mww", "att4-6": "swm", "att7-9": "nnn", "diagnosis": "b"},
        "Z": {"att1-3": "smm", "att4-6": "mwm", "att7-9": "wmw", "diagnosis": "c"},
        "E": {"att1-3": "msw", "att4-6": "swm", "att7-9": "mms", "diagnosis": "e"},
        "F": {"att1-3": "mss", "att4-6": "mwm", "att7-9": "mws", "diagnosis": "f"},
    }
    return InformationTable.from_rows(rows)
