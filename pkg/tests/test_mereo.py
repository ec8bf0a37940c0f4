"""Tests for mereological predicates, ideals and discernibility matrices."""

from itertools import combinations

import pytest

from src.granular.errors import InputError
from src.granular.mereo import (
    OVERLAP_DEFINITION,
    ParthoodRelation,
    attribute_discernibility,
    bounds,
    check_separative_theorems,
    discernibility_matrix,
    mereo_predicates,
    p_ideal_check,
)
from src.granular.report import CONFIRMED, NOT_APPLICABLE, REFUTED
from src.granular.spaces import build_set_hgos
from src.granular.tables import CggsBundle, InformationTable

K = frozenset("abce")


def boolean_without_bottom(atoms=("1", "2", "3")):
    carrier = [frozenset(c) for size in range(1, len(atoms) + 1) for c in combinations(atoms, size)]
    return ParthoodRelation(tuple(carrier), frozenset((a, b) for a in carrier for b in carrier if a <= b))


class TestPredicates:
    """Sum, fusion and bounds on the doctors parthood."""

    def test_overlaps(self, doctors_parthood):
        assert doctors_parthood.overlaps("a") == frozenset("ace")
        assert doctors_parthood.overlaps("c") == frozenset("abce")
        assert doctors_parthood.parts("e") == frozenset("abe")

    def test_fusions_of_k(self, doctors_parthood):
        assert mereo_predicates(doctors_parthood, "c", K, "fusion")
        assert mereo_predicates(doctors_parthood, "e", K, "fusion")

    def test_c_is_not_a_sum_of_k(self, doctors_parthood):
        assert not mereo_predicates(doctors_parthood, "c", K, "sum")

    def test_trivial_fusion(self, doctors_parthood):
        assert mereo_predicates(doctors_parthood, "a", {"a"}, "fusion")

    def test_unknown_member(self, doctors_parthood):
        with pytest.raises(InputError):
            mereo_predicates(doctors_parthood, "a", {"z"}, "sum")
        with pytest.raises(InputError):
            mereo_predicates(doctors_parthood, "a", {"a"}, "product")

    def test_bounds(self, doctors_parthood):
        assert bounds(doctors_parthood, K, "upper") == frozenset()
        assert bounds(doctors_parthood, set(), "upper") == frozenset(doctors_parthood.carrier)
        assert "a" in bounds(doctors_parthood, {"a"}, "upper")
        assert bounds(doctors_parthood, {"c", "e"}, "lower") == frozenset("ab")

    def test_properties(self, doctors_parthood):
        assert doctors_parthood.reflexive
        assert doctors_parthood.transitive
        bare = ParthoodRelation(("x", "y"), frozenset({("x", "y")}))
        assert not bare.reflexive


class TestSeparativeTheorems:
    """Strong supplementation and the sum/fusion scans."""

    def test_doctors_is_separative(self, doctors_parthood):
        report = check_separative_theorems(doctors_parthood)
        assert report["SSP"].holds
        assert OVERLAP_DEFINITION in report.annotations[0]

    def test_doctors_refutes_fusion_to_sum(self, doctors_parthood):
        report = check_separative_theorems(doctors_parthood)
        row = report["fusion ⇒ sum"]
        assert row.status == REFUTED
        assert row.finding
        assert row.witness == ("c", frozenset({"e"}))
        assert report["sum ⇒ fusion"].status == CONFIRMED
        assert report["upper-bound fusion ⇒ sum"].status == CONFIRMED
        assert report.passed

    def test_boolean_order_without_bottom(self):
        report = check_separative_theorems(boolean_without_bottom())
        assert report["SSP"].holds
        assert report["sum ⇒ fusion"].status == CONFIRMED
        assert report["fusion ⇒ sum"].status == CONFIRMED

    def test_single_point(self):
        report = check_separative_theorems(ParthoodRelation.reflexive_closure(("x",), []))
        assert report["SSP"].holds

    def test_not_transitive_skips_equivalence(self):
        p = ParthoodRelation.reflexive_closure(("x", "y", "z"), [("x", "y"), ("y", "z")])
        report = check_separative_theorems(p)
        assert report["sum ⇒ fusion"].status == NOT_APPLICABLE


class TestIdeals:
    """P-ideals and principal ideals."""

    def test_empty_is_ideal(self, doctors_parthood):
        assert p_ideal_check(doctors_parthood, set())

    def test_chain_prefix(self):
        p = ParthoodRelation.reflexive_closure(("a", "b", "c"), [("a", "b"), ("b", "c"), ("a", "c")])
        assert p_ideal_check(p, {"a", "b"})
        assert p_ideal_check(p, {"a", "b"}, "principal")

    def test_antichain_pair(self):
        p = ParthoodRelation.reflexive_closure(("a", "b"), [])
        assert not p_ideal_check(p, {"a", "b"})

    def test_doctors_ideals(self, doctors_parthood):
        assert p_ideal_check(doctors_parthood, {"a", "b", "c"}, "principal")
        assert not p_ideal_check(doctors_parthood, {"a", "b"})
        assert not p_ideal_check(doctors_parthood, K)

    def test_outside_carrier(self, doctors_parthood):
        with pytest.raises(InputError):
            p_ideal_check(doctors_parthood, {"z"})


class TestDiscernibility:
    """Skewed discernibility matrices over the doctors table."""

    @pytest.fixture
    def bundle(self, doctors_table):
        attrs = ("att1-3", "att4-6")
        space = build_set_hgos(attrs, [{a} for a in attrs])
        return CggsBundle(doctors_table, space, frozenset())

    def test_diagonal_empty(self, bundle):
        matrix = discernibility_matrix(bundle, attribute_discernibility(bundle.table))
        assert matrix.order == 5
        assert all(matrix.entry(x, x) == () for x in matrix.objects)

    def test_minimized_entry(self, bundle):
        phi = attribute_discernibility(bundle.table)
        full = discernibility_matrix(bundle, phi)
        assert set(full.entry("X", "Z")) == {frozenset({"att4-6"}), frozenset({"att1-3", "att4-6"})}
        minimal = discernibility_matrix(bundle, phi, minimize=True)
        assert minimal.entry("X", "Z") == (frozenset({"att4-6"}),)

    def test_three_attributes_minimize_to_singletons(self):
        table = InformationTable.from_rows({
            "p": {"1": "x", "2": "x", "3": "x"},
            "q": {"1": "y", "2": "y", "3": "y"},
        })
        space = build_set_hgos(("1", "2", "3"), [{"1"}, {"2"}, {"3"}])
        matrix = discernibility_matrix(CggsBundle(table, space, frozenset()),
                                       attribute_discernibility(table), minimize=True)
        assert set(matrix.entry("p", "q")) == {frozenset({"1"}), frozenset({"2"}), frozenset({"3"})}

    def test_false_predicate_gives_empty_matrix(self, bundle):
        matrix = discernibility_matrix(bundle, lambda a, b, x: False)
        assert all(entry == () for row in matrix.entries for entry in row)
