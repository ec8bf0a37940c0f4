"""Tests for rough inclusion functions and the measures built on them."""

from fractions import Fraction as F

import pytest

from src.granular.errors import InputError, PreconditionError, UnsupportedError
from src.granular.report import NOT_APPLICABLE
from src.granular.spaces import build_set_hgos
from src.granular.tables import successor_neighborhoods
from src.inclusion.rif import (
    K0,
    K1,
    InclusionFn,
    accuracy,
    check_misclassification,
    check_rif_axioms,
    eval_rif,
    misclassification,
    parametric_approx,
    vprs_approx,
)


EIGHTHS = [F(k, 8) for k in range(1, 8)]


def fs(text):
    return frozenset(text)


class TestEval:
    """Values of the built-in inclusion functions."""

    def test_k0_empty_first_argument(self):
        assert eval_rif(K0, frozenset(), fs("ab")) == 1
        assert eval_rif(K0, frozenset(), frozenset()) == 1

    def test_k0_count(self):
        assert eval_rif(K0, fs("abe"), fs("acf")) == F(1, 3)

    def test_k1(self):
        assert eval_rif(K1, fs("a"), fs("ab")) == 1
        assert eval_rif(K1, fs("ab"), fs("b")) == F(1, 2)
        assert eval_rif(K1, fs("a"), frozenset()) == 0

    def test_kst_rescales(self):
        f = InclusionFn.kst("1/4", "3/4")
        assert eval_rif(f, fs("abe"), fs("acf")) == F(1, 6)

    def test_kst_boundaries(self):
        f = InclusionFn.kst("1/2", "3/4")
        assert eval_rif(f, fs("ab"), fs("a")) == 0
        g = InclusionFn.kst("1/4", "1/2")
        assert eval_rif(g, fs("ab"), fs("a")) == 1

    def test_kst_threshold_order(self):
        with pytest.raises(InputError):
            InclusionFn.kst("3/4", "1/4")
        with pytest.raises(InputError):
            InclusionFn.kst("1/2", "1/2")

    def test_k2_needs_complements(self, example_space):
        f = InclusionFn("K2")
        assert eval_rif(f, fs("a"), fs("b"), example_space) == F(4, 5)
        with pytest.raises(UnsupportedError):
            eval_rif(f, fs("a"), fs("b"))
        partial = build_set_hgos(("a", "b"), [{"a"}, {"a", "b"}], family=[set(), {"a"}, {"a", "b"}])
        with pytest.raises(UnsupportedError):
            eval_rif(f, fs("a"), fs("a"), partial)

    def test_custom_table(self):
        f = InclusionFn("custom", table={("x", "y"): F(1, 2)})
        assert f("x", "y") == F(1, 2)
        with pytest.raises(InputError):
            f("y", "x")

    def test_unknown_kind(self):
        with pytest.raises(InputError):
            InclusionFn("K9")

    def test_element_outside_space(self, example_space):
        with pytest.raises(InputError):
            eval_rif(K0, fs("az"), fs("a"), example_space)


class TestProfiles:
    """Axiom profiles on the five-point powerset."""

    def test_k0_is_rif(self, example_space):
        profile = check_rif_axioms(K0, example_space)
        assert profile["R1"]
        assert profile["R2"]
        assert profile["U1"]
        assert profile.classification == "RIF"
        assert profile.classes == ("RIF", "qRIF", "wqRIF")

    def test_k1_satisfies_r0(self, example_space):
        profile = check_rif_axioms(K1, example_space)
        assert profile["R0"]
        assert "qRIF" in profile.classes

    def test_kst_upper_one_is_quasi(self, example_space):
        profile = check_rif_axioms(InclusionFn.kst("1/4", "1"), example_space)
        assert profile["R0"]
        assert profile["R2"]
        assert "qRIF" in profile.classes

    @pytest.mark.parametrize("s, t", [(s, t) for s in EIGHTHS for t in EIGHTHS if s < t])
    def test_kst_is_weak_quasi(self, example_space, s, t):
        assert "wqRIF" in check_rif_axioms(InclusionFn.kst(s, t), example_space).classes

    @pytest.mark.parametrize("s", EIGHTHS)
    def test_kst_with_upper_one_is_quasi(self, example_space, s):
        assert "qRIF" in check_rif_axioms(InclusionFn.kst(s, 1), example_space).classes

    def test_constant_zero_fails_with_witness(self):
        space = build_set_hgos(("a", "b"), [{"a"}, {"b"}])
        table = {(x, y): F(0) for x in space.family for y in space.family}
        profile = check_rif_axioms(InclusionFn("custom", table=table), space)
        assert profile["U1"] is False
        assert profile.report["U1"].witness == (frozenset(),)
        assert profile.classification == "none"

    def test_without_bottom_skips_bottom_axioms(self):
        space = build_set_hgos(("a", "b"), [{"a"}, {"b"}])
        family = [x for x in space.family if x]

        class NoBottom:
            bottom = None
            top = space.top

            def elements(self):
                return family

            def __contains__(self, x):
                return x in family

            part = staticmethod(space.part)
            join = staticmethod(space.join)
            meet = staticmethod(space.meet)

        profile = check_rif_axioms(K0, NoBottom())
        assert profile["RB"] is None
        assert profile.report["R6"].status == NOT_APPLICABLE
        assert profile["R1"]

    def test_profile_dict(self, example_space):
        data = check_rif_axioms(K0, example_space).to_dict()
        assert data["classification"] == "RIF"
        assert len(data["results"]) == 11


class TestMeasures:
    """Accuracy, misclassification and variable precision approximations."""

    def test_accuracy(self, example_space):
        assert accuracy(example_space, example_space.top) == 1
        assert accuracy(example_space, fs("ab")) == F(1, 3)
        assert accuracy(example_space, fs("c")) == 0

    def test_misclassification(self, example_space):
        assert misclassification(fs("ab"), fs("a")) == F(1, 2)
        assert check_misclassification(example_space).holds

    def test_misclassification_needs_complements(self):
        partial = build_set_hgos(("a", "b"), [{"a"}, {"a", "b"}], family=[set(), {"a"}, {"a", "b"}])
        assert check_misclassification(partial).status == NOT_APPLICABLE

    def test_vprs_fixed(self, example_space):
        assert vprs_approx(example_space, fs("ab"), "1/2", "1/2", fixed=True) == (fs("a"), fs("a"))

    def test_vprs_plain(self, example_space):
        lower, upper = vprs_approx(example_space, fs("ab"), "1/4", "1/2")
        assert lower == fs("abe")
        assert upper == fs("abe")

    def test_vprs_empty_lower_fixed(self, example_space):
        assert vprs_approx(example_space, fs("c"), "1/4", "3/4", fixed=True) == (frozenset(), frozenset())

    def test_vprs_outputs_are_granule_unions(self, example_space):
        for x in example_space.family:
            for part in vprs_approx(example_space, x, "1/3", "2/3"):
                assert frozenset().union(*(g for g in example_space.granules if g <= part)) == part

    @pytest.mark.parametrize("alpha, beta", [("1/2", "1/4"), ("0", "1/2"), ("1/2", "1")])
    def test_vprs_parameter_order(self, example_space, alpha, beta):
        with pytest.raises(InputError):
            vprs_approx(example_space, fs("ab"), alpha, beta)


class TestParametric:
    """Pointwise, granular and tolerance approximations."""

    @pytest.fixture
    def xi(self, relation_space):
        return successor_neighborhoods(relation_space)

    def test_low_and_up(self, relation_space, xi):
        U = relation_space.universe
        assert parametric_approx(U, xi, K0, fs("abe"), "low") == fs("abf")
        assert parametric_approx(U, xi, K0, fs("abe"), "up") == fs("abcf")
        assert parametric_approx(U, xi, K0, frozenset(U), "low") == frozenset(U)
        assert parametric_approx(U, xi, K0, frozenset(), "up") == frozenset()

    def test_granular(self, relation_space, xi):
        U = relation_space.universe
        assert parametric_approx(U, xi, K0, fs("abe"), "glow") == (fs("a"), fs("abe"), fs("e"))

    def test_identity_tolerance_matches_pointwise(self, relation_space, xi):
        U = relation_space.universe
        identity = {(x, x) for x in U}
        assert parametric_approx(U, xi, K0, fs("abe"), "lowR", identity) == fs("abf")
        assert parametric_approx(U, xi, K0, fs("abe"), "lowRg", identity) == fs("abe")

    def test_tolerance_guard(self, relation_space, xi):
        U = relation_space.universe
        R = {(x, x) for x in U} | {("a", "c"), ("c", "a")}
        assert parametric_approx(U, xi, K0, fs("abe"), "lowR", R) == fs("bf")

    def test_tolerance_required(self, relation_space, xi):
        U = relation_space.universe
        with pytest.raises(InputError):
            parametric_approx(U, xi, K0, fs("abe"), "upR")
        with pytest.raises(InputError):
            parametric_approx(U, xi, K0, fs("abe"), "upR", {("a", "a")})

    def test_missing_neighborhood(self, relation_space):
        with pytest.raises(PreconditionError):
            parametric_approx(relation_space.universe, {"a": fs("a")}, K0, fs("a"), "low")
