"""Tests for norms, negations, residua and exact rationals."""

from fractions import Fraction as F

import pytest

from src.granular.errors import InputError, PreconditionError, UnsupportedError
from src.granular.rationals import format_rational, grid, parse_rational, ratio, to_unit
from src.inclusion.norms import (
    NormTriple,
    check_norm_axioms,
    derive_snorm,
    negation_check,
    norm_eval,
    residual_implication,
    residual_oracle,
    s_lukasiewicz,
    s_max,
    s_probabilistic,
    t_min,
)

QUARTERS = grid(4)
EIGHTHS = grid(8)


class TestRationals:
    """Wire format of exact values."""

    def test_parse(self):
        assert parse_rational("3/4") == F(3, 4)
        assert parse_rational(1) == 1

    def test_inexact_refused(self):
        with pytest.raises(InputError):
            parse_rational(0.5)
        with pytest.raises(InputError):
            parse_rational("1/0")

    def test_unit_interval(self):
        with pytest.raises(InputError):
            to_unit("3/2")

    def test_format(self):
        assert format_rational(F(2, 4)) == "1/2"
        assert format_rational(F(1)) == "1/1"

    def test_empty_ratio(self):
        assert ratio(0, 0) == 1
        assert ratio(0, 0, F(0)) == 0
        assert ratio(1, 3) == F(1, 3)

    def test_grid(self):
        assert grid(2) == (F(0), F(1, 2), F(1))
        with pytest.raises(InputError):
            grid(0)


class TestNormEval:
    """Folds and single evaluations."""

    def test_min_identity(self):
        nt = NormTriple("min")
        for a in QUARTERS:
            assert norm_eval(nt, "t", [1, a]) == a

    def test_lukasiewicz_pair(self):
        nt = NormTriple("lukasiewicz", "lukasiewicz")
        assert norm_eval(nt, "t", ["7/10", "1/2"]) == F(1, 5)
        assert norm_eval(nt, "s", ["7/10", "1/2"]) == 1

    def test_fold_over_three(self):
        assert norm_eval(NormTriple("product"), "t", ["1/2", "1/2", "1/2"]) == F(1, 8)

    def test_negation_and_residual(self):
        nt = NormTriple("lukasiewicz")
        assert norm_eval(nt, "n", ["1/4"]) == F(3, 4)
        assert norm_eval(nt, "residual", ["3/4", "1/2"]) == F(3, 4)

    def test_arity_and_range(self):
        nt = NormTriple()
        with pytest.raises(InputError):
            norm_eval(nt, "n", ["1/4", "1/2"])
        with pytest.raises(InputError):
            norm_eval(nt, "t", [])
        with pytest.raises(InputError):
            norm_eval(nt, "t", ["2"])
        with pytest.raises(InputError):
            norm_eval(nt, "x", ["1"])

    def test_unknown_names(self):
        with pytest.raises(InputError):
            NormTriple("drastic")
        with pytest.raises(InputError):
            NormTriple("min", "nilpotent")


class TestCustomTables:
    """Finite tables validated against the norm axioms."""

    def test_min_table_accepted(self):
        table = {(a, b): min(a, b) for a in QUARTERS for b in QUARTERS}
        nt = NormTriple("custom", tnorm_table=table)
        assert nt.t(F(1, 4), F(3, 4)) == F(1, 4)

    def test_non_commutative_table_rejected(self):
        half = F(1, 2)
        table = {(a, b): min(a, b) for a in grid(2) for b in grid(2)}
        table[(F(0), half)] = half
        with pytest.raises(PreconditionError):
            NormTriple("custom", tnorm_table=table)

    def test_missing_table(self):
        with pytest.raises(InputError):
            NormTriple("custom")

    def test_table_outside_domain(self):
        table = {(a, b): min(a, b) for a in grid(2) for b in grid(2)}
        nt = NormTriple("custom", tnorm_table=table)
        with pytest.raises(InputError):
            nt.t(F(1, 3), F(1))


class TestNegations:
    """Negation flags on grids."""

    def test_standard_is_strong(self):
        flags = negation_check(lambda a: 1 - a, grid(2))
        assert flags.is_negation
        assert flags.strong

    def test_boundary_failure(self):
        flags = negation_check({F(0): F(1), F(1, 2): F(1), F(1): F(1)}, grid(2))
        assert not flags.boundary
        assert not flags.is_negation

    def test_drastic_fails_weak(self):
        table = {F(0): F(1), F(1, 2): F(1), F(1): F(0)}
        flags = negation_check(table, grid(2))
        assert flags.boundary
        assert flags.anti_monotone
        assert not flags.weak
        assert flags.witnesses["weak"] == F(1, 2)
        assert not flags.is_negation


class TestDerivedSnorms:
    """De Morgan duals through the standard negation."""

    @pytest.mark.parametrize("tnorm, expected", [
        ("min", s_max),
        ("product", s_probabilistic),
        ("lukasiewicz", s_lukasiewicz),
    ])
    def test_dual(self, tnorm, expected):
        nt = derive_snorm(NormTriple(tnorm))
        assert nt.snorm == "derived"
        for a in QUARTERS:
            for b in QUARTERS:
                assert nt.s(a, b) == expected(a, b)

    def test_weak_custom_negation_refused(self):
        table = {F(0): F(1), F(1, 2): F(1), F(1): F(0)}
        with pytest.raises(PreconditionError):
            derive_snorm(NormTriple("min", "max", "custom", negation_table=table))

    def test_strong_but_increasing_negation_refused(self):
        swap = {F(0): F(1, 2), F(1, 2): F(0), F(1): F(1)}
        nt = NormTriple("min", "max", "custom", negation_table=swap)
        assert negation_check(swap, sorted(swap)).strong
        with pytest.raises(PreconditionError, match="boundary"):
            derive_snorm(nt)

    def test_custom_grid(self):
        nt = derive_snorm(NormTriple("product"), grid=QUARTERS)
        assert nt.s(F(1, 2), F(1, 2)) == F(3, 4)


class TestResiduum:
    """Closed forms against the grid supremum."""

    def test_below_is_one(self):
        for tnorm in ("min", "product", "lukasiewicz"):
            assert residual_implication(tnorm, F(1, 4), F(1, 2)) == 1

    def test_lukasiewicz(self):
        assert residual_implication("lukasiewicz", F(3, 4), F(1, 2)) == F(3, 4)

    def test_min(self):
        assert residual_implication("min", F(1), F(1, 3)) == F(1, 3)

    @pytest.mark.parametrize("tnorm", ["min", "product", "lukasiewicz"])
    def test_closed_form_matches_grid(self, tnorm):
        nt = NormTriple(tnorm)
        for a in EIGHTHS:
            for b in EIGHTHS:
                closed = residual_implication(tnorm, a, b)
                if closed in EIGHTHS:
                    assert residual_oracle(nt, a, b, EIGHTHS) == closed

    def test_custom_has_no_closed_form(self):
        with pytest.raises(UnsupportedError):
            residual_implication("custom", F(1), F(0))


class TestNormAxioms:
    """Axiom reports for operations."""

    def test_builtins_pass(self):
        assert check_norm_axioms(t_min, QUARTERS, "t").passed
        assert check_norm_axioms(s_max, QUARTERS, "s").passed

    def test_average_is_not_a_tnorm(self):
        report = check_norm_axioms(lambda a, b: (a + b) / 2, QUARTERS, "t")
        assert not report["boundary"].holds
        assert not report["associativity"].holds

    def test_unknown_kind(self):
        with pytest.raises(InputError):
            check_norm_axioms(t_min, QUARTERS, "u")
