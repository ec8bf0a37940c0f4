"""Tests for the vectorised inclusion axioms and the implication oracle."""

from fractions import Fraction as F

import numpy as np
import pytest

from src.granular.report import CONFIRMED, HOLDS
from src.inclusion.axioms import (
    PRIF_STATEMENTS,
    RifDomain,
    all_kappas,
    all_orders,
    evaluate,
    first_witness,
    oracle_domains,
    prif_oracle,
    scale_values,
)


@pytest.fixture(scope="module")
def oracle():
    return prif_oracle()


def chain(m):
    le = np.array([[a <= b for b in range(m)] for a in range(m)])
    return RifDomain.from_order(tuple(f"p{i}" for i in range(m)), le)


class TestDomains:
    """Orders and their derived tables."""

    def test_order_counts(self):
        assert len(all_orders(1)) == 1
        assert len(all_orders(2)) == 3
        assert len(all_orders(3)) == 27
        assert len(oracle_domains(2)) == 4

    def test_kappa_counts(self):
        assert all_kappas(2).shape == (81, 2, 2)
        assert all_kappas(1, levels=2).shape == (2, 1, 1)

    def test_two_chain_is_boolean(self):
        d = chain(2)
        assert d.bottom == 0 and d.top == 1
        assert d.lattice and d.distributive and d.complemented
        assert d.proper_bottom.tolist() == [False, True]

    def test_three_chain_not_complemented(self):
        d = chain(3)
        assert d.lattice and d.distributive
        assert not d.complemented

    def test_antichain_has_no_bottom(self):
        d = RifDomain.from_order(("x", "y"), np.eye(2, dtype=bool))
        assert d.bottom is None
        assert not d.lattice

    def test_scale_values(self):
        values = np.array([[F(1, 2), F(1, 3)], [F(1), F(0)]], dtype=object)
        scaled, scale = scale_values(values)
        assert scale == 6
        assert scaled.tolist() == [[3, 2], [6, 0]]


class TestEvaluate:
    """Axioms on explicit maps over the two-chain."""

    def test_order_indicator_satisfies_everything(self):
        d = chain(2)
        K = d.part.astype(np.int64)[None]
        holds = evaluate(d, K, 1)
        assert all(bool(flags[0]) for flags in holds.values())

    def test_constant_one_breaks_ir0(self):
        d = chain(2)
        K = np.ones((1, 2, 2), dtype=np.int64)
        holds = evaluate(d, K, 1)
        assert holds["R0"][0]
        assert not holds["IR0"][0]
        assert first_witness(d, K, "IR0", 1) == ("p1", "p0")

    def test_cubic_witness(self):
        d = chain(2)
        K = np.array([[[2, 0], [1, 2]]], dtype=np.int64)
        holds = evaluate(d, K, 2)
        assert not holds["R3"][0]
        assert first_witness(d, K, "R3", 2) == ("p0", "p0", "p1")


class TestOracle:
    """Implications between the inclusion axioms."""

    @pytest.mark.parametrize("name", [s.name for s in PRIF_STATEMENTS])
    def test_statement_confirmed(self, oracle, name):
        assert oracle[name].status == CONFIRMED

    def test_definitional_equivalence(self, oracle):
        assert oracle["prif2"].witness is None

    def test_dropped_premise_has_counterexample(self, oracle):
        row = oracle["prif3 without R0"]
        assert row.status == HOLDS
        assert set(row.witness) == {"order", "kappa"}

    def test_every_statement_has_drop_rows(self, oracle):
        for statement in PRIF_STATEMENTS:
            for premise in statement.droppable:
                assert f"{statement.name} without {premise}" in oracle
