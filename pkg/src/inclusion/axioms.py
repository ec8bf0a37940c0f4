"""
Vectorised rough inclusion axioms.

κ maps are integer arrays of shape (N, m, m) scaled so that the value 1 is
`scale`. Each axiom reduces to a boolean array of shape (N,) telling which
of the N maps satisfy it on a fixed finite order.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import lcm
from typing import Callable, Dict, Hashable, List, Optional, Sequence, Tuple

import numpy as np

from ..granular.report import CONFIRMED, FAILS, HOLDS, REFUTED, CheckResult, Report

logger = logging.getLogger(__name__)

AXIOMS = ("U1", "R0", "IR0", "R1", "R2", "R3", "RB", "R4", "IR4", "R5", "R6")
BOTTOM_AXIOMS = ("RB", "R4", "IR4", "R5", "R6")
CUBIC_AXIOMS = ("R2", "R3", "R6")

# Largest scale kept in int64; the sum in R6 must not overflow.
_INT_SCALE_LIMIT = 2 ** 61


@dataclass
class RifDomain:
    """A finite order with the derived tables the axioms quantify over."""
    labels: Tuple[Hashable, ...]
    part: np.ndarray          # part[a, b]: a is a part of b
    meet_is_bottom: np.ndarray  # a ∧ b defined and equal to ⊥
    complements: np.ndarray   # b ∨ c = ⊤ and b ∧ c = ⊥
    bottom: Optional[int]
    top: Optional[int]
    lattice: bool = False
    distributive: bool = False
    complemented: bool = False

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def proper_bottom(self) -> np.ndarray:
        """⊥ is a proper part of a."""
        mask = np.zeros(self.size, dtype=bool)
        if self.bottom is not None:
            mask = self.part[self.bottom].copy()
            mask[self.bottom] = False
        return mask

    @classmethod
    def from_order(cls, labels: Sequence[Hashable], le: np.ndarray) -> "RifDomain":
        """Domain of a reflexive antisymmetric relation; meets and joins are bounds when they exist."""
        m = len(labels)
        le = np.asarray(le, dtype=bool)

        def bound(a, b, lower):
            if lower:
                candidates = [z for z in range(m) if le[z, a] and le[z, b]]
                best = [g for g in candidates if all(le[z, g] for z in candidates)]
            else:
                candidates = [z for z in range(m) if le[a, z] and le[b, z]]
                best = [g for g in candidates if all(le[g, z] for z in candidates)]
            return best[0] if len(best) == 1 else None

        meets = {(a, b): bound(a, b, True) for a, b in product(range(m), repeat=2)}
        joins = {(a, b): bound(a, b, False) for a, b in product(range(m), repeat=2)}
        bottom = next((z for z in range(m) if le[z].all()), None)
        top = next((z for z in range(m) if le[:, z].all()), None)
        domain = cls._assemble(tuple(labels), le, meets.get, joins.get, bottom, top)

        transitive = all(le[a, c] for a, b, c in product(range(m), repeat=3) if le[a, b] and le[b, c])
        domain.lattice = transitive and all(v is not None for v in meets.values()) and all(
            v is not None for v in joins.values())
        if domain.lattice:
            domain.distributive = all(
                meets[(a, joins[(b, c)])] == joins[(meets[(a, b)], meets[(a, c)])]
                for a, b, c in product(range(m), repeat=3))
            domain.complemented = bool(domain.complements.any(axis=1).all())
        return domain

    @classmethod
    def from_space(cls, space) -> "RifDomain":
        """Domain of a granular space with its own (possibly partial) operations."""
        elements = tuple(space.elements())
        index = {x: i for i, x in enumerate(elements)}
        m = len(elements)
        le = np.zeros((m, m), dtype=bool)
        for (i, a), (j, b) in product(enumerate(elements), repeat=2):
            le[i, j] = space.part(a, b)

        def lookup(op):
            def at(i, j):
                value = op(elements[i], elements[j])
                return index.get(value) if value is not None else None
            return lambda key: at(*key)

        bottom = index.get(space.bottom)
        top = index.get(space.top)
        domain = cls._assemble(elements, le, lookup(space.meet), lookup(space.join), bottom, top)
        domain.complemented = bool(domain.complements.any(axis=1).all())
        return domain

    @classmethod
    def _assemble(cls, labels, le, meet: Callable, join: Callable, bottom, top) -> "RifDomain":
        m = len(labels)
        mib = np.zeros((m, m), dtype=bool)
        comp = np.zeros((m, m), dtype=bool)
        if bottom is not None:
            for a, b in product(range(m), repeat=2):
                mib[a, b] = meet((a, b)) == bottom
                if top is not None:
                    comp[a, b] = mib[a, b] and join((a, b)) == top
        return cls(labels, le, mib, comp, bottom, top)


def all_kappas(m: int, levels: int = 3) -> np.ndarray:
    """Every map {0..m-1}² → {0..levels-1}, shape (levels^(m²), m, m)."""
    grid = np.array(list(product(range(levels), repeat=m * m)), dtype=np.int64)
    return grid.reshape(-1, m, m)


def all_orders(m: int) -> List[np.ndarray]:
    """Every reflexive antisymmetric relation on m points."""
    pairs = [(a, b) for a in range(m) for b in range(a + 1, m)]
    orders = []
    for states in product(range(3), repeat=len(pairs)):
        le = np.eye(m, dtype=bool)
        for (a, b), state in zip(pairs, states):
            if state == 1:
                le[a, b] = True
            elif state == 2:
                le[b, a] = True
        orders.append(le)
    return orders


def scale_values(values: np.ndarray) -> Tuple[np.ndarray, int]:
    """Turn an array of Fractions into integers over a common denominator."""
    flat = values.ravel()
    scale = 1
    for value in flat:
        scale = lcm(scale, Fraction(value).denominator)
    dtype = np.int64 if scale < _INT_SCALE_LIMIT else object
    scaled = np.array([int(Fraction(v) * scale) for v in flat], dtype=dtype).reshape(values.shape)
    return scaled, scale


def _gt(K: np.ndarray, a: int) -> np.ndarray:
    """gt[n, b, c] = K[n, a, b] > K[n, a, c]."""
    row = K[:, a, :]
    return row[:, :, None] > row[:, None, :]


def _cubic_slices(d: RifDomain, K: np.ndarray, axiom: str, scale: int):
    one = K == scale
    proper = d.proper_bottom
    for a in range(d.size):
        if axiom == "R2":
            yield a, one & _gt(K, a)
        elif axiom == "R3":
            yield a, d.part[None, :, :] & _gt(K, a)
        else:
            if not proper[a]:
                continue
            row = K[:, a, :]
            total = row[:, :, None] + row[:, None, :]
            yield a, d.complements[None, :, :] & (total != scale)


def violations(d: RifDomain, K: np.ndarray, axiom: str, scale: int) -> np.ndarray:
    """Violation mask of shape (N,) + index for the unary and binary axioms."""
    one = K == scale
    zero = K == 0
    proper = d.proper_bottom
    if axiom == "U1":
        return ~np.diagonal(one, axis1=1, axis2=2)
    if axiom == "R0":
        return d.part[None] & ~one
    if axiom == "IR0":
        return one & ~d.part[None]
    if axiom == "R1":
        return one != d.part[None]
    if axiom == "RB":
        if d.bottom is None:
            return np.zeros((K.shape[0], d.size), dtype=bool)
        return proper[None] & (K[:, :, d.bottom] != 0)
    if axiom == "R4":
        return zero & ~d.meet_is_bottom[None]
    if axiom == "IR4":
        return (d.meet_is_bottom & proper[:, None])[None] & ~zero
    if axiom == "R5":
        return proper[None, :, None] & (zero != d.meet_is_bottom[None])
    raise ValueError(f"{axiom} is not a pointwise axiom")


def evaluate(d: RifDomain, K: np.ndarray, scale: int, axioms: Sequence[str] = AXIOMS) -> Dict[str, np.ndarray]:
    """Which maps satisfy each axiom."""
    results = {}
    n = K.shape[0]
    for axiom in axioms:
        if axiom in CUBIC_AXIOMS:
            bad = np.zeros(n, dtype=bool)
            for _, mask in _cubic_slices(d, K, axiom, scale):
                bad |= mask.reshape(n, -1).any(axis=1)
            results[axiom] = ~bad
        else:
            results[axiom] = ~violations(d, K, axiom, scale).reshape(n, -1).any(axis=1)
    return results


def first_witness(d: RifDomain, K: np.ndarray, axiom: str, scale: int, n: int = 0):
    """Labels of the first violating index for map n, or None."""
    if axiom in CUBIC_AXIOMS:
        for a, mask in _cubic_slices(d, K[n:n + 1], axiom, scale):
            hits = np.argwhere(mask[0])
            if len(hits):
                b, c = hits[0]
                return (d.labels[a], d.labels[b], d.labels[c])
        return None
    hits = np.argwhere(violations(d, K[n:n + 1], axiom, scale)[0])
    if not len(hits):
        return None
    return tuple(d.labels[i] for i in np.atleast_1d(hits[0]))


# --- implication oracle ------------------------------------------------------

@dataclass(frozen=True)
class PrifStatement:
    """guard ⇒ (lhs ⇒ rhs), or guard ⇒ (lhs ⇔ rhs) when `iff` is set."""
    name: str
    guard: Tuple[str, ...]
    lhs: Tuple[str, ...]
    rhs: Tuple[str, ...]
    iff: bool = False
    scope: str = "all"
    droppable: Tuple[str, ...] = ()

    def dropping(self, premise: str) -> "PrifStatement":
        if premise == "complemented":
            return PrifStatement(self.name, self.guard, self.lhs, self.rhs, self.iff, "bottom")
        return PrifStatement(
            self.name,
            tuple(p for p in self.guard if p != premise),
            tuple(p for p in self.lhs if p != premise),
            tuple(p for p in self.rhs if p != premise),
            self.iff,
            self.scope,
        )

    def holds(self, flags: Dict[str, np.ndarray], n: int) -> np.ndarray:
        def conj(names):
            result = np.ones(n, dtype=bool)
            for name in names:
                result &= flags[name]
            return result

        guard, lhs, rhs = conj(self.guard), conj(self.lhs), conj(self.rhs)
        body = (lhs == rhs) if self.iff else (~lhs | rhs)
        return ~guard | body


PRIF_STATEMENTS = (
    PrifStatement("prif1", ("R1",), ("R2",), ("R3",), iff=True, droppable=("R1",)),
    PrifStatement("prif2", (), ("R1",), ("R0", "IR0"), iff=True, droppable=("R0", "IR0")),
    PrifStatement("prif3", (), ("R0", "R2"), ("R3",), droppable=("R0", "R2")),
    PrifStatement("prif4", (), ("IR0", "R3"), ("R2",), droppable=("IR0", "R3")),
    PrifStatement("prif5", (), ("IR4",), ("RB",), scope="bottom", droppable=("IR4",)),
    PrifStatement("prif6", (), ("IR4", "R4"), ("R5",), iff=True, scope="bottom", droppable=("IR4", "R4")),
    PrifStatement("prif7", (), ("R0", "R6"), ("IR4",), scope="complemented",
                  droppable=("R0", "R6", "complemented")),
    PrifStatement("prif8", (), ("IR0", "R6"), ("R4",), scope="complemented",
                  droppable=("IR0", "R6", "complemented")),
    PrifStatement("prif9", (), ("R1", "R6"), ("R5",), scope="complemented",
                  droppable=("R1", "R6", "complemented")),
    PrifStatement("R1 ⇒ U1", (), ("R1",), ("U1",), droppable=("R1",)),
    PrifStatement("R0 ⇒ U1", (), ("R0",), ("U1",), droppable=("R0",)),
)


def _in_scope(d: RifDomain, scope: str) -> bool:
    if scope == "all":
        return True
    if scope == "bottom":
        return d.bottom is not None
    return d.lattice and d.distributive and d.complemented


def oracle_domains(max_points: int = 3) -> List[RifDomain]:
    """Every reflexive antisymmetric order on 1..max_points points."""
    domains = []
    for m in range(1, max_points + 1):
        labels = tuple(f"p{i}" for i in range(m))
        domains.extend(RifDomain.from_order(labels, le) for le in all_orders(m))
    return domains


def _describe(d: RifDomain, K: np.ndarray, n: int, scale: int) -> Dict:
    order = [(d.labels[a], d.labels[b]) for a, b in np.argwhere(d.part) if a != b]
    kappa = [[Fraction(int(v), scale) for v in row] for row in K[n]]
    return {"order": order, "kappa": kappa}


def prif_oracle(max_points: int = 3, levels: int = 3) -> Report:
    """
    Exhaustively test the implications between the inclusion axioms.

    κ ranges over every map into {0, 1/2, 1} (for levels=3) on every
    reflexive antisymmetric order of at most `max_points` points. Each
    statement is also re-run with one premise dropped; those rows hold when
    a counterexample shows the premise is needed.
    """
    scale = levels - 1
    report = Report("rif implication oracle")
    domains = oracle_domains(max_points)
    kappas = {m: all_kappas(m, levels) for m in range(1, max_points + 1)}
    logger.info("Oracle over %d orders, %d maps on the largest", len(domains), len(kappas[max_points]))

    flags = []
    for d in domains:
        K = kappas[d.size]
        flags.append((d, K, evaluate(d, K, scale)))

    def search(statement: PrifStatement):
        for d, K, f in flags:
            if not _in_scope(d, statement.scope):
                continue
            ok = statement.holds(f, K.shape[0])
            bad = np.flatnonzero(~ok)
            if len(bad):
                return _describe(d, K, int(bad[0]), scale)
        return None

    for statement in PRIF_STATEMENTS:
        witness = search(statement)
        report.add(CheckResult(statement.name, CONFIRMED if witness is None else REFUTED, witness,
                               note=f"scope: {statement.scope}"))
        for premise in statement.droppable:
            witness = search(statement.dropping(premise))
            report.add(CheckResult(f"{statement.name} without {premise}",
                                   HOLDS if witness is not None else FAILS, witness,
                                   note="counterexample shows the premise is needed"))
    return report
