"""Mereological predicates over finite parthood relations."""

import logging
from dataclasses import dataclass
from itertools import product
from typing import Any, Callable, FrozenSet, Hashable, Iterable, Sequence, Tuple

from .errors import InputError
from .report import CONFIRMED, NOT_APPLICABLE, REFUTED, CheckResult, Report
from .tables import CggsBundle, InformationTable
from .universe import powerset, validate_universe

logger = logging.getLogger(__name__)

OVERLAP_DEFINITION = "O(x) = {y : ∃z (P z x ∧ P z y)}"


@dataclass(frozen=True)
class ParthoodRelation:
    """A binary parthood predicate over a finite carrier; no axioms imposed."""
    carrier: Tuple[Hashable, ...]
    pairs: FrozenSet[Tuple[Hashable, Hashable]]

    def __post_init__(self):
        validate_universe(self.carrier)
        members = set(self.carrier)
        for a, b in self.pairs:
            if a not in members or b not in members:
                raise InputError(f"Parthood pair ({a!r}, {b!r}) leaves the carrier")
        parts = {a: frozenset(z for z in self.carrier if (z, a) in self.pairs) for a in self.carrier}
        wholes = {z: frozenset(y for y in self.carrier if (z, y) in self.pairs) for z in self.carrier}
        overlaps = {x: frozenset().union(*(wholes[z] for z in parts[x])) for x in self.carrier}
        object.__setattr__(self, "_parts", parts)
        object.__setattr__(self, "_overlaps", overlaps)

    @classmethod
    def reflexive_closure(cls, carrier: Sequence[Hashable], pairs: Iterable[Tuple[Hashable, Hashable]]):
        carrier = tuple(carrier)
        return cls(carrier, frozenset(pairs) | {(x, x) for x in carrier})

    def part(self, a, b) -> bool:
        return (a, b) in self.pairs

    def parts(self, a) -> FrozenSet:
        """P(a) = {z : P z a}."""
        self._require(a)
        return self._parts[a]

    def overlaps(self, x) -> FrozenSet:
        self._require(x)
        return self._overlaps[x]

    @property
    def reflexive(self) -> bool:
        return all((x, x) in self.pairs for x in self.carrier)

    @property
    def transitive(self) -> bool:
        return all((a, d) in self.pairs for a, b in self.pairs for c, d in self.pairs if b == c)

    def _require(self, x) -> None:
        if x not in self._parts:
            raise InputError(f"{x!r} is not in the carrier")


@dataclass(frozen=True)
class DiscernibilityMatrix:
    """Square matrix of families of space elements indexed by object pairs."""
    objects: Tuple[Hashable, ...]
    entries: Tuple[Tuple[Tuple[Any, ...], ...], ...]

    @property
    def order(self) -> int:
        return len(self.objects)

    def entry(self, a, b) -> Tuple[Any, ...]:
        return self.entries[self.objects.index(a)][self.objects.index(b)]


def _union_overlaps(p: ParthoodRelation, B: Iterable) -> FrozenSet:
    return frozenset().union(*(p.overlaps(x) for x in B))


def mereo_predicates(p: ParthoodRelation, a, B: Iterable, kind: str) -> bool:
    """
    Sum and fusion predicates.

    sum(a, B):    B ⊆ P(a) ⊆ ∪{O(x) : x ∈ B}
    fusion(a, B): O(a) = ∪{O(x) : x ∈ B}
    """
    B = frozenset(B)
    for x in B:
        p.parts(x)
    covered = _union_overlaps(p, B)
    if kind == "sum":
        parts = p.parts(a)
        return B <= parts and parts <= covered
    if kind == "fusion":
        return p.overlaps(a) == covered
    raise InputError(f"Unknown mereological predicate {kind!r}")


def bounds(p: ParthoodRelation, X: Iterable, kind: str) -> FrozenSet:
    """UB(X) = {a : ∀x ∈ X, P x a}; LB(X) dually."""
    X = frozenset(X)
    if kind == "upper":
        return frozenset(a for a in p.carrier if all(p.part(x, a) for x in X))
    if kind == "lower":
        return frozenset(a for a in p.carrier if all(p.part(a, x) for x in X))
    raise InputError(f"Unknown bound kind {kind!r}")


def _ssp_witness(p: ParthoodRelation):
    for a, b in product(p.carrier, repeat=2):
        if p.part(a, b):
            continue
        if not any(p.part(z, a) and not p.part(z, b) and not p.part(b, z) for z in p.carrier):
            return (a, b)
    return None


def check_separative_theorems(p: ParthoodRelation, powerset_limit: int = 12) -> Report:
    """
    Strong supplementation and the sum/fusion relationships.

    Every (a, B) with B ⊆ carrier is enumerated. The converse direction
    "fusion ⇒ sum" under transitivity and SSP is reported as a finding when
    refuted, since fusions need not be upper bounds.
    """
    report = Report("separative theorems")
    report.annotate(f"overlap: {OVERLAP_DEFINITION}")

    witness = _ssp_witness(p)
    report.add(CheckResult.of("SSP", witness is None, witness))
    ssp = witness is None

    subsets = powerset(p.carrier, powerset_limit)
    logger.info("Enumerating %d (a, B) pairs", len(subsets) * len(p.carrier))
    table = []
    for a, B in product(p.carrier, subsets):
        table.append((a, B, mereo_predicates(p, a, B, "sum"), mereo_predicates(p, a, B, "fusion")))

    def scan(name, applicable, premise, conclusion, finding=False):
        if not applicable:
            report.add(CheckResult(name, NOT_APPLICABLE))
            return
        for a, B, is_sum, is_fusion in table:
            if premise(a, B, is_sum, is_fusion) and not conclusion(a, B, is_sum, is_fusion):
                report.add(CheckResult(name, REFUTED, (a, B), finding=finding))
                return
        report.add(CheckResult(name, CONFIRMED))

    scan("upper-bound fusion ⇒ sum", p.reflexive,
         lambda a, B, s, f: f and B <= p.parts(a), lambda a, B, s, f: s)
    transitive_ssp = p.transitive and ssp
    scan("sum ⇒ fusion", transitive_ssp, lambda a, B, s, f: s, lambda a, B, s, f: f)
    scan("fusion ⇒ sum", transitive_ssp, lambda a, B, s, f: f, lambda a, B, s, f: s, finding=True)
    scan("binary fusion ⇒ binary sum", transitive_ssp,
         lambda a, B, s, f: f and len(B) == 2, lambda a, B, s, f: s, finding=True)
    return report


def p_ideal_check(p: ParthoodRelation, K: Iterable, kind: str = "ideal", powerset_limit: int = 12) -> bool:
    """
    Ideal: down-closed with U(a, b) ∩ K ≠ ∅ for all a, b ∈ K, where
    U(a, b) = {x : P a x ∧ P b x}. Principal: the intersection of all ideals
    containing some single element.
    """
    K = frozenset(K)
    if not K <= set(p.carrier):
        raise InputError("K is not a subset of the carrier")

    def is_ideal(candidate: FrozenSet) -> bool:
        for a in candidate:
            if not p.parts(a) <= candidate:
                return False
        for a, b in product(candidate, repeat=2):
            if not any(p.part(a, x) and p.part(b, x) for x in candidate):
                return False
        return True

    if kind == "ideal":
        return is_ideal(K)
    if kind != "principal":
        raise InputError(f"Unknown ideal kind {kind!r}")
    if not is_ideal(K):
        return False
    ideals = [I for I in powerset(p.carrier, powerset_limit) if is_ideal(I)]
    for a in p.carrier:
        containing = [I for I in ideals if a in I]
        if containing and frozenset.intersection(*containing) == K:
            return True
    return False


def attribute_discernibility(table: InformationTable) -> Callable[[Hashable, Hashable, Any], bool]:
    """Φ(a, b, x): some attribute in x takes different value sets on a and b."""
    def phi(a, b, x) -> bool:
        return any(table.value(attribute, a) != table.value(attribute, b) for attribute in x)
    return phi


def discernibility_matrix(bundle: CggsBundle, phi: Callable[[Hashable, Hashable, Any], bool],
                          minimize: bool = False) -> DiscernibilityMatrix:
    """
    δᵢⱼ = {x ∈ 𝕊 : Φ(aᵢ, aⱼ, x)}, optionally reduced to its P-minimal members.
    """
    space = bundle.space
    objects = bundle.table.objects
    elements = space.elements()
    rows = []
    for a in objects:
        row = []
        for b in objects:
            entry = () if a == b else tuple(x for x in elements if phi(a, b, x))
            if minimize:
                entry = tuple(x for x in entry
                              if not any(y != x and space.part(y, x) and not space.part(x, y) for y in entry))
            row.append(entry)
        rows.append(tuple(row))
    return DiscernibilityMatrix(tuple(objects), tuple(rows))
