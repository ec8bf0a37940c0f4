"""Information tables, relations, covers and valuation algebras."""

import logging
from dataclasses import dataclass
from itertools import product
from typing import Any, Dict, FrozenSet, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple

from .errors import InputError
from .rationals import ratio
from .report import CheckResult, Report, omega_equal
from .universe import Element, Subset, validate_universe

logger = logging.getLogger(__name__)

ValueSet = FrozenSet[str]


@dataclass(frozen=True)
class InformationTable:
    """Objects described by multi-valued attributes: ν(attribute, object) is a set."""
    objects: Tuple[Element, ...]
    attributes: Tuple[str, ...]
    values: Mapping[Tuple[str, Element], ValueSet]

    def __post_init__(self):
        validate_universe(self.objects)
        validate_universe(self.attributes)
        for attribute, obj in product(self.attributes, self.objects):
            if (attribute, obj) not in self.values:
                raise InputError(f"Missing cell ({attribute!r}, {obj!r})")

    def value(self, attribute: str, obj: Element) -> ValueSet:
        """ν(attribute, object); raises InputError for unknown names."""
        try:
            return self.values[(attribute, obj)]
        except KeyError:
            raise InputError(f"Unknown cell ({attribute!r}, {obj!r})") from None

    @classmethod
    def from_rows(cls, rows: Mapping[Element, Mapping[str, Iterable[str]]],
                  attributes: Optional[Sequence[str]] = None) -> "InformationTable":
        """Build from {object: {attribute: tokens}}; strings are single tokens."""
        objects = tuple(rows)
        if attributes is None:
            seen: List[str] = []
            for row in rows.values():
                seen.extend(a for a in row if a not in seen)
            attributes = seen
        values = {}
        for obj, row in rows.items():
            for attribute in attributes:
                cell = row.get(attribute, ())
                if isinstance(cell, str):
                    cell = (cell,) if cell else ()
                values[(attribute, obj)] = frozenset(cell)
        return cls(objects, tuple(attributes), values)


@dataclass(frozen=True)
class BinaryRelationSpace:
    """A finite universe with a binary relation on it."""
    universe: Tuple[Element, ...]
    relation: FrozenSet[Tuple[Element, Element]]

    def __post_init__(self):
        validate_universe(self.universe)
        members = set(self.universe)
        for x, y in self.relation:
            if x not in members or y not in members:
                raise InputError(f"Relation pair ({x!r}, {y!r}) leaves the universe")

    def related(self, x: Element, y: Element) -> bool:
        return (x, y) in self.relation


@dataclass(frozen=True)
class CoverSpace:
    """A finite universe with a family of blocks (not necessarily covering)."""
    universe: Tuple[Element, ...]
    blocks: Tuple[Subset, ...]

    def __post_init__(self):
        validate_universe(self.universe)
        members = set(self.universe)
        for block in self.blocks:
            if not block <= members:
                raise InputError(f"Block {sorted(block, key=str)} leaves the universe")

    def containing(self, x: Element) -> List[Subset]:
        return [block for block in self.blocks if x in block]

    @property
    def proper(self) -> bool:
        """The blocks cover the universe."""
        return frozenset().union(*self.blocks) == frozenset(self.universe)


@dataclass(frozen=True)
class CoverAnswer:
    """Result of a neighborhood query: a subset, or a family for MD."""
    value: Any
    uncovered: bool = False


@dataclass(frozen=True)
class ValuationAlgebra:
    """Carrier of attribute values with partial ∩, ∪, total ∼ and constants 0, 1."""
    carrier: Tuple[Hashable, ...]
    meet: Mapping[Tuple[Hashable, Hashable], Hashable]
    join: Mapping[Tuple[Hashable, Hashable], Hashable]
    neg: Mapping[Hashable, Hashable]
    zero: Hashable
    one: Hashable

    def __post_init__(self):
        validate_universe(self.carrier)
        for constant in (self.zero, self.one):
            if constant not in self.carrier:
                raise InputError(f"Constant {constant!r} is not in the carrier")
        missing = [a for a in self.carrier if a not in self.neg]
        if missing:
            raise InputError(f"Negation undefined on {missing!r}")

    def m(self, a, b):
        if a is None or b is None:
            return None
        return self.meet.get((a, b))

    def j(self, a, b):
        if a is None or b is None:
            return None
        return self.join.get((a, b))

    def n(self, a):
        if a is None:
            return None
        return self.neg.get(a)

    @classmethod
    def boolean(cls) -> "ValuationAlgebra":
        """The two-element Boolean algebra {0, 1}."""
        carrier = ("0", "1")
        meet = {(a, b): str(min(int(a), int(b))) for a, b in product(carrier, repeat=2)}
        join = {(a, b): str(max(int(a), int(b))) for a, b in product(carrier, repeat=2)}
        return cls(carrier, meet, join, {"0": "1", "1": "0"}, "0", "1")


@dataclass(frozen=True)
class CggsBundle:
    """Objects of a table related through ξ to elements of a granular space."""
    table: InformationTable
    space: Any
    xi: FrozenSet[Tuple[Element, Any]]
    valg: Optional[ValuationAlgebra] = None

    def __post_init__(self):
        objects = set(self.table.objects)
        elements = set(self.space.elements())
        for obj, element in self.xi:
            if obj not in objects or element not in elements:
                raise InputError(f"ξ pair ({obj!r}, {element!r}) is not objects × space")

    def related(self, obj: Element) -> List[Any]:
        return [element for o, element in self.xi if o == obj]


def equivalence_from_table(table: InformationTable, attrs: Sequence[str]) -> Tuple[Subset, ...]:
    """
    Partition objects by equality of their value sets on `attrs`.

    Args:
        table: Information table
        attrs: Attribute names, at least one

    Returns:
        Equivalence classes in order of first appearance
    """
    if not attrs:
        raise InputError("No attributes to partition by")
    unknown = [a for a in attrs if a not in table.attributes]
    if unknown:
        raise InputError(f"Unknown attributes {unknown!r}")

    classes: Dict[Tuple[ValueSet, ...], List[Element]] = {}
    for obj in table.objects:
        signature = tuple(table.value(a, obj) for a in attrs)
        classes.setdefault(signature, []).append(obj)
    return tuple(frozenset(members) for members in classes.values())


def equivalence_relation(table: InformationTable, attrs: Sequence[str]) -> BinaryRelationSpace:
    """σ = {(x, w) : ν(a, x) = ν(a, w) for every a in attrs} over the objects."""
    pairs = frozenset((x, w) for block in equivalence_from_table(table, attrs) for x in block for w in block)
    return BinaryRelationSpace(table.objects, pairs)


def is_deterministic(table: InformationTable, attribute: Optional[str] = None) -> bool:
    """True when every considered cell holds exactly one value."""
    attributes = [attribute] if attribute else table.attributes
    return all(len(table.value(a, obj)) == 1 for a in attributes for obj in table.objects)


def successor_neighborhoods(r: BinaryRelationSpace) -> Dict[Element, Subset]:
    """
    Neighborhood of every point: n(x) = {y : (y, x) ∈ R}.

    Points with an empty neighborhood are logged; they contribute the empty
    granule.
    """
    result = {x: frozenset(y for y in r.universe if (y, x) in r.relation) for x in r.universe}
    empty = [x for x, n in result.items() if not n]
    if empty:
        logger.debug("Empty neighborhoods at %s", empty)
    return result


def granules_from_relation(r: BinaryRelationSpace) -> Tuple[Subset, ...]:
    """Distinct neighborhoods in order of the points that generate them."""
    granules: List[Subset] = []
    for neighborhood in successor_neighborhoods(r).values():
        if neighborhood not in granules:
            granules.append(neighborhood)
    return tuple(granules)


def neighborhood_cover_flag(r: BinaryRelationSpace) -> bool:
    """The neighborhoods cover the universe: every point lies in some n(y)."""
    covered = frozenset().union(*successor_neighborhoods(r).values())
    return covered == frozenset(r.universe)


def cover_query(c: CoverSpace, x: Element, kind: str) -> CoverAnswer:
    """
    Cover-derived neighborhoods of a point.

    Args:
        c: Cover space
        x: Point of the universe
        kind: "nbd" (intersection of blocks containing x), "md" (maximal
            blocks containing x) or "fr" (union of blocks containing x)

    Returns:
        CoverAnswer; `uncovered` is set when no block contains x
    """
    if x not in c.universe:
        raise InputError(f"{x!r} is not in the universe")
    containing = c.containing(x)
    uncovered = not containing
    if uncovered:
        logger.warning("Point %r is not covered by any block", x)

    if kind == "nbd":
        if uncovered:
            return CoverAnswer(frozenset(c.universe), True)
        return CoverAnswer(frozenset.intersection(*containing), False)
    if kind == "md":
        maximal = [k for k in containing if not any(k < other for other in containing)]
        return CoverAnswer(tuple(dict.fromkeys(maximal)), uncovered)
    if kind == "fr":
        return CoverAnswer(frozenset().union(*containing), uncovered)
    raise InputError(f"Unknown cover query kind {kind!r}")


def cover_reduct(c: CoverSpace) -> CoverSpace:
    """Drop every block K with K ∉ MD(x) for all x ∈ K."""
    kept: List[Subset] = []
    for block in dict.fromkeys(c.blocks):
        if any(block in cover_query(c, x, "md").value for x in block):
            kept.append(block)
        else:
            logger.debug("Block %s is reducible", sorted(block, key=str))
    return CoverSpace(c.universe, tuple(kept))


def rough_membership(partition: Iterable[Subset], target: Subset, x: Element) -> Any:
    """#([x] ∩ X) / #([x]) for the class [x] of a partition."""
    for block in partition:
        if x in block:
            return ratio(len(block & target), len(block))
    raise InputError(f"{x!r} belongs to no class")


def check_valuation_algebra(v: ValuationAlgebra) -> Report:
    """
    Check WA, WD, WC, WAb, Bo, WCp and WNeg as ω-equalities.

    Bo is evaluated in its stated orientation (a∩0 = a, a∪0 = 0) and in the
    conventional one; the stated form failing while the conventional one holds
    is reported as a finding.
    """
    m, j, n = v.m, v.j, v.n
    zero, one = v.zero, v.one
    carrier = v.carrier
    report = Report("valuation algebra")

    def first_triple(predicate):
        for a, b, c in product(carrier, repeat=3):
            if not predicate(a, b, c):
                return (a, b, c)
        return None

    def first_pair(predicate):
        for a, b in product(carrier, repeat=2):
            if not predicate(a, b):
                return (a, b)
        return None

    def first_single(predicate):
        for a in carrier:
            if not predicate(a):
                return a
        return None

    checks = {
        "WA": lambda: first_triple(lambda a, b, c: omega_equal(m(m(a, b), c), m(a, m(b, c)))
                                   and omega_equal(j(j(a, b), c), j(a, j(b, c)))),
        "WD": lambda: first_triple(lambda a, b, c: omega_equal(m(a, j(b, c)), j(m(a, b), m(a, c)))
                                   and omega_equal(j(a, m(b, c)), m(j(a, b), j(a, c)))),
        "WC": lambda: first_pair(lambda a, b: omega_equal(m(a, b), m(b, a))
                                 and omega_equal(j(a, b), j(b, a))),
        "WAb": lambda: first_pair(lambda a, b: omega_equal(j(m(a, b), a), a)
                                  and omega_equal(m(j(a, b), a), a)),
        "Bo": lambda: first_single(lambda a: m(a, zero) == a and j(a, zero) == zero
                                   and m(a, one) == a and j(a, one) == one),
        "Bo (conventional)": lambda: first_single(lambda a: m(a, zero) == zero and j(a, zero) == a
                                                  and m(a, one) == a and j(a, one) == one),
        "WCp": lambda: first_single(lambda a: omega_equal(m(a, n(a)), zero)
                                    and omega_equal(j(a, n(a)), one)),
        "WNeg": lambda: first_single(lambda a: omega_equal(n(n(n(a))), n(a))),
    }
    for name, search in checks.items():
        witness = search()
        report.add(CheckResult.of(name, witness is None, witness))

    stated, conventional = report["Bo"], report["Bo (conventional)"]
    if not stated.holds and conventional.holds:
        stated.finding = True
        stated.note = "stated orientation a∩0 = a, a∪0 = 0; the conventional law holds"
        report.annotate("Bo is evaluated as stated; its conventional orientation holds")
    return report
