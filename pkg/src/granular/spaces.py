"""Granular operator spaces: set HGOS, abstract GGS, rough objects and morphisms."""

import logging
from dataclasses import dataclass
from enum import Enum
from itertools import product
from typing import Any, Dict, FrozenSet, Hashable, Iterable, List, Mapping, NamedTuple, Optional, Sequence, Tuple, Union

from .errors import InputError, PreconditionError, UnsupportedError
from .report import FAILS, HOLDS, VACUOUS, CheckResult, Report, omega_equal
from .universe import Element, Subset, powerset, validate_universe

logger = logging.getLogger(__name__)

DEFAULT_POWERSET_LIMIT = 12


class SetHgos:
    """
    Set based high granular operator space.

    Elements are subsets of a finite universe drawn from `family`; parthood
    and order are both inclusion, ⊥ = ∅ and ⊤ = the universe.
    """

    def __init__(self, universe: Sequence[Element], granulation: Sequence[Subset], family: Sequence[Subset]):
        self.universe = tuple(universe)
        self.granulation = tuple(granulation)
        self.family = tuple(family)
        self.bottom: Subset = frozenset()
        self.top: Subset = frozenset(self.universe)
        self._members = frozenset(self.family)
        self._lower: Dict[Subset, Subset] = {}
        self._upper: Dict[Subset, Subset] = {}

    def __contains__(self, x) -> bool:
        return x in self._members

    def __repr__(self) -> str:
        return f"SetHgos(universe={self.universe!r}, granules={len(self.granulation)}, family={len(self.family)})"

    def elements(self) -> Tuple[Subset, ...]:
        return self.family

    @property
    def granules(self) -> Tuple[Subset, ...]:
        return self.granulation

    @property
    def is_powerset(self) -> bool:
        return len(self.family) == 1 << len(self.universe)

    def lower(self, x: Subset) -> Subset:
        """Union of the granules included in x."""
        result = self._lower.get(x)
        if result is None:
            result = frozenset().union(*(g for g in self.granulation if g <= x))
            self._lower[x] = result
        return result

    def upper(self, x: Subset) -> Subset:
        """Union of the granules meeting x."""
        result = self._upper.get(x)
        if result is None:
            result = frozenset().union(*(g for g in self.granulation if g & x))
            self._upper[x] = result
        return result

    def part(self, a: Subset, b: Subset) -> bool:
        return a <= b

    leq = part

    def join(self, a: Subset, b: Subset) -> Optional[Subset]:
        result = a | b
        return result if result in self._members else None

    def meet(self, a: Subset, b: Subset) -> Optional[Subset]:
        result = a & b
        return result if result in self._members else None

    def complement(self, a: Subset) -> Optional[Subset]:
        result = self.top - a
        return result if result in self._members else None

    @property
    def complement_closed(self) -> bool:
        return all(self.complement(x) is not None for x in self.family)


@dataclass(frozen=True, eq=False)
class AbstractGgs:
    """A general granular operator space given by explicit tables."""
    carrier: Tuple[Hashable, ...]
    parthood: FrozenSet[Tuple[Hashable, Hashable]]
    order: FrozenSet[Tuple[Hashable, Hashable]]
    joins: Mapping[Tuple[Hashable, Hashable], Hashable]
    meets: Mapping[Tuple[Hashable, Hashable], Hashable]
    lowers: Mapping[Hashable, Hashable]
    uppers: Mapping[Hashable, Hashable]
    granulation: Tuple[Hashable, ...]
    bottom: Hashable
    top: Hashable

    def __post_init__(self):
        validate_universe(self.carrier)
        members = set(self.carrier)
        for name in ("bottom", "top"):
            if getattr(self, name) not in members:
                raise InputError(f"{name} {getattr(self, name)!r} is not in the carrier")
        for a, b in self.parthood | self.order:
            if a not in members or b not in members:
                raise InputError(f"Pair ({a!r}, {b!r}) leaves the carrier")
        for table in (self.joins, self.meets):
            for (a, b), c in table.items():
                if a not in members or b not in members or c not in members:
                    raise InputError(f"Operation triple ({a!r}, {b!r}, {c!r}) leaves the carrier")
        for table in (self.lowers, self.uppers):
            for a, b in table.items():
                if a not in members or b not in members:
                    raise InputError(f"Approximation ({a!r} -> {b!r}) leaves the carrier")
        for g in self.granulation:
            if g not in members:
                raise InputError(f"Granule {g!r} is not in the carrier")
        object.__setattr__(self, "_members", frozenset(members))

    def __contains__(self, x) -> bool:
        return x in self._members

    def elements(self) -> Tuple[Hashable, ...]:
        return self.carrier

    @property
    def granules(self) -> Tuple[Hashable, ...]:
        return self.granulation

    def part(self, a, b) -> bool:
        return (a, b) in self.parthood

    def leq(self, a, b) -> bool:
        return (a, b) in self.order

    def join(self, a, b):
        if a is None or b is None:
            return None
        return self.joins.get((a, b))

    def meet(self, a, b):
        if a is None or b is None:
            return None
        return self.meets.get((a, b))

    def lower(self, a):
        return None if a is None else self.lowers.get(a)

    def upper(self, a):
        return None if a is None else self.uppers.get(a)

    def complement(self, a):
        for c in self.carrier:
            if self.join(a, c) == self.top and self.meet(a, c) == self.bottom:
                return c
        return None


Space = Union[SetHgos, AbstractGgs]


class RoughObjectKind(Enum):
    """Representations of rough objects."""
    RL = "RL"
    RU = "RU"
    RW = "RW"
    RB = "RB"
    RD = "RD"
    RP = "RP"
    RIA = "RIA"
    RI = "RI"
    ET = "ET"
    RND = "RND"
    ORTHO = "ORTHO"


@dataclass(frozen=True)
class DefinitenessFlags:
    lower_definite: bool
    upper_definite: bool
    definite: bool
    weakly_upper_definite: bool
    weakly_definite: bool


DEFINITENESS_NOTIONS = {
    "definite": "definite",
    "lower": "lower_definite",
    "upper": "upper_definite",
    "weakly_upper": "weakly_upper_definite",
    "weakly": "weakly_definite",
}


@dataclass(frozen=True)
class GgsMorphism:
    """A total map between the carriers of two spaces."""
    source: Any
    target: Any
    mapping: Mapping[Hashable, Hashable]

    def __post_init__(self):
        missing = [a for a in self.source.elements() if a not in self.mapping]
        if missing:
            raise InputError(f"Map undefined on {len(missing)} source elements, e.g. {missing[0]!r}")
        for a in self.source.elements():
            if self.mapping[a] not in self.target:
                raise InputError(f"Image of {a!r} is not a target element")

    def __call__(self, a):
        return None if a is None else self.mapping[a]


class Cardinality(NamedTuple):
    value: int
    closed: bool


class Regions(NamedTuple):
    positive: Subset
    negative: Subset
    boundary: Subset


class ApproximationRow(NamedTuple):
    members: Tuple[Subset, ...]
    lower: Subset
    upper: Subset


def _contains(space: Space, x) -> bool:
    return x in space


def _require(space: Space, x) -> None:
    if not _contains(space, x):
        raise InputError(f"{x!r} is not an element of the space")


def build_set_hgos(universe: Sequence[Element], granulation: Iterable[Iterable[Element]],
                   family: Optional[Iterable[Iterable[Element]]] = None,
                   powerset_limit: int = DEFAULT_POWERSET_LIMIT) -> SetHgos:
    """
    Build a set HGOS from a granulation.

    Args:
        universe: Ordered universe
        granulation: Granules, each a subset of the universe
        family: Explicit family of elements; the full powerset when omitted
        powerset_limit: Largest universe for which the powerset is built

    Returns:
        SetHgos with lower(X) = ∪{g ⊆ X}, upper(X) = ∪{g : g ∩ X ≠ ∅}
    """
    universe = validate_universe(universe)
    members = set(universe)
    granules: List[Subset] = []
    for block in granulation:
        block = frozenset(block)
        if not block <= members:
            raise InputError(f"Granule {sorted(block, key=str)} is not over the universe")
        if block not in granules:
            granules.append(block)

    if family is None:
        elements = powerset(universe, powerset_limit)
        return SetHgos(universe, granules, elements)

    elements = list(dict.fromkeys(frozenset(x) for x in family))
    space = SetHgos(universe, granules, elements)
    for x in elements:
        if not x <= members:
            raise InputError(f"Family member {sorted(x, key=str)} is not over the universe")
    for required in [space.bottom, space.top] + granules:
        if required not in space:
            raise InputError(f"Family must contain {sorted(required, key=str)}")
    for x in elements:
        if space.lower(x) not in space or space.upper(x) not in space:
            raise InputError(f"Family is not closed under approximation at {sorted(x, key=str)}")
    return space


def lift(space: Space) -> AbstractGgs:
    """Tables of a set HGOS (partial ∪, ∩ where the family is not closed)."""
    if isinstance(space, AbstractGgs):
        return space
    family = space.family
    parthood = frozenset((a, b) for a in family for b in family if a <= b)
    joins, meets = {}, {}
    for a, b in product(family, repeat=2):
        union = space.join(a, b)
        if union is not None:
            joins[(a, b)] = union
        intersection = space.meet(a, b)
        if intersection is not None:
            meets[(a, b)] = intersection
    return AbstractGgs(
        carrier=family,
        parthood=parthood,
        order=parthood,
        joins=joins,
        meets=meets,
        lowers={x: space.lower(x) for x in family},
        uppers={x: space.upper(x) for x in family},
        granulation=space.granulation,
        bottom=space.bottom,
        top=space.top,
    )


def approximation_table(s: SetHgos, subjects: Optional[Iterable[Subset]] = None) -> List[ApproximationRow]:
    """Subjects grouped by identical (lower, upper), in order of first appearance."""
    rows: Dict[Tuple[Subset, Subset], List[Subset]] = {}
    for x in (s.family if subjects is None else subjects):
        rows.setdefault((s.lower(x), s.upper(x)), []).append(frozenset(x))
    return [ApproximationRow(tuple(members), lower, upper) for (lower, upper), members in rows.items()]


def regions(s: SetHgos, x: Subset) -> Regions:
    lower, upper = s.lower(x), s.upper(x)
    return Regions(lower, s.top - upper, upper - lower)


def rough_included(s: Space, a, b) -> bool:
    """A ⊑ B: both approximations of A are parts of those of B."""
    return s.part(s.lower(a), s.lower(b)) and s.part(s.upper(a), s.upper(b))


def roughly_equal(s: Space, a, b) -> bool:
    return s.lower(a) == s.lower(b) and s.upper(a) == s.upper(b)


# --- axiom systems -----------------------------------------------------------

def _first(iterable, predicate):
    for item in iterable:
        if not predicate(*item):
            return item
    return None


def check_ggs_axioms(g: Space, mode: str = "ggs") -> Report:
    """
    Check the GGS axioms, or the Pre-GGS ones.

    Args:
        g: Space (a set HGOS is checked through its tables)
        mode: "ggs", "gs" (adds 𝐏 = ≤), "pre" or "pre_gs"

    Returns:
        Report with one row per axiom and a witness tuple on failure
    """
    if mode not in ("ggs", "gs", "pre", "pre_gs"):
        raise InputError(f"Unknown axiom mode {mode!r}")
    g = lift(g)
    carrier = g.carrier
    pairs = list(product(carrier, repeat=2))
    triples = list(product(carrier, repeat=3))
    P, J, M, l, u = g.part, g.join, g.meet, g.lower, g.upper
    bottom, top = g.bottom, g.top

    def part(a, b):
        return a is not None and b is not None and P(a, b)

    report = Report(f"{mode} axioms")
    rows = [
        ("PT1", [(a,) for a in carrier], lambda a: P(a, a)),
        ("PT2", pairs, lambda a, b: a == b or not (P(a, b) and P(b, a))),
        ("G1", pairs, lambda a, b: omega_equal(J(a, b), J(b, a)) and omega_equal(M(a, b), M(b, a))),
        ("G2", pairs, lambda a, b: omega_equal(M(J(a, b), a), a) and omega_equal(J(M(a, b), a), a)),
        ("G3", triples, lambda a, b, c: omega_equal(J(M(a, b), c), M(J(a, c), J(b, c)))),
        ("G4", triples, lambda a, b, c: omega_equal(M(J(a, b), c), J(M(a, c), M(b, c)))),
        ("G5", pairs, lambda a, b: g.leq(a, b) == (J(a, b) == b) == (M(a, b) == a)),
    ]
    if mode in ("ggs", "gs"):
        rows += [
            ("UL1", [(a,) for a in carrier],
             lambda a: part(l(a), a) and l(a) is not None and l(l(a)) == l(a) and part(u(a), u(u(a)))),
            ("UL2", pairs, lambda a, b: not P(a, b) or (part(l(a), l(b)) and part(u(a), u(b)))),
        ]
    else:
        rows += [
            ("PL0", [(a,) for a in carrier], lambda a: l(a) is None or P(l(a), a)),
            ("PU0", [(a,) for a in carrier],
             lambda a: u(a) is None or u(u(a)) is None or P(u(a), u(u(a)))),
            ("PL1", [(a,) for a in carrier], lambda a: omega_equal(l(l(a)), l(a))),
            ("PUL2", pairs, lambda a, b: not P(a, b)
             or ((l(a) is None or l(b) is None or P(l(a), l(b)))
                 and (u(a) is None or u(b) is None or P(u(a), u(b))))),
        ]
    rows += [
        ("UL3", [()], lambda: l(bottom) == bottom and u(bottom) == bottom
         and part(l(top), top) and part(u(top), top)),
        ("TB", [(a,) for a in carrier], lambda a: P(bottom, a) and P(a, top)),
    ]
    if mode in ("gs", "pre_gs"):
        rows.append(("P=≤", pairs, lambda a, b: P(a, b) == g.leq(a, b)))

    for name, domain, predicate in rows:
        witness = _first(domain, predicate)
        report.add(CheckResult.of(name, witness is None, witness))
    logger.debug("%s: %d/%d axioms hold", report.title, sum(r.holds for r in report.results), len(report.results))
    return report


def _proper(space: Space, a, b) -> bool:
    return space.part(a, b) and not space.part(b, a)


def _is_granule_join(space: Space, y, closure: Optional[set]) -> bool:
    if isinstance(space, SetHgos):
        return frozenset().union(*(g for g in space.granulation if g <= y)) == y
    return y in closure


def _join_closure(space: AbstractGgs) -> set:
    closure = {space.bottom, *space.granulation}
    frontier = list(closure)
    while frontier:
        x = frontier.pop()
        for g in space.granulation:
            for candidate in (space.join(x, g), space.join(g, x)):
                if candidate is not None and candidate not in closure:
                    closure.add(candidate)
                    frontier.append(candidate)
    return closure


def check_admissibility(g: Space, degenerate: bool = False) -> Report:
    """
    Check WRA, LS and FU for the granulation of a space.

    WRA searches joins of granules only (the empty join being ⊥). FU ranges
    over distinct granule pairs unless `degenerate` also admits x = a.
    """
    report = Report("admissibility")
    elements = g.elements()
    granules = g.granules
    closure = None if isinstance(g, SetHgos) else _join_closure(g)

    witness = None
    for x in elements:
        for approximation in (g.lower(x), g.upper(x)):
            if approximation is None or not _is_granule_join(g, approximation, closure):
                witness = (x, approximation)
                break
        if witness:
            break
    report.add(CheckResult.of("WRA", witness is None, witness))

    witness = None
    for gr, x in product(granules, elements):
        if g.part(gr, x) and not (g.lower(x) is not None and g.part(gr, g.lower(x))):
            witness = (gr, x)
            break
    report.add(CheckResult.of("LS", witness is None, witness))

    definite = [z for z in elements if g.lower(z) == z and g.upper(z) == z]
    if degenerate:
        candidates = [(a, b) for a, b in product(granules, repeat=2)]
    else:
        candidates = [(a, b) for i, a in enumerate(granules) for b in granules[i + 1:]]
    if not candidates:
        report.add(CheckResult("FU", VACUOUS, note="fewer than two granules"))
        report.annotate("FU holds vacuously: no pair of distinct granules")
    else:
        witness = None
        for a, b in candidates:
            if not any(_proper(g, a, z) and _proper(g, b, z) for z in definite):
                witness = (a, b)
                break
        note = "degenerate pairs included" if degenerate else ""
        report.add(CheckResult.of("FU", witness is None, witness, note))
    return report


def classify_definiteness(s: Space, x) -> DefinitenessFlags:
    """Definiteness notions of a single element."""
    _require(s, x)
    lower, upper = s.lower(x), s.upper(x)
    lower_definite = lower == x
    upper_definite = upper == x
    weakly_upper = upper is not None and s.upper(upper) == upper
    return DefinitenessFlags(
        lower_definite=lower_definite,
        upper_definite=upper_definite,
        definite=lower_definite and upper_definite,
        weakly_upper_definite=weakly_upper,
        weakly_definite=weakly_upper and lower_definite,
    )


def _is_definite(s: Space, x, notion: str) -> bool:
    try:
        attribute = DEFINITENESS_NOTIONS[notion]
    except KeyError:
        raise InputError(f"Unknown definiteness notion {notion!r}") from None
    return getattr(classify_definiteness(s, x), attribute)


def _approximations(s: Space, x):
    lower, upper = s.lower(x), s.upper(x)
    if lower is None or upper is None:
        raise PreconditionError(f"Approximations of {x!r} are undefined")
    return lower, upper


def _interval(s: Space, a, b) -> Tuple:
    return tuple(y for y in s.elements() if s.part(a, y) and s.part(y, b))


def rough_objects(s: Space, kind: Union[RoughObjectKind, str], definiteness: str = "definite") -> Tuple:
    """
    Enumerate rough objects of one representation.

    Args:
        s: Space with total approximations
        kind: Representation tag (RL, RU, RW, RB, RD, RP, RIA, RI, ET, RND, ORTHO)
        definiteness: Notion used by RD and RI

    Returns:
        Tuple of elements, pairs, (a, b, members) intervals or triples
    """
    try:
        kind = RoughObjectKind(kind.value if isinstance(kind, RoughObjectKind) else kind)
    except ValueError:
        raise InputError(f"Unknown rough object kind {kind!r}") from None

    elements = s.elements()
    approx = {x: _approximations(s, x) for x in elements}

    if kind is RoughObjectKind.RL:
        return tuple(x for x in elements if approx[x][0] != x)
    if kind is RoughObjectKind.RU:
        return tuple(x for x in elements if approx[x][1] != x)
    if kind is RoughObjectKind.RW:
        return tuple(x for x in elements if approx[x][1] != s.upper(approx[x][1]))
    if kind is RoughObjectKind.RB:
        return tuple(x for x in elements if approx[x][0] != approx[x][1])
    if kind is RoughObjectKind.RND:
        return tuple(x for x in elements if not s.part(approx[x][1], approx[x][0]))
    if kind in (RoughObjectKind.RD, RoughObjectKind.RI):
        definite = [x for x in elements if _is_definite(s, x, definiteness)]
        pairs = [(a, b) for a, b in product(definite, repeat=2) if a != b and s.part(a, b)]
        if kind is RoughObjectKind.RD:
            return tuple(pairs)
        return tuple((a, b, _interval(s, a, b)) for a, b in pairs)
    if kind is RoughObjectKind.RP:
        return tuple(dict.fromkeys(approx[x] for x in elements if approx[x][0] != approx[x][1]))
    if kind is RoughObjectKind.RIA:
        intervals = dict.fromkeys(approx[x] for x in elements if approx[x][0] != approx[x][1])
        return tuple((a, b, _interval(s, a, b)) for a, b in intervals)
    if kind is RoughObjectKind.ET:
        return tuple(dict.fromkeys((approx[x][0], s.upper(approx[x][0]), approx[x][1]) for x in elements))
    # ORTHO
    complements = {x: s.complement(approx[x][1]) for x in elements}
    if any(c is None for c in complements.values()):
        raise UnsupportedError("Orthopairs need complements of every upper approximation")
    return tuple(dict.fromkeys((approx[x][0], complements[x]) for x in elements))


# --- completion of Pre-GS ----------------------------------------------------

def _is_partial_order(g: AbstractGgs) -> bool:
    order = g.order
    return all((c, c) in order for c in g.carrier) and all(
        (a, d) in order for a, b in order for c, d in order if b == c)


def collapsed_elements(g: AbstractGgs) -> Tuple[FrozenSet, FrozenSet]:
    """
    The minimal elements H with an undefined approximation and the up-set ↑H
    that the one-point quotient identifies with the adjoined element.
    """
    undefined = [x for x in g.carrier if g.lower(x) is None or g.upper(x) is None]
    minimal = frozenset(x for x in undefined
                        if not any(y != x and g.part(y, x) for y in undefined))
    up = frozenset(z for z in g.carrier if any(g.part(h, z) for h in minimal))
    return minimal, up


def _fresh_label(carrier: Sequence[Hashable]) -> str:
    label = "o"
    while label in carrier:
        label += "'"
    return label


def complete_and_quotient(g: AbstractGgs) -> AbstractGgs:
    """
    lu-one-point completion of a Pre-GS followed by its quotient.

    Undefined approximations are sent to a fresh element o; every element
    above a minimal element with an undefined approximation is identified
    with o, which becomes the top with [o]ˡ = [o]ᵘ = [o].

    Args:
        g: Pre-GS (parthood equal to a partial order, Pre-GGS axioms holding)

    Returns:
        AbstractGgs satisfying the GS axioms
    """
    if not isinstance(g, AbstractGgs):
        raise UnsupportedError("Completion works on finite abstract spaces")
    if g.parthood != g.order or not _is_partial_order(g):
        raise PreconditionError("Completion needs parthood equal to a partial order")
    precheck = check_ggs_axioms(g, mode="pre_gs")
    if not precheck.passed:
        names = ", ".join(r.name for r in precheck.failures())
        raise PreconditionError(f"Input is not a Pre-GS ({names} fail)")

    minimal, up = collapsed_elements(g)
    fresh = _fresh_label(g.carrier)
    survivors = tuple(x for x in g.carrier if x not in up)
    carrier = survivors + (fresh,)
    logger.debug("Quotient identifies %d elements with %r (minimal: %s)", len(up), fresh, sorted(minimal, key=str))

    def cls(x):
        return fresh if x in up else x

    parthood = {(a, b) for a, b in product(survivors, repeat=2) if g.part(a, b)}
    parthood |= {(x, fresh) for x in carrier}

    joins: Dict = {}
    meets: Dict = {}
    for a, b in product(survivors, repeat=2):
        union = g.join(a, b)
        if union is not None and union not in up:
            joins[(a, b)] = union
        intersection = g.meet(a, b)
        if intersection is not None:
            meets[(a, b)] = cls(intersection)
    for x in carrier:
        joins[(x, fresh)] = joins[(fresh, x)] = fresh
        meets[(x, fresh)] = meets[(fresh, x)] = x

    lowers = {x: cls(g.lower(x)) for x in survivors}
    uppers = {x: cls(g.upper(x)) for x in survivors}
    lowers[fresh] = uppers[fresh] = fresh

    return AbstractGgs(
        carrier=carrier,
        parthood=frozenset(parthood),
        order=frozenset(parthood),
        joins=joins,
        meets=meets,
        lowers=lowers,
        uppers=uppers,
        granulation=tuple(dict.fromkeys(cls(x) for x in g.granulation)),
        bottom=g.bottom,
        top=fresh,
    )


# --- morphisms ---------------------------------------------------------------

def check_morphism(m: GgsMorphism, closed: bool = False) -> Report:
    """
    Verify the morphism conditions by enumeration.

    Args:
        m: Candidate morphism
        closed: Also require target operations defined on images to be
            defined on the preimages, and report projectivity

    Returns:
        Report with rows lu, P, ≤, weak ∨, weak ∧, (0) and optionally closed
    """
    source, target = m.source, m.target
    elements = source.elements()
    pairs = list(product(elements, repeat=2))
    report = Report("morphism" + (" (closed)" if closed else ""))

    rows = [
        ("lu", [(a,) for a in elements],
         lambda a: omega_equal(m(source.lower(a)), target.lower(m(a)))
         and omega_equal(m(source.upper(a)), target.upper(m(a)))),
        ("P", pairs, lambda a, b: not source.part(a, b) or target.part(m(a), m(b))),
        ("≤", pairs, lambda a, b: not source.leq(a, b) or target.leq(m(a), m(b))),
        ("weak ∨", pairs, lambda a, b: omega_equal(m(source.join(a, b)), target.join(m(a), m(b)))),
        ("weak ∧", pairs, lambda a, b: omega_equal(m(source.meet(a, b)), target.meet(m(a), m(b)))),
        ("(0)", [()], lambda: m(source.bottom) == target.bottom and m(source.top) == target.top),
    ]
    if closed:
        rows.append(("closed", pairs, lambda a, b: (
            (target.join(m(a), m(b)) is None or source.join(a, b) is not None)
            and (target.meet(m(a), m(b)) is None or source.meet(a, b) is not None)
            and (target.lower(m(a)) is None or source.lower(a) is not None)
            and (target.upper(m(a)) is None or source.upper(a) is not None))))

    for name, domain, predicate in rows:
        witness = _first(domain, predicate)
        report.add(CheckResult.of(name, witness is None, witness))

    if closed:
        images = [m(a) for a in elements]
        injective = len(set(images)) == len(images)
        projective = injective and report.passed
        result = CheckResult("projective", HOLDS if projective else FAILS, note="injective closed morphism")
        result.finding = not projective
        report.add(result)
    return report


def phi_cardinality(m: GgsMorphism, a) -> Cardinality:
    """#φ(a) for a morphism into a set HGOS, flagged when the morphism is closed."""
    if not isinstance(m.target, SetHgos):
        raise PreconditionError("φ-cardinality needs a set HGOS target")
    if not check_morphism(m).passed:
        raise PreconditionError("Map is not a morphism")
    _require(m.source, a)
    return Cardinality(len(m(a)), check_morphism(m, closed=True)["closed"].holds)


def check_careful_measure(domain: Iterable, s: Space) -> bool:
    """A measure is careful when its domain holds only definite elements."""
    return all(classify_definiteness(s, x).definite for x in domain)
