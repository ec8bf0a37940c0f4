"""
GRIF-guided decisions over scripted error-recovery scenarios.

A scenario fixes the pilot's estimates (Er, Sok, Sok1) and the states the
system actually defines (Erp, Sokp, Sokp1), plus two action catalogs. The
run replays a fixed fourteen-step schema, ranking actions by how close
their outcome gets to the target state.
"""

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

from ..granular.errors import InputError
from ..granular.report import FAILS, HOLDS, VACUOUS, CheckResult, Report
from ..granular.spaces import SetHgos, build_set_hgos, check_ggs_axioms
from ..granular.tables import BinaryRelationSpace, CggsBundle, InformationTable, ValuationAlgebra, granules_from_relation
from ..granular.universe import Subset
from ..inclusion.grif import ENTRIES, GrifKind, GrifMatrix, grif_matrix, matrix_leq, matrix_lt
from ..inclusion.rif import K0, InclusionFn, eval_rif
from .actions import Action, ActionCatalog

logger = logging.getLogger(__name__)

ESTIMATE_STAGES = ("Er", "Sok", "Sok1")
TRUE_STAGES = ("Erp", "Sokp", "Sokp1")
STAGES = ESTIMATE_STAGES + TRUE_STAGES
CATALOGS = ("A", "C")

Closeness = Union[GrifMatrix, Fraction]
Chooser = Callable[[str, "Ranking"], int]


@dataclass(frozen=True)
class Measure:
    """Closeness of an outcome to a target: a GRIF matrix or a scalar RIF value."""
    mode: str = "grif"
    kind: GrifKind = GrifKind("zeta", K0)
    tau: InclusionFn = K0

    def __post_init__(self):
        if self.mode not in ("grif", "rif"):
            raise InputError(f"Unknown measure {self.mode!r}")

    def __call__(self, s: SetHgos, x: Subset, target: Subset) -> Closeness:
        if self.mode == "grif":
            return grif_matrix(s, self.kind, x, target)
        return eval_rif(self.tau, x, target, s)

    @property
    def label(self) -> str:
        return self.kind.label if self.mode == "grif" else self.tau.label


GRIF = Measure("grif")
RIF = Measure("rif")


@dataclass
class Scenario:
    """Scripted stages of one error-recovery episode."""
    space: SetHgos
    stages: Dict[str, Subset]
    catalogs: Dict[str, ActionCatalog]
    seed: int = 0

    def __post_init__(self):
        missing = [stage for stage in STAGES if stage not in self.stages]
        unknown = [stage for stage in self.stages if stage not in STAGES]
        if missing or unknown:
            raise InputError(f"Stage sequence malformed: missing {missing}, unknown {unknown}")
        for stage, element in self.stages.items():
            if element not in self.space:
                raise InputError(f"Stage {stage} is not an element of the space")
        for name in CATALOGS:
            if name not in self.catalogs or not len(self.catalogs[name]):
                raise InputError(f"Action catalog {name} is missing or empty")


@dataclass(frozen=True)
class RankedAction:
    action: Action
    outcome: Subset
    value: Closeness
    layer: int
    index: int


@dataclass
class Ranking:
    """Actions in suggested order with the tie-break trace."""
    entries: List[RankedAction]
    trace: List[str] = field(default_factory=list)

    @property
    def best(self) -> RankedAction:
        return self.entries[0]

    def __len__(self) -> int:
        return len(self.entries)


@dataclass
class LogEntry:
    step: int
    event: str
    values: Dict[str, Any] = field(default_factory=dict)


@dataclass
class DecisionLog:
    """Ordered record of one scenario run."""
    measure: str
    entries: List[LogEntry] = field(default_factory=list)
    checks: Report = field(default_factory=lambda: Report("scenario checks"))

    def record(self, step: int, event: str, **values) -> LogEntry:
        entry = LogEntry(step, event, values)
        self.entries.append(entry)
        logger.debug("step %d: %s", step, event)
        return entry

    @property
    def passed(self) -> bool:
        return self.checks.passed


# --- ranking ---------------------------------------------------------------------

def _maximal(items: Sequence[RankedAction]) -> List[RankedAction]:
    return [x for x in items if not any(matrix_lt(x.value, y.value) for y in items)]


def suggest_action(s: SetHgos, state: Subset, catalog: ActionCatalog, target: Subset,
                   measure: Measure = GRIF) -> Ranking:
    """
    Rank the actions of a catalog by the closeness of their outcome to a target.

    GRIF mode peels ⪯-maximal layers; within a layer matrices are ordered by
    descending (ll, lu, ul, uu) and then by catalog position. RIF mode sorts
    by descending value, ties by catalog position.
    """
    if not len(catalog):
        raise InputError("No action to suggest from an empty catalog")
    scored = [RankedAction(action, outcome, measure(s, outcome, target), 0, i)
              for i, (action, outcome) in enumerate(catalog.outcomes(state))]
    ranking = Ranking([])

    if measure.mode == "rif":
        ordered = sorted(scored, key=lambda r: (-r.value, r.index))
        ranking.entries = ordered
        for first, second in zip(ordered, ordered[1:]):
            if first.value == second.value:
                ranking.trace.append(f"{first.action.name} ~ {second.action.name}: equal value, catalog order")
        return ranking

    remaining = list(scored)
    layer = 0
    while remaining:
        top = _maximal(remaining)
        top.sort(key=lambda r: (tuple(-v for v in r.value.entries), r.index))
        if len(top) > 1:
            names = ", ".join(r.action.name for r in top)
            ranking.trace.append(f"layer {layer}: {names} are ⪯-maximal; ordered by entries then catalog")
        for r in top:
            ranking.entries.append(RankedAction(r.action, r.outcome, r.value, layer, r.index))
        remaining = [r for r in remaining if r not in top]
        layer += 1
    return ranking


def discrimination_gap(s: SetHgos, state: Subset, catalog: ActionCatalog, target: Subset,
                       tau: InclusionFn = K0) -> List[Tuple[str, str, Fraction, GrifMatrix, GrifMatrix]]:
    """Action pairs that tie on the scalar τ but whose ζ(τ) matrices are distinct and ⪯-comparable."""
    kind = GrifKind("zeta", tau)
    scored = [(action.name, eval_rif(tau, outcome, target, s), grif_matrix(s, kind, outcome, target))
              for action, outcome in catalog.outcomes(state)]
    gaps = []
    for (n1, v1, m1), (n2, v2, m2) in combinations(scored, 2):
        if v1 == v2 and m1 != m2 and (matrix_leq(m1, m2) or matrix_leq(m2, m1)):
            gaps.append((n1, n2, v1, m1, m2))
    return gaps


# --- scenario run ----------------------------------------------------------------

def _first_choice(stage: str, ranking: Ranking) -> int:
    return 0


def _improvement(before: Closeness, after: Closeness, mode: str) -> CheckResult:
    name = "step 11 improvement"
    if before == after:
        return CheckResult(name, VACUOUS, note="closeness unchanged (non-strict)")
    if mode == "rif":
        if after > before:
            return CheckResult(name, HOLDS)
        return CheckResult(name, FAILS, (before, after), note="scalar closeness did not increase")
    if matrix_lt(before, after):
        return CheckResult(name, HOLDS)
    worse = [key for key, b, a in zip(ENTRIES, before.entries, after.entries) if a < b]
    note = f"entries {', '.join(worse)} decreased"
    return CheckResult(name, FAILS, (before, after), note=note)


def run_scenario(sc: Scenario, measure: Measure = GRIF, chooser: Optional[Chooser] = None) -> DecisionLog:
    """
    Replay the fourteen-step schema.

    Args:
        sc: Scenario
        measure: GRIF or RIF closeness
        chooser: Picks an index into a ranking; the top suggestion by default

    Returns:
        DecisionLog with the improvement check at step 11
    """
    s, st = sc.space, sc.stages
    chooser = chooser or _first_choice
    log = DecisionLog(measure.mode + ":" + measure.label)

    def approximations(x):
        return {"lower": s.lower(x), "upper": s.upper(x)}

    def decide(step, name, state, target):
        ranking = suggest_action(s, state, sc.catalogs[name], target, measure)
        log.record(step, f"actions {name} ranked", ranking=[(r.action.name, r.value) for r in ranking.entries],
                   trace=list(ranking.trace))
        index = chooser(name, ranking)
        if not 0 <= index < len(ranking):
            raise InputError(f"Choice {index} is outside the ranking of {name}")
        chosen = ranking.entries[index]
        log.record(step + 1, f"perform {chosen.action.name}", outcome=chosen.outcome)
        return chosen.outcome

    log.record(1, "in flight", state=st["Er"])
    log.record(2, "error indication")
    log.record(3, "approximate Er", **approximations(st["Er"]))
    log.record(4, "closeness of Er to Erp", closeness=measure(s, st["Er"], st["Erp"]))
    log.record(5, "approximate Sok", **approximations(st["Sok"]))
    before = measure(s, st["Sok"], st["Sokp"])
    log.record(6, "closeness of Sok to Sokp", closeness=before)
    state = decide(7, "A", st["Er"], st["Sokp"])
    log.record(9, "error indication")
    log.record(10, "approximate Sok1", **approximations(st["Sok1"]))
    after = measure(s, st["Sok1"], st["Sokp1"])
    log.record(11, "closeness of Sok1 to Sokp1", closeness=after)
    log.checks.add(_improvement(before, after, measure.mode))
    state = decide(12, "C", state, st["Sokp1"])
    log.record(14, "stable", state=state, closeness=measure(s, state, st["Sokp1"]))
    return log


# --- generated scenarios -----------------------------------------------------------

def generate_scenario(seed: int = 7, size: int = 5, actions: int = 3) -> Scenario:
    """A seeded scenario on a random relation-based set HGOS over p1..p<size>."""
    rng = random.Random(seed)
    universe = tuple(f"p{i + 1}" for i in range(size))
    relation = frozenset((x, y) for x in universe for y in universe if x == y or rng.random() < 0.3)
    space = build_set_hgos(universe, granules_from_relation(BinaryRelationSpace(universe, relation)))
    family = space.family

    def pick():
        return family[rng.randrange(len(family))]

    stages = {stage: pick() for stage in STAGES}
    catalogs = {}
    ops = ("union", "difference", "intersection", "replace", "lower", "upper")
    for name in CATALOGS:
        catalogs[name] = ActionCatalog(space, [Action(f"{name}{i + 1}", rng.choice(ops), pick())
                                               for i in range(actions)])
    return Scenario(space, stages, catalogs, seed)


# --- benchmark dataset -------------------------------------------------------------

@dataclass
class PilotDataset:
    """
    Labelled elements S = A ∪ B over an attribute universe.

    C ⊆ B holds the elements that occur as approximations, the granules are
    elements of C, and each element of C is attached to a data table.
    """
    universe: Tuple[str, ...]
    elements: Dict[str, Subset]
    A: Tuple[str, ...]
    B: Tuple[str, ...]
    C: Tuple[str, ...]
    granules: Tuple[str, ...]
    table_refs: Dict[str, str]
    n: int
    r: int
    q: int
    l: int
    seed: int

    def invariants(self, space: SetHgos) -> Report:
        report = Report("pilot dataset invariants")
        A, B, C = set(self.A), set(self.B), set(self.C)
        c_sets = {self.elements[c] for c in C}
        report.add(CheckResult.of("A ∩ B = ∅", not (A & B)))
        report.add(CheckResult.of("C ⊆ B", C <= B))
        report.add(CheckResult.of("𝒢 ⊆ C", set(self.granules) <= C))
        report.add(CheckResult.of("#C = n", len(C) == self.n))
        report.add(CheckResult.of("#A = r", len(A) == self.r))
        report.add(CheckResult.of("#B = q + n", len(B) == self.q + self.n))
        report.add(CheckResult.of("#𝒢 = l ≤ n", len(self.granules) == self.l <= self.n))
        bad = next((a for a in self.A if space.lower(self.elements[a]) not in c_sets
                    or space.upper(self.elements[a]) not in c_sets), None)
        report.add(CheckResult.of("approximations of A in C", bad is None, bad))
        distinct = len({self.elements[x] for x in self.elements}) == len(self.elements)
        report.add(CheckResult.of("distinct elements", distinct))
        report.add(CheckResult.of("C carries tables", all(c in self.table_refs for c in self.C)))
        return report


def generate_dataset(n: int, r: int, q: int, l: int, seed: int = 7) -> Tuple[PilotDataset, CggsBundle]:
    """
    Generate a dataset and its CGGS bundle.

    Granules are disjoint blocks of at least two points; C consists of the
    granules followed by further unions of granules, and each element of A
    is an element of C plus a private noise point, possibly with part of a
    further granule, so that both approximations lie in C.

    Args:
        n, r, q, l: Sizes of C, A, B ∖ C and the granulation
        seed: Random seed

    Returns:
        (PilotDataset, CggsBundle over the elements with Boolean valuations)
    """
    if r < 1 or q < 0 or l < 1 or n < 1:
        raise InputError("Need r ≥ 1, q ≥ 0, l ≥ 1 and n ≥ 1")
    if l > n:
        raise InputError(f"Granulation size l={l} exceeds n={n}")
    if n > 2 ** l:
        raise InputError(f"Only {2 ** l} unions of {l} granules exist, n={n} requested")

    rng = random.Random(seed)
    points: List[str] = []
    blocks: List[Subset] = []
    for i in range(l):
        size = 2 + rng.randrange(2)
        block = tuple(f"p{len(points) + k + 1}" for k in range(size))
        points.extend(block)
        blocks.append(frozenset(block))
    noise = [f"z{i + 1}" for i in range(r)]
    extra = [f"y{j + 1}" for j in range(q)]
    universe = tuple(points + noise + extra)

    unions = [frozenset().union(*combo) for size in range(2, l + 1) for combo in combinations(blocks, size)]
    c_sets = blocks + unions + [frozenset()]
    c_sets = c_sets[:n]

    elements: Dict[str, Subset] = {}
    for i, c in enumerate(c_sets):
        elements[f"c{i + 1}"] = c
    for j in range(q):
        elements[f"b{j + 1}"] = frozenset({extra[j]})
    c_members = set(c_sets)
    for i in range(r):
        base = rng.choice(c_sets)
        element = base | {noise[i]}
        widen = [g for g in blocks if not g <= base and base | g in c_members]
        if widen and rng.random() < 0.5:
            g = rng.choice(widen)
            members = sorted(g)
            element |= set(members[:rng.randrange(1, len(members))])
        elements[f"a{i + 1}"] = element

    C = tuple(f"c{i + 1}" for i in range(len(c_sets)))
    B = C + tuple(f"b{j + 1}" for j in range(q))
    A = tuple(f"a{i + 1}" for i in range(r))
    dataset = PilotDataset(
        universe=universe,
        elements=elements,
        A=A,
        B=B,
        C=C,
        granules=C[:l],
        table_refs={c: f"table/{c}.csv" for c in C},
        n=n, r=r, q=q, l=l, seed=seed,
    )

    family = list(dict.fromkeys([frozenset(), frozenset(universe), frozenset().union(*blocks)]
                                + list(elements.values())))
    space = build_set_hgos(universe, blocks, family)
    rows = {label: {p: ("1" if p in element else "0") for p in universe} for label, element in elements.items()}
    table = InformationTable.from_rows(rows, universe)
    xi = frozenset((label, element) for label, element in elements.items())
    bundle = CggsBundle(table, space, xi, ValuationAlgebra.boolean())
    logger.info("Generated dataset with %d elements over %d attributes", len(elements), len(universe))
    return dataset, bundle


def check_dataset(dataset: PilotDataset, bundle: CggsBundle) -> Report:
    """Invariant suite together with the GGS axioms of the bundle's space."""
    report = dataset.invariants(bundle.space)
    axioms = check_ggs_axioms(bundle.space)
    report.add(CheckResult.of("GGS axioms", axioms.passed,
                              [r.name for r in axioms.failures()] or None))
    return report
