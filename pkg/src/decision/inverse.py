"""
Inverse problem: which granular models explain a set of observed approximations.

Candidate models are enumerated from relations or from a pool of granules,
then filtered against observed lower/upper approximations and GRIF matrices.
Subjects given as plain labels (rather than subsets) are placeholders whose
extension is searched for in every candidate.
"""

import logging
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial, reduce
from itertools import combinations, product
from math import comb
from typing import Dict, Hashable, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from tqdm import tqdm

from ..granular.errors import InputError
from ..granular.spaces import SetHgos, build_set_hgos
from ..granular.tables import BinaryRelationSpace, granules_from_relation
from ..granular.universe import Subset, powerset, validate_universe
from ..inclusion.grif import GrifKind, GrifMatrix, feasibility_filter, grif_matrix, matrix_combine
from ..inclusion.norms import NormTriple
from ..inclusion.rif import K0, InclusionFn

logger = logging.getLogger(__name__)

Subject = Union[Subset, str]

RELATION_UNIVERSE_LIMIT = 4
MAX_BLOCK_COMBINATIONS = 10 ** 7
CASE1_SIZE_LIMIT = 4


@dataclass(frozen=True)
class Observation:
    """
    Observed data about one subject.

    `grif` holds (other subject, ζ(subject, other)) pairs. A subject given as
    a string is a placeholder for an unknown subset.
    """
    subject: Subject
    lower: Optional[Subset] = None
    upper: Optional[Subset] = None
    grif: Tuple[Tuple[Subject, GrifMatrix], ...] = ()

    def __post_init__(self):
        if self.lower is None and self.upper is None and not self.grif:
            raise InputError(f"Observation of {self.subject!r} carries no data")

    @property
    def placeholder(self) -> bool:
        return isinstance(self.subject, str)

    def matrices(self) -> List[GrifMatrix]:
        return [m for _, m in self.grif]


@dataclass(frozen=True)
class CandidateModel:
    """A universe with a granulation, and the relation that generated it when known."""
    universe: Tuple[Hashable, ...]
    granulation: Tuple[Subset, ...]
    relation: Optional[frozenset] = None

    def __post_init__(self):
        members = set(validate_universe(self.universe))
        for g in self.granulation:
            if not g <= members:
                raise InputError(f"Granule {sorted(g, key=str)} leaves the universe")

    @property
    def key(self) -> frozenset:
        return frozenset(self.granulation)

    def space(self, powerset_limit: int = 12) -> SetHgos:
        return build_set_hgos(self.universe, self.granulation, powerset_limit=powerset_limit)


def _labels(universe: Union[Sequence[Hashable], int]) -> Tuple[Hashable, ...]:
    if isinstance(universe, int):
        if universe < 0:
            raise InputError("Universe size must be non-negative")
        return tuple(f"x{i + 1}" for i in range(universe))
    return validate_universe(universe)


def enumerate_models(universe: Union[Sequence[Hashable], int], generator: str = "relations",
                     pool: Optional[Sequence[Iterable]] = None, max_blocks: Optional[int] = None,
                     dedupe: bool = True, relation_limit: int = RELATION_UNIVERSE_LIMIT,
                     max_combinations: int = MAX_BLOCK_COMBINATIONS) -> Iterator[CandidateModel]:
    """
    Stream candidate models in canonical order.

    Args:
        universe: Known universe, or its size (points are labelled x1, x2, ...)
        generator: "relations" (every binary relation, successor neighborhoods)
            or "pool" (every combination of granules drawn from `pool`)
        pool: Granule pool for the pool generator
        max_blocks: Largest number of granules per combination
        dedupe: Skip granulations already produced
        relation_limit: Largest universe for the relations generator
        max_combinations: Largest number of pool combinations

    Returns:
        Iterator of CandidateModel
    """
    universe = _labels(universe)
    seen = set()

    if generator == "relations":
        if len(universe) > relation_limit:
            raise InputError(
                f"Relations generator needs a universe of at most {relation_limit} points, got {len(universe)}")
        pairs = list(product(universe, repeat=2))
        logger.info("Enumerating %d relations on %d points", 1 << len(pairs), len(universe))
        for mask in range(1 << len(pairs)):
            relation = frozenset(p for i, p in enumerate(pairs) if mask >> i & 1)
            granules = granules_from_relation(BinaryRelationSpace(universe, relation))
            model = CandidateModel(universe, granules, relation)
            if dedupe:
                if model.key in seen:
                    continue
                seen.add(model.key)
            yield model
        return

    if generator == "pool":
        if pool is None:
            raise InputError("Pool generator needs a granule pool")
        blocks = list(dict.fromkeys(frozenset(g) for g in pool))
        k = len(blocks) if max_blocks is None else min(max_blocks, len(blocks))
        total = sum(comb(len(blocks), i) for i in range(1, k + 1))
        if total > max_combinations:
            raise InputError(
                f"Pool generator would produce {total} combinations; lower max_blocks to stay within "
                f"{max_combinations}")
        logger.info("Enumerating %d granule combinations", total)
        for size in range(1, k + 1):
            for combo in combinations(blocks, size):
                yield CandidateModel(universe, combo)
        return

    raise InputError(f"Unknown model generator {generator!r}")


def enumerate_unknown(max_size: int, **kwargs) -> Iterator[CandidateModel]:
    """Candidate models on universes of 1..max_size anonymous points."""
    for size in range(1, max_size + 1):
        yield from enumerate_models(size, **kwargs)


# --- observations ----------------------------------------------------------------

def observations_from_model(model: CandidateModel, subjects: Optional[Iterable[Iterable]] = None,
                            grif_pairs: Iterable[Tuple[Iterable, Iterable]] = (),
                            tau: InclusionFn = K0) -> List[Observation]:
    """The approximation table of a model (every subset by default) plus GRIF observations."""
    space = model.space()
    subjects = space.family if subjects is None else [frozenset(x) for x in subjects]
    kind = GrifKind("zeta", tau)
    grifs: Dict[Subset, List] = {}
    for a, b in grif_pairs:
        a, b = frozenset(a), frozenset(b)
        grifs.setdefault(a, []).append((b, grif_matrix(space, kind, a, b)))
    observations = [Observation(x, space.lower(x), space.upper(x), tuple(grifs.pop(x, ()))) for x in subjects]
    observations.extend(Observation(a, grif=tuple(entries)) for a, entries in grifs.items())
    return observations


def mutate_relation(universe: Sequence[Hashable], relation: Iterable, rng: random.Random) -> frozenset:
    """Toggle one randomly chosen pair of the relation."""
    pair = (rng.choice(list(universe)), rng.choice(list(universe)))
    return frozenset(relation) ^ {pair}


def mutation_models(universe: Sequence[Hashable], relation: Iterable, count: int,
                    seed: int = 7) -> List[CandidateModel]:
    """The generating model followed by `count` seeded single-pair mutations."""
    universe = validate_universe(universe)
    rng = random.Random(seed)
    relations = [frozenset(relation)]
    relations.extend(mutate_relation(universe, relations[0], rng) for _ in range(count))
    return [CandidateModel(universe, granules_from_relation(BinaryRelationSpace(universe, r)), r)
            for r in relations]


def count_grif_pairs(subjects: Sequence) -> int:
    """Number of ordered pairs of distinct subjects, one matrix each."""
    n = len(set(subjects))
    return n * (n - 1)


def aggregate_unknown(matrices: Sequence[GrifMatrix], nt: NormTriple = NormTriple(),
                      kind: str = "disj") -> GrifMatrix:
    """Fold known matrices into an estimate; reporting only, never a filter."""
    if not matrices:
        raise InputError("Nothing to aggregate")
    return reduce(lambda x, y: matrix_combine(x, y, kind, nt), matrices)


# --- filtering ---------------------------------------------------------------------

def _fits(space: SetHgos, x: Subset, obs: Observation) -> bool:
    return ((obs.lower is None or space.lower(x) == obs.lower)
            and (obs.upper is None or space.upper(x) == obs.upper))


def match_placeholders(space: SetHgos, observations: Sequence[Observation], tau: InclusionFn = K0,
                       size_limit: int = CASE1_SIZE_LIMIT) -> Optional[Dict[str, Subset]]:
    """
    Assign a subset to every placeholder so that all observations hold.

    Backtracks over placeholders in order of first appearance; returns the
    first assignment found, or None.
    """
    labels = list(dict.fromkeys(
        [o.subject for o in observations if o.placeholder]
        + [other for o in observations for other, _ in o.grif if isinstance(other, str)]))
    if not labels:
        return {}
    if len(space.universe) > size_limit:
        raise InputError(f"Placeholder matching needs a universe of at most {size_limit} points")
    kind = GrifKind("zeta", tau)
    subsets = powerset(space.universe)
    unary = {label: [o for o in observations if o.subject == label] for label in labels}
    candidates = {label: [x for x in subsets if all(_fits(space, x, o) for o in unary[label])]
                  for label in labels}
    binary = [(o.subject, other, m) for o in observations for other, m in o.grif]

    def resolve(subject, assignment):
        return assignment.get(subject) if isinstance(subject, str) else subject

    def consistent(assignment):
        for a, b, m in binary:
            x, y = resolve(a, assignment), resolve(b, assignment)
            if x is None or y is None:
                continue
            if not (x <= set(space.universe) and y <= set(space.universe)):
                return False
            if grif_matrix(space, kind, x, y) != m:
                return False
        return True

    def search(i, assignment):
        if i == len(labels):
            return dict(assignment)
        label = labels[i]
        for x in candidates[label]:
            assignment[label] = x
            if consistent(assignment):
                found = search(i + 1, assignment)
                if found is not None:
                    return found
            del assignment[label]
        return None

    return search(0, {})


def model_consistent(model: CandidateModel, observations: Sequence[Observation], tau: InclusionFn = K0,
                     size_limit: int = CASE1_SIZE_LIMIT) -> bool:
    """Every concrete observation matches exactly and placeholders can be matched."""
    space = model.space()
    members = set(model.universe)
    kind = GrifKind("zeta", tau)
    for obs in observations:
        if obs.placeholder:
            continue
        if not obs.subject <= members or not _fits(space, obs.subject, obs):
            return False
        for other, m in obs.grif:
            if isinstance(other, str):
                continue
            if not other <= members or grif_matrix(space, kind, obs.subject, other) != m:
                return False
    if any(o.placeholder or any(isinstance(other, str) for other, _ in o.grif) for o in observations):
        return match_placeholders(space, observations, tau, size_limit) is not None
    return True


def _survives(model: CandidateModel, observations: Sequence[Observation], tau: InclusionFn,
              size_limit: int) -> bool:
    return model_consistent(model, observations, tau, size_limit)


def consistency_filter(models: Iterable[CandidateModel], observations: Sequence[Observation],
                       tau: InclusionFn = K0, workers: int = 1, progress: bool = False,
                       size_limit: int = CASE1_SIZE_LIMIT) -> List[CandidateModel]:
    """
    Keep the models that reproduce every observation exactly.

    Observation sets failing the feasibility test leave no survivors. With
    several workers the check runs in a process pool; survivors keep the
    input order either way.
    """
    observations = list(observations)
    if not feasibility_filter(m for o in observations for m in o.matrices()):
        logger.warning("Observed matrices cannot come from a set HGOS; no model survives")
        return []
    models = tqdm(models, desc="models", unit="model", disable=not progress)
    if not observations:
        return list(models)

    check = partial(_survives, observations=observations, tau=tau, size_limit=size_limit)
    if workers > 1:
        models = list(models)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            verdicts = list(pool.map(check, models, chunksize=256))
        survivors = [m for m, ok in zip(models, verdicts) if ok]
    else:
        survivors = [m for m in models if check(m)]
    logger.info("%d models survive", len(survivors))
    return survivors
