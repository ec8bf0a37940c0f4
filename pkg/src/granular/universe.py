"""Finite universes, subsets and their canonical ordering."""

from itertools import combinations
from typing import FrozenSet, Hashable, Iterable, List, Optional, Sequence, Union

from .errors import InputError

Element = Hashable
Subset = FrozenSet[Element]

EMPTY: Subset = frozenset()


def validate_universe(elements: Iterable[Element]) -> tuple:
    """Return the universe as a tuple, rejecting duplicates."""
    universe = tuple(elements)
    if len(set(universe)) != len(universe):
        raise InputError("Universe contains duplicate elements")
    return universe


def subset_mask(subset: Iterable[Element], universe: Sequence[Element]) -> int:
    """Bitmask of a subset, bit i standing for universe[i]."""
    index = {x: i for i, x in enumerate(universe)}
    mask = 0
    for x in subset:
        if x not in index:
            raise InputError(f"Element {x!r} is not in the universe")
        mask |= 1 << index[x]
    return mask


def from_mask(mask: int, universe: Sequence[Element]) -> Subset:
    return frozenset(x for i, x in enumerate(universe) if mask >> i & 1)


def powerset(universe: Sequence[Element], limit: Optional[int] = None) -> List[Subset]:
    """
    All subsets in bitmask order (binary counting over universe positions).

    Args:
        universe: Ordered elements
        limit: Refuse universes larger than this

    Returns:
        List of frozensets, starting with the empty set
    """
    if limit is not None and len(universe) > limit:
        raise InputError(
            f"Powerset of {len(universe)} elements exceeds the limit of {limit}; "
            "pass an explicit family"
        )
    return [from_mask(mask, universe) for mask in range(1 << len(universe))]


def subsets_by_size(universe: Sequence[Element]) -> List[Subset]:
    """All subsets ordered by size, then lexicographically by position."""
    result = []
    for size in range(len(universe) + 1):
        result.extend(frozenset(c) for c in combinations(universe, size))
    return result


def canonical(subset: Iterable[Element], universe: Optional[Sequence[Element]] = None) -> List[Element]:
    """Elements of a subset in universe order (string order for strangers)."""
    items = list(subset)
    if universe is None:
        return sorted(items, key=str)
    position = {x: i for i, x in enumerate(universe)}
    return sorted(items, key=lambda x: (position.get(x, len(position)), str(x)))


def sort_key(subset: Iterable[Element], universe: Sequence[Element]):
    """Deterministic ordering key for subsets: size first, then positions."""
    position = {x: i for i, x in enumerate(universe)}
    positions = sorted(position.get(x, len(position)) for x in subset)
    return (len(positions), positions)


def parse_subset(value: Union[str, Iterable[Element], None], universe: Optional[Sequence[Element]] = None) -> Subset:
    """
    Parse a subset given as a list or a comma separated string.

    An empty string, "{}" and None denote the empty set.
    """
    if value is None:
        return EMPTY
    if isinstance(value, str):
        text = value.strip()
        if text in ("", "{}", "∅"):
            return EMPTY
        items = [item.strip() for item in text.strip("{}").split(",") if item.strip()]
    else:
        items = list(value)
    result = frozenset(items)
    if universe is not None:
        unknown = [x for x in items if x not in set(universe)]
        if unknown:
            raise InputError(f"Unknown elements {unknown!r}")
    return result


def label(subset: Iterable[Element], universe: Optional[Sequence[Element]] = None) -> str:
    """Compact text label used by aligned tables: "{a,b}" or "∅"."""
    items = canonical(subset, universe)
    if not items:
        return "∅"
    return "{" + ",".join(str(x) for x in items) + "}"
