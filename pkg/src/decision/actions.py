"""Action catalogs: named transformations of space elements."""

import logging
from dataclasses import dataclass
from typing import Iterator, List, Mapping, Optional, Sequence, Tuple

from ..granular.errors import InputError, PreconditionError
from ..granular.universe import Subset

OPERATIONS = ("union", "difference", "intersection", "replace", "lower", "upper", "identity")


@dataclass(frozen=True)
class Action:
    """A named effect; `operand` is ignored by lower, upper and identity."""
    name: str
    op: str
    operand: Subset = frozenset()

    def __post_init__(self):
        if self.op not in OPERATIONS:
            raise InputError(f"Unknown action operation {self.op!r} for {self.name!r}")


class ActionCatalog:
    """Ordered actions available at one decision point of a scenario."""

    def __init__(self, space, actions: Sequence[Action]):
        """
        Initialize the catalog.

        Args:
            space: Space the effects act on
            actions: Actions in catalog order (the final tie-breaker)
        """
        self.logger = logging.getLogger(__name__)
        self.space = space
        self.actions: Tuple[Action, ...] = tuple(actions)
        self._by_name = {}
        for action in self.actions:
            key = self._normalize_action_name(action.name)
            if key in self._by_name:
                raise InputError(f"Duplicate action name {action.name!r}")
            if action.op not in ("lower", "upper", "identity") and not action.operand <= set(space.universe):
                raise InputError(f"Operand of {action.name!r} leaves the universe")
            self._by_name[key] = action

    @classmethod
    def from_mapping(cls, space, mapping: Mapping[str, Mapping]) -> "ActionCatalog":
        """Build from {name: {"op": ..., "operand": [...]}} in insertion order."""
        actions = [Action(name, spec.get("op", "identity"), frozenset(spec.get("operand", ())))
                   for name, spec in mapping.items()]
        return cls(space, actions)

    def __len__(self) -> int:
        return len(self.actions)

    def __iter__(self) -> Iterator[Action]:
        return iter(self.actions)

    @property
    def names(self) -> List[str]:
        return [action.name for action in self.actions]

    def index(self, action: Action) -> int:
        return self.actions.index(action)

    def get(self, name: str) -> Optional[Action]:
        return self._by_name.get(self._normalize_action_name(name))

    @staticmethod
    def _normalize_action_name(name: str) -> str:
        if not name:
            return ""
        return str(name).strip().lower()

    def apply(self, action, state: Subset) -> Subset:
        """
        Effect of an action on a state.

        Args:
            action: Action or its name
            state: Current element

        Returns:
            Resulting element, which must belong to the space
        """
        if isinstance(action, str):
            found = self.get(action)
            if found is None:
                raise InputError(f"Unknown action {action!r}")
            action = found

        op = action.op
        if op == "union":
            result = state | action.operand
        elif op == "difference":
            result = state - action.operand
        elif op == "intersection":
            result = state & action.operand
        elif op == "replace":
            result = action.operand
        elif op == "lower":
            result = self.space.lower(state)
        elif op == "upper":
            result = self.space.upper(state)
        else:
            result = state

        if result not in self.space:
            raise PreconditionError(f"Action {action.name!r} leads outside the space")
        self.logger.debug("%s: %s -> %s", action.name, sorted(state, key=str), sorted(result, key=str))
        return result

    def outcomes(self, state: Subset) -> List[Tuple[Action, Subset]]:
        return [(action, self.apply(action, state)) for action in self.actions]
