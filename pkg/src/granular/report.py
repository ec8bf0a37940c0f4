"""Check reports: one row per axiom, theorem or property."""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

HOLDS = "holds"
FAILS = "fails"
VACUOUS = "vacuous"
NOT_APPLICABLE = "not_applicable"
CONFIRMED = "confirmed"
REFUTED = "refuted"

_PASSING = {HOLDS, VACUOUS, NOT_APPLICABLE, CONFIRMED}


@dataclass
class CheckResult:
    """Outcome of a single check."""
    name: str
    status: str
    witness: Optional[Any] = None
    note: str = ""
    finding: bool = False

    @property
    def holds(self) -> bool:
        return self.status in (HOLDS, CONFIRMED, VACUOUS)

    @property
    def ok(self) -> bool:
        """Passing, or a documented refutation that does not count as failure."""
        return self.status in _PASSING or self.finding

    @classmethod
    def of(cls, name: str, holds: bool, witness: Any = None, note: str = "") -> "CheckResult":
        return cls(name, HOLDS if holds else FAILS, None if holds else witness, note)


@dataclass
class Report:
    """Ordered collection of check results with free-form annotations."""
    title: str
    results: List[CheckResult] = field(default_factory=list)
    annotations: List[str] = field(default_factory=list)

    def add(self, result: CheckResult) -> CheckResult:
        self.results.append(result)
        return result

    def extend(self, results) -> None:
        self.results.extend(results)

    def annotate(self, text: str) -> None:
        self.annotations.append(text)

    def __getitem__(self, name: str) -> CheckResult:
        for result in self.results:
            if result.name == name:
                return result
        raise KeyError(name)

    def __contains__(self, name: str) -> bool:
        return any(result.name == name for result in self.results)

    @property
    def passed(self) -> bool:
        return all(result.ok for result in self.results)

    def failures(self) -> List[CheckResult]:
        return [result for result in self.results if not result.ok]

    def to_dict(self, encode=None) -> Dict[str, Any]:
        """Plain dict for JSON output; `encode` converts witnesses."""
        encode = encode or (lambda value: value)
        return {
            "title": self.title,
            "passed": self.passed,
            "results": [
                {
                    "name": r.name,
                    "status": r.status,
                    "witness": encode(r.witness) if r.witness is not None else None,
                    "note": r.note,
                    "finding": r.finding,
                }
                for r in self.results
            ],
            "annotations": list(self.annotations),
        }


def omega_equal(left: Any, right: Any) -> bool:
    """Equality read as "if both sides are defined then they are equal"."""
    return left is None or right is None or left == right
