"""Rough inclusion functions, their axiom profile and the measures built on them."""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Hashable, Iterable, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from ..granular.errors import InputError, PreconditionError, UnsupportedError
from ..granular.rationals import ONE, ZERO, parse_rational, ratio, to_unit
from ..granular.report import NOT_APPLICABLE, CheckResult, Report
from ..granular.spaces import SetHgos
from ..granular.universe import Subset
from .axioms import AXIOMS, BOTTOM_AXIOMS, RifDomain, evaluate, first_witness, scale_values

logger = logging.getLogger(__name__)

KINDS = ("K0", "K1", "K2", "Kst", "custom")
PARAMETRIC_KINDS = ("low", "up", "glow", "gup", "lowR", "upR", "lowRg", "upRg")

# Classes from strongest to weakest with their defining axioms.
CLASSES = (
    ("RIF", ("R1", "R2")),
    ("qRIF", ("R0", "R2")),
    ("wqRIF", ("R0", "R3")),
)


@dataclass(frozen=True)
class InclusionFn:
    """
    A rough inclusion function.

    K0 = #(A∩B)/#A, K1 = #B/#(A∪B), K2 = #(Aᶜ∪B)/#⊤, each 1 on an empty
    denominator. Kst rescales a base function through the thresholds s < t.
    "custom" reads values from a table keyed by (A, B).
    """
    kind: str = "K0"
    base: Optional["InclusionFn"] = None
    s: Fraction = ZERO
    t: Fraction = ONE
    table: Optional[Mapping] = field(default=None, compare=False, hash=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InputError(f"Unknown inclusion function {self.kind!r}")
        if self.kind == "Kst":
            if self.base is None:
                object.__setattr__(self, "base", InclusionFn("K0"))
            s, t = to_unit(self.s), to_unit(self.t)
            if not s < t:
                raise InputError(f"Kst needs 0 ≤ s < t ≤ 1, got s={s}, t={t}")
            object.__setattr__(self, "s", s)
            object.__setattr__(self, "t", t)
        if self.kind == "custom" and not self.table:
            raise InputError("Custom inclusion function needs a table")

    @classmethod
    def kst(cls, s, t, base: Optional["InclusionFn"] = None) -> "InclusionFn":
        return cls("Kst", base or cls("K0"), parse_rational(s), parse_rational(t))

    @property
    def label(self) -> str:
        if self.kind == "Kst":
            return f"Kst({self.base.label}, {self.s}, {self.t})"
        return self.kind

    def __call__(self, A, B, space=None) -> Fraction:
        return eval_rif(self, A, B, space)


K0 = InclusionFn("K0")
K1 = InclusionFn("K1")


@dataclass
class RifProfile:
    """Axiom flags of one inclusion function on one space (None when not applicable)."""
    flags: Dict[str, Optional[bool]]
    report: Report

    def __getitem__(self, axiom: str) -> Optional[bool]:
        return self.flags[axiom]

    @property
    def classes(self) -> Tuple[str, ...]:
        """Every class whose defining axioms hold; RIF ⇒ qRIF ⇒ wqRIF."""
        return tuple(name for name, axioms in CLASSES if all(self.flags.get(a) for a in axioms))

    @property
    def classification(self) -> str:
        classes = self.classes
        return classes[0] if classes else "none"

    def to_dict(self, encode=None) -> Dict:
        data = self.report.to_dict(encode)
        data["classification"] = self.classification
        data["classes"] = list(self.classes)
        return data


def _finite(x) -> frozenset:
    if not isinstance(x, (set, frozenset)):
        raise UnsupportedError(f"Cardinality-based inclusion needs finite sets, got {x!r}")
    return frozenset(x)


def eval_rif(f: InclusionFn, A, B, space=None) -> Fraction:
    """
    Evaluate ν(A, B).

    Args:
        f: Inclusion function
        A, B: Elements (finite sets for K0, K1, K2 and Kst over them)
        space: Hosting space; required for K2 (complement and ⊤) and used
            to validate membership when given

    Returns:
        Exact value in [0, 1]
    """
    if space is not None:
        for x in (A, B):
            if x not in space:
                raise InputError(f"{x!r} is not an element of the space")

    if f.kind == "custom":
        try:
            return f.table[(A, B)]
        except KeyError:
            raise InputError(f"Inclusion table undefined at ({A!r}, {B!r})") from None
    if f.kind == "Kst":
        value = eval_rif(f.base, A, B, space)
        if value <= f.s:
            return ZERO
        if value >= f.t:
            return ONE
        return (value - f.s) / (f.t - f.s)

    A, B = _finite(A), _finite(B)
    if f.kind == "K0":
        return ratio(len(A & B), len(A))
    if f.kind == "K1":
        return ratio(len(B), len(A | B))
    # K2
    if not isinstance(space, SetHgos) or not space.complement_closed:
        raise UnsupportedError("K2 needs a set HGOS whose family is closed under complement")
    top = space.top
    return ratio(len((top - A) | B), len(top))


def kappa_matrix(f: InclusionFn, s) -> np.ndarray:
    """Values of f over every ordered pair of space elements, shape (1, m, m)."""
    elements = s.elements()
    values = np.empty((1, len(elements), len(elements)), dtype=object)
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            values[0, i, j] = eval_rif(f, a, b, s)
    return values


def check_rif_axioms(f: InclusionFn, s) -> RifProfile:
    """
    Profile an inclusion function on every pair (and triple) of space elements.

    Axioms mentioning ⊥ are not applicable without a bottom; R6 is not
    applicable unless every element has a complement.
    """
    domain = RifDomain.from_space(s)
    values = kappa_matrix(f, s)
    K, scale = scale_values(values)
    logger.debug("Profiling %s over %d elements (scale %d)", f.label, domain.size, scale)

    skipped = {}
    if domain.bottom is None:
        skipped.update({axiom: "space has no bottom" for axiom in BOTTOM_AXIOMS})
    elif not domain.complemented:
        skipped["R6"] = "complementation is not defined on every element"

    report = Report(f"{f.label} axioms")
    active = [axiom for axiom in AXIOMS if axiom not in skipped]
    holds = evaluate(domain, K, scale, active)
    flags: Dict[str, Optional[bool]] = {}
    for axiom in AXIOMS:
        if axiom in skipped:
            flags[axiom] = None
            report.add(CheckResult(axiom, NOT_APPLICABLE, note=skipped[axiom]))
            report.annotate(f"{axiom} skipped: {skipped[axiom]}")
            continue
        ok = bool(holds[axiom][0])
        flags[axiom] = ok
        witness = None if ok else first_witness(domain, K, axiom, scale)
        report.add(CheckResult.of(axiom, ok, witness))
    return RifProfile(flags, report)


# --- measures ------------------------------------------------------------------

def accuracy(s: SetHgos, x: Subset) -> Fraction:
    """#(xˡ)/#(xᵘ) = ν(xᵘ, xˡ); 1 when xᵘ is empty."""
    lower, upper = s.lower(x), s.upper(x)
    return eval_rif(K0, upper, lower)


def misclassification(A, B, f: InclusionFn = K0, space=None) -> Fraction:
    """μ(A, B) = 1 − ν(A, B)."""
    return ONE - eval_rif(f, A, B, space)


def check_misclassification(s: SetHgos) -> CheckResult:
    """μ(A, B) = ν(A, Bᶜ) over nonempty A when the family is complement closed."""
    if not s.complement_closed:
        return CheckResult("μ(A,B) = ν(A,Bᶜ)", NOT_APPLICABLE, note="family not closed under complement")
    for A in s.family:
        if not A:
            continue
        for B in s.family:
            if misclassification(A, B) != eval_rif(K0, A, s.top - B):
                return CheckResult.of("μ(A,B) = ν(A,Bᶜ)", False, (A, B))
    return CheckResult.of("μ(A,B) = ν(A,Bᶜ)", True, note="A ranges over nonempty elements")


def vprs_approx(s: SetHgos, X: Subset, alpha, beta, fixed: bool = False,
                f: InclusionFn = K0) -> Tuple[Subset, Subset]:
    """
    Generalized variable precision approximations.

    lower = ∪{g : ν(g, X) > β}, upper = ∪{g : ν(g, X) > α}; the fixed
    variant measures against Xˡ instead of X.

    Args:
        s: Set HGOS
        X: Element to approximate
        alpha, beta: Thresholds with 0 < α ≤ β < 1
        fixed: Use the fixed variant
        f: Inclusion function

    Returns:
        (lower, upper), both unions of granules
    """
    alpha, beta = parse_rational(alpha), parse_rational(beta)
    if not (0 < alpha <= beta < 1):
        raise InputError(f"Need 0 < α ≤ β < 1, got α={alpha}, β={beta}")
    X = frozenset(X)
    target = s.lower(X) if fixed else X
    scores = [(g, eval_rif(f, g, target)) for g in s.granulation]
    lower = frozenset().union(*(g for g, v in scores if v > beta))
    upper = frozenset().union(*(g for g, v in scores if v > alpha))
    return lower, upper


def _validate_tolerance(universe: Sequence[Hashable], R: Iterable[Tuple[Hashable, Hashable]]) -> frozenset:
    R = frozenset(R)
    for x in universe:
        if (x, x) not in R:
            raise InputError(f"Relation is not reflexive at {x!r}")
    for a, b in R:
        if (b, a) not in R:
            raise InputError(f"Relation is not symmetric at ({a!r}, {b!r})")
    return R


def parametric_approx(universe: Sequence[Hashable], xi: Mapping[Hashable, Subset], h: InclusionFn,
                      X: Subset, kind: str, R: Optional[Iterable] = None) -> Union[Subset, Tuple[Subset, ...]]:
    """
    Pointwise and granular approximations of a parameterized approximation space.

    Args:
        universe: Objects
        xi: Uncertainty function x ↦ ξ(x)
        h: Inclusion function
        X: Set to approximate
        kind: low, up, glow, gup, lowR, upR, lowRg or upRg
        R: Tolerance for the R variants; the guard reads ∀a (Rxa ⇒ h(ξ(a), X) ...)

    Returns:
        A set of objects, a family of neighborhoods (glow, gup) or a union of
        neighborhoods (Rg variants)
    """
    if kind not in PARAMETRIC_KINDS:
        raise InputError(f"Unknown approximation kind {kind!r}")
    missing = [x for x in universe if x not in xi]
    if missing:
        raise PreconditionError(f"ξ undefined at {missing[0]!r}")
    X = frozenset(X)
    values = {x: eval_rif(h, frozenset(xi[x]), X) for x in universe}

    def certain(x):
        return values[x] == ONE

    def possible(x):
        return values[x] > 0

    if kind in ("low", "up"):
        test = certain if kind == "low" else possible
        return frozenset(x for x in universe if test(x))
    if kind in ("glow", "gup"):
        test = certain if kind == "glow" else possible
        return tuple(dict.fromkeys(frozenset(xi[x]) for x in universe if test(x)))

    if R is None:
        raise InputError(f"{kind} needs a tolerance relation")
    R = _validate_tolerance(universe, R)
    test = certain if kind.startswith("low") else possible
    guarded = [x for x in universe if all(test(a) for a in universe if (x, a) in R)]
    if kind in ("lowR", "upR"):
        return frozenset(guarded)
    return frozenset().union(*(frozenset(xi[x]) for x in guarded))
