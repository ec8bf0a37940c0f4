"""Triangular norms, conorms, negations and residual implications on exact rationals."""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from itertools import product
from typing import Callable, Dict, Mapping, Optional, Sequence

from ..granular.errors import InputError, PreconditionError, UnsupportedError
from ..granular.rationals import ONE, ZERO, to_unit, grid as rational_grid
from ..granular.report import CheckResult, Report

logger = logging.getLogger(__name__)

BinaryOp = Callable[[Fraction, Fraction], Fraction]
UnaryOp = Callable[[Fraction], Fraction]
Table = Mapping

# Grid for checks when no table fixes the domain
DEFAULT_GRID_DENOMINATOR = 8


def t_min(a: Fraction, b: Fraction) -> Fraction:
    return min(a, b)


def t_product(a: Fraction, b: Fraction) -> Fraction:
    return a * b


def t_lukasiewicz(a: Fraction, b: Fraction) -> Fraction:
    return max(a + b - ONE, ZERO)


def s_max(a: Fraction, b: Fraction) -> Fraction:
    return max(a, b)


def s_probabilistic(a: Fraction, b: Fraction) -> Fraction:
    return a + b - a * b


def s_lukasiewicz(a: Fraction, b: Fraction) -> Fraction:
    return min(a + b, ONE)


def n_standard(a: Fraction) -> Fraction:
    return ONE - a


TNORMS: Dict[str, BinaryOp] = {
    "min": t_min,
    "product": t_product,
    "lukasiewicz": t_lukasiewicz,
}

SNORMS: Dict[str, BinaryOp] = {
    "max": s_max,
    "probabilistic": s_probabilistic,
    "lukasiewicz": s_lukasiewicz,
}

NEGATIONS: Dict[str, UnaryOp] = {
    "standard": n_standard,
}


def _table_op(table: Table, name: str):
    def op(*args):
        key = args if len(args) > 1 else args[0]
        try:
            return table[key]
        except KeyError:
            raise InputError(f"{name} table undefined at {key!r}") from None
    return op


@dataclass(frozen=True)
class NormTriple:
    """
    A t-norm, an s-norm and a negation.

    Built-ins are named; "custom" reads the operation from a finite table.
    The s-norm "derived" is n(n(a) ⊗ n(b)).
    """
    tnorm: str = "min"
    snorm: str = "max"
    negation: str = "standard"
    tnorm_table: Optional[Table] = field(default=None, compare=False)
    snorm_table: Optional[Table] = field(default=None, compare=False)
    negation_table: Optional[Table] = field(default=None, compare=False)

    def __post_init__(self):
        if self.tnorm not in TNORMS and self.tnorm != "custom":
            raise InputError(f"Unknown t-norm {self.tnorm!r}")
        if self.snorm not in SNORMS and self.snorm not in ("custom", "derived"):
            raise InputError(f"Unknown s-norm {self.snorm!r}")
        if self.negation not in NEGATIONS and self.negation != "custom":
            raise InputError(f"Unknown negation {self.negation!r}")
        for name, table, kind in (("tnorm", self.tnorm_table, "t"), ("snorm", self.snorm_table, "s")):
            if getattr(self, name) != "custom":
                continue
            if not table:
                raise InputError(f"Custom {name} needs a table")
            values = sorted({a for a, _ in table})
            report = check_norm_axioms(_table_op(table, name), values, kind)
            if not report.passed:
                names = ", ".join(r.name for r in report.failures())
                raise PreconditionError(f"Custom {name} table violates {names}")
        if self.negation == "custom" and not self.negation_table:
            raise InputError("Custom negation needs a table")

    def t(self, a: Fraction, b: Fraction) -> Fraction:
        if self.tnorm == "custom":
            return _table_op(self.tnorm_table, "tnorm")(a, b)
        return TNORMS[self.tnorm](a, b)

    def n(self, a: Fraction) -> Fraction:
        if self.negation == "custom":
            return _table_op(self.negation_table, "negation")(a)
        return NEGATIONS[self.negation](a)

    def s(self, a: Fraction, b: Fraction) -> Fraction:
        if self.snorm == "derived":
            return self.n(self.t(self.n(a), self.n(b)))
        if self.snorm == "custom":
            return _table_op(self.snorm_table, "snorm")(a, b)
        return SNORMS[self.snorm](a, b)

    @property
    def label(self) -> str:
        return f"({self.tnorm}, {self.snorm})"


@dataclass
class NegationFlags:
    """Which negation conditions a unary map satisfies on a grid."""
    boundary: bool
    anti_monotone: bool
    weak: bool
    strong: bool
    witnesses: Dict[str, object] = field(default_factory=dict)

    @property
    def is_negation(self) -> bool:
        return self.boundary and self.anti_monotone and self.weak


def norm_eval(nt: NormTriple, kind: str, args: Sequence) -> Fraction:
    """
    Evaluate one operation of a norm triple.

    Args:
        nt: Norm triple
        kind: "t" or "s" (left fold over one or more operands), "n" or "residual"
        args: Operands in [0, 1] (p/q strings accepted)

    Returns:
        Exact result
    """
    values = [to_unit(a) for a in args]
    if not values:
        raise InputError("At least one operand is required")
    if kind in ("t", "s"):
        op = nt.t if kind == "t" else nt.s
        return reduce(op, values)
    arity = {"n": 1, "residual": 2}.get(kind)
    if arity is None:
        raise InputError(f"Unknown operation {kind!r}")
    if len(values) != arity:
        raise InputError(f"{kind} takes {arity} operands, got {len(values)}")
    if kind == "n":
        return nt.n(values[0])
    return residual_implication(nt.tnorm, *values)


def negation_check(n, grid: Sequence[Fraction]) -> NegationFlags:
    """
    Check I (n(0)=1, n(1)=0), anti-monotonicity, weak (a ≤ n(n(a))) and
    strong (n(n(a)) = a) on a grid. `n` is a table or a callable.
    """
    op = _table_op(n, "negation") if isinstance(n, Mapping) else n

    def safe(a):
        try:
            return op(a)
        except InputError:
            return None

    grid = sorted(grid)
    flags = NegationFlags(True, True, True, True)
    if safe(ZERO) != ONE or safe(ONE) != ZERO:
        flags.boundary = False
        flags.witnesses["I"] = (ZERO, ONE)
    for a, b in product(grid, repeat=2):
        if a <= b:
            na, nb = safe(a), safe(b)
            if na is None or nb is None or nb > na:
                flags.anti_monotone = False
                flags.witnesses.setdefault("anti_monotone", (a, b))
    for a in grid:
        na = safe(a)
        nna = safe(na) if na is not None else None
        if nna is None or not a <= nna:
            flags.weak = False
            flags.witnesses.setdefault("weak", a)
        if nna != a:
            flags.strong = False
            flags.witnesses.setdefault("strong", a)
    return flags


def derive_snorm(nt: NormTriple, grid: Optional[Sequence[Fraction]] = None) -> NormTriple:
    """
    The triple whose s-norm is n(n(a) ⊗ n(b)).

    The negation must be strong and the derived operation must pass the
    s-norm axioms on the grid: the custom tables' domain when there is one,
    eighths otherwise.
    """
    if grid:
        domain = sorted(grid)
    elif nt.negation == "custom":
        domain = sorted(nt.negation_table)
    elif nt.tnorm == "custom":
        domain = sorted({a for a, _ in nt.tnorm_table})
    else:
        domain = list(rational_grid(DEFAULT_GRID_DENOMINATOR))
    if nt.negation == "custom" and not negation_check(nt.negation_table, domain).strong:
        raise PreconditionError("Derived s-norm needs a strong negation")
    logger.debug("Deriving s-norm from %s and %s negation", nt.tnorm, nt.negation)
    derived = NormTriple(nt.tnorm, "derived", nt.negation, nt.tnorm_table, None, nt.negation_table)
    report = check_norm_axioms(derived.s, domain, "s")
    if not report.passed:
        failure = report.failures()[0]
        raise PreconditionError(f"Derived s-norm violates {failure.name} at {failure.witness!r}")
    return derived


def residual_implication(tnorm: str, a: Fraction, b: Fraction) -> Fraction:
    """sup{c : c ⊗ a ≤ b} in closed form for the built-in t-norms."""
    if tnorm == "min":
        return ONE if a <= b else b
    if tnorm == "product":
        return ONE if a <= b else b / a
    if tnorm == "lukasiewicz":
        return min(ONE, ONE - a + b)
    raise UnsupportedError(f"No closed-form residuum for t-norm {tnorm!r}")


def residual_oracle(nt: NormTriple, a: Fraction, b: Fraction, grid: Sequence[Fraction]) -> Fraction:
    """Largest grid point c with c ⊗ a ≤ b."""
    return max(c for c in grid if nt.t(c, a) <= b)


def check_norm_axioms(op: BinaryOp, grid: Sequence[Fraction], kind: str) -> Report:
    """
    Boundary (t: a ⊗ 1 = a, s: a ⊕ 0 = a), commutativity, monotonicity and
    associativity on a grid. Associativity is only evaluated where the
    intermediate values stay inside the operation's domain.
    """
    if kind not in ("t", "s"):
        raise InputError(f"Unknown norm kind {kind!r}")
    unit = ONE if kind == "t" else ZERO
    report = Report(f"{kind}-norm axioms")

    def safe(a, b):
        try:
            return op(a, b)
        except InputError:
            return None

    witness = next((a for a in grid if safe(a, unit) != a), None)
    report.add(CheckResult.of("boundary", witness is None, witness))
    witness = next(((a, b) for a, b in product(grid, repeat=2) if safe(a, b) != safe(b, a)), None)
    report.add(CheckResult.of("commutativity", witness is None, witness))
    witness = None
    for a, b, c in product(grid, repeat=3):
        if a <= b:
            left, right = safe(a, c), safe(b, c)
            if left is None or right is None or left > right:
                witness = (a, b, c)
                break
    report.add(CheckResult.of("monotonicity", witness is None, witness))
    witness = None
    for a, b, c in product(grid, repeat=3):
        ab, bc = safe(a, b), safe(b, c)
        if ab is None or bc is None:
            continue
        left, right = safe(ab, c), safe(a, bc)
        if left is not None and right is not None and left != right:
            witness = (a, b, c)
            break
    report.add(CheckResult.of("associativity", witness is None, witness))
    return report
