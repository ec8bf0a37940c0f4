"""
Granular rough inclusion functions.

A GRIF compares the approximations of two elements and returns a 2×2
matrix laid out as [[ll, lu], [ul, uu]]: rows follow the first argument's
lower/upper approximation, columns the second's.
"""

import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Callable, Dict, Iterable, List, Mapping, NamedTuple, Optional, Sequence, Tuple, Union

from ..granular.errors import InputError, PreconditionError
from ..granular.rationals import ONE, ZERO, format_rational, parse_rational, ratio
from ..granular.report import CONFIRMED, NOT_APPLICABLE, REFUTED, VACUOUS, CheckResult, Report
from ..granular.spaces import GgsMorphism, SetHgos, check_morphism
from ..granular.universe import Subset
from .norms import NormTriple
from .rif import K0, InclusionFn, check_rif_axioms, eval_rif

logger = logging.getLogger(__name__)

SIGMA = ("l", "u")
ENTRIES = ("ll", "lu", "ul", "uu")
GRIF_TAGS = ("basic", "cobasic", "zeta", "one_certain", "two_certain", "hasty", "phi")


@dataclass(frozen=True)
class GrifMatrix:
    """Entries of a granular inclusion matrix; values outside [0, 1] are legal."""
    ll: Fraction
    lu: Fraction
    ul: Fraction
    uu: Fraction

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "GrifMatrix":
        (ll, lu), (ul, uu) = rows
        return cls(*(parse_rational(v) for v in (ll, lu, ul, uu)))

    @classmethod
    def from_dict(cls, data: Mapping) -> "GrifMatrix":
        try:
            return cls(*(parse_rational(data[key]) for key in ENTRIES))
        except KeyError as e:
            raise InputError(f"Matrix is missing entry {e.args[0]!r}") from None

    @classmethod
    def constant(cls, value) -> "GrifMatrix":
        value = parse_rational(value)
        return cls(value, value, value, value)

    @classmethod
    def zero(cls) -> "GrifMatrix":
        return cls.constant(ZERO)

    @classmethod
    def ones(cls) -> "GrifMatrix":
        return cls.constant(ONE)

    @classmethod
    def unit(cls) -> "GrifMatrix":
        """Neutral element of the matrix conjunction under (min, max)."""
        return cls(ONE, ZERO, ZERO, ONE)

    @property
    def entries(self) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.ll, self.lu, self.ul, self.uu)

    @property
    def rows(self) -> Tuple[Tuple[Fraction, Fraction], Tuple[Fraction, Fraction]]:
        return ((self.ll, self.lu), (self.ul, self.uu))

    def entry(self, sigma: str, pi: str) -> Fraction:
        return getattr(self, sigma + pi)

    @property
    def out_of_range(self) -> bool:
        return any(v < 0 or v > 1 for v in self.entries)

    def to_dict(self) -> Dict[str, str]:
        return {key: format_rational(value) for key, value in zip(ENTRIES, self.entries)}

    def __str__(self) -> str:
        ll, lu, ul, uu = (str(v) for v in self.entries)
        return f"[[{ll}, {lu}], [{ul}, {uu}]]"


@dataclass(frozen=True)
class GrifKind:
    """Which GRIF to compute; hasty and phi carry a morphism into a set HGOS."""
    tag: str = "zeta"
    tau: InclusionFn = K0
    morphism: Optional[GgsMorphism] = None

    def __post_init__(self):
        if self.tag not in GRIF_TAGS:
            raise InputError(f"Unknown GRIF kind {self.tag!r}")
        if self.tag in ("hasty", "phi"):
            if self.morphism is None:
                raise PreconditionError(f"{self.tag} GRIF needs a morphism")
            if not isinstance(self.morphism.target, SetHgos):
                raise PreconditionError(f"{self.tag} GRIF needs a morphism into a set HGOS")
            report = check_morphism(self.morphism)
            if not report.passed:
                names = ", ".join(r.name for r in report.failures())
                raise PreconditionError(f"Map is not a morphism ({names} fail)")

    @property
    def label(self) -> str:
        if self.tag in ("basic", "cobasic"):
            return self.tag
        return f"{self.tag}({self.tau.label})"


ZETA_K0 = GrifKind("zeta", K0)


def _approx(s, x, which: str):
    value = s.lower(x) if which == "l" else s.upper(x)
    if value is None:
        raise PreconditionError(f"{'Lower' if which == 'l' else 'Upper'} approximation of {x!r} is undefined")
    return value


def _require(s, *xs) -> None:
    for x in xs:
        if x not in s:
            raise InputError(f"{x!r} is not an element of the space")


def _definite(s, x) -> bool:
    return s.lower(x) == x and s.upper(x) == x


def grif_matrix(s, kind: GrifKind, A, B) -> Union[GrifMatrix, Tuple[Fraction, Fraction]]:
    """
    Compute a GRIF value.

    Args:
        s: Space holding A and B
        kind: GRIF kind
        A, B: Elements

    Returns:
        GrifMatrix, or a pair for the 1-certain and 2-certain kinds
    """
    _require(s, A, B)
    tag = kind.tag
    if tag == "one_certain":
        if not _definite(s, A):
            raise PreconditionError(f"1-certain GRIF needs a definite first argument, got {A!r}")
        return (eval_rif(kind.tau, A, _approx(s, B, "l"), s), eval_rif(kind.tau, A, _approx(s, B, "u"), s))
    if tag == "two_certain":
        if not _definite(s, B):
            raise PreconditionError(f"2-certain GRIF needs a definite second argument, got {B!r}")
        return (eval_rif(kind.tau, _approx(s, A, "l"), B, s), eval_rif(kind.tau, _approx(s, A, "u"), B, s))

    a = {sigma: _approx(s, A, sigma) for sigma in SIGMA}
    b = {pi: _approx(s, B, pi) for pi in SIGMA}

    if tag == "zeta":
        value = lambda sigma, pi: eval_rif(kind.tau, a[sigma], b[pi], s)
    elif tag == "basic":
        value = lambda sigma, pi: ratio(len(a[sigma] & b[pi]), len(a[sigma]))
    elif tag == "cobasic":
        value = lambda sigma, pi: ratio(len(a[sigma] & b[pi]), len(a[pi]))
    else:
        m = kind.morphism
        if m.source is not s:
            raise PreconditionError("Morphism does not start at this space")
        if tag == "hasty":
            value = lambda sigma, pi: ratio(len(m(a[sigma]) & m(b[pi])), len(m(a[sigma])))
        else:
            def value(sigma, pi):
                meet = s.meet(a[sigma], b[pi])
                if meet is None:
                    raise PreconditionError(f"{a[sigma]!r} ∧ {b[pi]!r} is undefined")
                return ratio(len(m(meet)), len(m(a[sigma])))

    return GrifMatrix(*(value(sigma, pi) for sigma, pi in product(SIGMA, SIGMA)))


def zeta(s, A, B, tau: InclusionFn = K0) -> GrifMatrix:
    return grif_matrix(s, GrifKind("zeta", tau), A, B)


# --- algebra -------------------------------------------------------------------

def matrix_combine(x: GrifMatrix, y: GrifMatrix, kind: str, nt: NormTriple) -> GrifMatrix:
    """
    Combine two matrices.

    disj is entrywise ⊕, conj is the (⊗, ⊕) matrix product and hprod the
    entrywise product.
    """
    if kind == "disj":
        return GrifMatrix(*(nt.s(p, q) for p, q in zip(x.entries, y.entries)))
    if kind == "hprod":
        return GrifMatrix(*(p * q for p, q in zip(x.entries, y.entries)))
    if kind == "conj":
        xr, yr = x.rows, y.rows
        return GrifMatrix(*(nt.s(nt.t(xr[i][0], yr[0][j]), nt.t(xr[i][1], yr[1][j]))
                            for i, j in product(range(2), repeat=2)))
    raise InputError(f"Unknown matrix operation {kind!r}")


def matrix_leq(x: GrifMatrix, y: GrifMatrix) -> bool:
    return all(p <= q for p, q in zip(x.entries, y.entries))


def matrix_lt(x: GrifMatrix, y: GrifMatrix) -> bool:
    return x != y and matrix_leq(x, y)


def matrix_meet(*ms: GrifMatrix) -> GrifMatrix:
    """Entrywise minimum, the greatest lower bound under ⪯."""
    return GrifMatrix(*(min(values) for values in zip(*(m.entries for m in ms))))


class _MatrixAlgebra:
    """Interned matrices with memoised operations for the semiring scan."""

    def __init__(self, nt: NormTriple):
        self.nt = nt
        self.matrices: List[GrifMatrix] = []
        self._ids: Dict[GrifMatrix, int] = {}
        self._memo: Dict[Tuple[str, int, int], int] = {}

    def intern(self, m: GrifMatrix) -> int:
        index = self._ids.get(m)
        if index is None:
            index = self._ids[m] = len(self.matrices)
            self.matrices.append(m)
        return index

    def op(self, kind: str, i: int, j: int) -> int:
        key = (kind, i, j)
        result = self._memo.get(key)
        if result is None:
            combined = matrix_combine(self.matrices[i], self.matrices[j], kind, self.nt)
            result = self._memo[key] = self.intern(combined)
        return result

    def disj(self, i: int, j: int) -> int:
        return self.op("disj", i, j)

    def conj(self, i: int, j: int) -> int:
        return self.op("conj", i, j)


def check_semiring(nt: NormTriple, grid: Sequence[Fraction], exhaustive_points: int = 3,
                   sample_size: int = 20000, seed: int = 7) -> Report:
    """
    Semiring laws of (matrices, ⋎, ⋏, 0, 1) for one choice of norms.

    All triples are scanned when the grid has at most `exhaustive_points`
    values; otherwise `sample_size` seeded random triples are drawn.
    """
    report = Report(f"matrix semiring {nt.label}")
    report.annotate("⊕ in the matrix product is the s-norm; distributivity needs ⊕ = max")
    algebra = _MatrixAlgebra(nt)
    base = [algebra.intern(GrifMatrix(*entries)) for entries in product(grid, repeat=4)]
    zero = algebra.intern(GrifMatrix.zero())
    unit = algebra.intern(GrifMatrix.unit())

    if len(grid) <= exhaustive_points:
        triples: Iterable = product(base, repeat=3)
        mode = f"exhaustive over {len(base)} matrices"
    else:
        rng = random.Random(seed)
        triples = [(rng.choice(base), rng.choice(base), rng.choice(base)) for _ in range(sample_size)]
        mode = f"{sample_size} sampled triples (seed {seed})"
    report.annotate(mode)
    logger.info("Semiring check for %s: %s", nt.label, mode)

    d, c = algebra.disj, algebra.conj
    laws: Dict[str, Callable[[int, int, int], bool]] = {
        "⋎ commutative": lambda x, y, z: d(x, y) == d(y, x),
        "⋎ associative": lambda x, y, z: d(d(x, y), z) == d(x, d(y, z)),
        "⋎ neutral 0": lambda x, y, z: d(x, zero) == x,
        "⋏ associative": lambda x, y, z: c(c(x, y), z) == c(x, c(y, z)),
        "⋏ neutral 1": lambda x, y, z: c(x, unit) == x and c(unit, x) == x,
        "left distributive": lambda x, y, z: c(x, d(y, z)) == d(c(x, y), c(x, z)),
        "right distributive": lambda x, y, z: c(d(y, z), x) == d(c(y, x), c(z, x)),
    }
    witnesses: Dict[str, Optional[Tuple]] = {name: None for name in laws}
    open_laws = dict(laws)
    for x, y, z in triples:
        if not open_laws:
            break
        for name, law in list(open_laws.items()):
            if not law(x, y, z):
                m = algebra.matrices
                witnesses[name] = (m[x], m[y], m[z])
                del open_laws[name]

    for name in laws:
        witness = witnesses[name]
        report.add(CheckResult(name, CONFIRMED if witness is None else REFUTED, witness))
    return report


# --- mereology of r-inclusion --------------------------------------------------

def r_included(s, A, B, r: GrifMatrix, kind: GrifKind = ZETA_K0) -> bool:
    """A ⊆_r B: r ⪯ ζ(A, B)."""
    return matrix_leq(r, grif_matrix(s, kind, A, B))


def _zeta_table(s, kind: GrifKind) -> Dict[Tuple, GrifMatrix]:
    elements = s.elements()
    return {(a, b): grif_matrix(s, kind, a, b) for a, b in product(elements, repeat=2)}


def check_inclusion_theorem(s, kind: GrifKind = ZETA_K0) -> Report:
    """
    Properties of r-inclusion.

    1. A ⊆_r B and B ⊆_q C give some h ⪯ r, q with A ⊆_h C. Always met by
       h = 0, so the row is vacuous; h = r ∧ q is checked alongside and its
       refutation is a finding.
    2. A ⊆_h B with B ≠ ⊥ and 0 ≺ h gives some 0 ≺ q with B ⊆_q A; needs τ
       to satisfy R1. Checked verbatim and restricted to Aˡ ≠ ∅.
    3. P A B and C ⊆_h A give h ⪯ ζ(C, B); needs τ to satisfy R0.
    """
    report = Report(f"r-inclusion ({kind.label})")
    elements = s.elements()
    table = _zeta_table(s, kind)
    zero = GrifMatrix.zero()
    flags = check_rif_axioms(kind.tau, s).flags if kind.tag == "zeta" else {"R0": True, "R1": True}

    # h = 0 witnesses every triple
    report.add(CheckResult("transitive with common lower bound", VACUOUS, note="h = 0 is always admissible"))
    witness = None
    for a, b, c in product(elements, repeat=3):
        if not matrix_leq(matrix_meet(table[(a, b)], table[(b, c)]), table[(a, c)]):
            witness = (a, b, c)
            break
    result = report.add(CheckResult("transitive with h = r ∧ q", CONFIRMED if witness is None else REFUTED,
                                    witness))
    result.finding = witness is not None

    if not flags.get("R1"):
        report.add(CheckResult("nonzero symmetry", NOT_APPLICABLE, note="τ does not satisfy R1"))
        report.add(CheckResult("nonzero symmetry (Aˡ ≠ ∅)", NOT_APPLICABLE, note="τ does not satisfy R1"))
    else:
        def symmetry_witness(restrict):
            for a, b in product(elements, repeat=2):
                if b == s.bottom or (restrict and not s.lower(a)):
                    continue
                if matrix_lt(zero, table[(a, b)]) and not matrix_lt(zero, table[(b, a)]):
                    return (a, b)
            return None

        witness = symmetry_witness(False)
        result = report.add(CheckResult("nonzero symmetry", CONFIRMED if witness is None else REFUTED, witness,
                                        note="empty-denominator guard makes entries nonzero"))
        result.finding = witness is not None
        witness = symmetry_witness(True)
        report.add(CheckResult("nonzero symmetry (Aˡ ≠ ∅)", CONFIRMED if witness is None else REFUTED, witness))

    if not flags.get("R0"):
        report.add(CheckResult("parthood widening", NOT_APPLICABLE, note="τ does not satisfy R0"))
    else:
        witness = None
        for a, b in product(elements, repeat=2):
            if not s.part(a, b):
                continue
            for c in elements:
                if not matrix_leq(table[(c, a)], table[(c, b)]):
                    witness = (a, b, c)
                    break
            if witness:
                break
        report.add(CheckResult("parthood widening", CONFIRMED if witness is None else REFUTED, witness))
    return report


# --- form theorems -------------------------------------------------------------

def _pattern_one(m: GrifMatrix) -> bool:
    """[[1, 1], [r, 1]] for some r ≤ 1."""
    return m.ll == ONE and m.lu == ONE and m.uu == ONE and m.ul <= ONE


def form_one_disjunction(s: SetHgos, A: Subset, B: Subset) -> bool:
    """Aˡ ⊂ Bˡ ⊂ Aᵘ ⊂ Bᵘ, or A ⊂ B, or A = B."""
    al, au, bl, bu = s.lower(A), s.upper(A), s.lower(B), s.upper(B)
    return (al < bl < au < bu) or A < B or A == B


def form_theorems(s: SetHgos, tau: str = "K0") -> Report:
    """
    Matrix-shape theorems for ζ over every ordered pair of a powerset space.

    K0: the entrywise characterization, the impossible [[0, 1], [1, 1]] and
    the [[1, 1], [r, 1]] characterization (Aˡ ≠ ∅) whose disjunctive
    converse is recorded as a finding when refuted. K1: the all-ones
    characterization.
    """
    if not isinstance(s, SetHgos) or not s.is_powerset:
        raise PreconditionError("Form theorems quantify over a full powerset family")
    if tau not in ("K0", "K1"):
        raise InputError(f"Form theorems cover K0 and K1, got {tau!r}")
    kind = GrifKind("zeta", InclusionFn(tau))
    report = Report(f"matrix forms ({tau})")
    pairs = list(product(s.family, repeat=2))
    logger.info("Scanning %d pairs for matrix forms", len(pairs))

    def scan(name, applies, predicate, finding=False):
        for a, b in pairs:
            if applies(a, b) and not predicate(a, b):
                result = report.add(CheckResult(name, REFUTED, (a, b)))
                result.finding = finding
                return
        report.add(CheckResult(name, CONFIRMED))

    table = {(a, b): grif_matrix(s, kind, a, b) for a, b in pairs}
    approx = {x: (s.lower(x), s.upper(x)) for x in s.family}

    if tau == "K1":
        def three_conditions(a, b):
            al, au = approx[a]
            bl, bu = approx[b]
            return (not (au | bu)) or (not (au | bl) and bool(bu)) or (al <= au <= bl <= bu)

        scan("all-ones ⇔ conditions (1)–(3)", lambda a, b: True,
             lambda a, b: (table[(a, b)] == GrifMatrix.ones()) == three_conditions(a, b))
        return report

    def entry_rule(a, b):
        m = table[(a, b)]
        for sigma, pi in product(SIGMA, SIGMA):
            x = approx[a][SIGMA.index(sigma)]
            y = approx[b][SIGMA.index(pi)]
            if (m.entry(sigma, pi) == ONE) != (x <= y or not x):
                return False
        return True

    impossible = GrifMatrix(ZERO, ONE, ONE, ONE)
    nonempty_lower = lambda a, b: bool(approx[a][0])

    def conditions(a, b):
        al, au = approx[a]
        bl, bu = approx[b]
        return al <= bl, al <= bu, not au <= bl, au <= bu

    scan("entry = 1 ⇔ Aσ ⊆ Bπ or Aσ = ∅", lambda a, b: True, entry_rule)
    scan("[[0, 1], [1, 1]] never occurs", lambda a, b: True, lambda a, b: table[(a, b)] != impossible)
    scan("disjunction ⇒ [[1, 1], [r, 1]]", nonempty_lower,
         lambda a, b: not form_one_disjunction(s, a, b) or _pattern_one(table[(a, b)]))
    scan("[[1, 1], [r, 1]] ⇒ disjunction", nonempty_lower,
         lambda a, b: not _pattern_one(table[(a, b)]) or form_one_disjunction(s, a, b), finding=True)

    def strict_pattern(a, b):
        m = table[(a, b)]
        ll1, lu1, ul1, uu1 = conditions(a, b)
        return (_pattern_one(m) and m.ul < ONE) == (ll1 and lu1 and ul1 and uu1)

    def loose_pattern(a, b):
        ll1, lu1, _, uu1 = conditions(a, b)
        return _pattern_one(table[(a, b)]) == (ll1 and lu1 and uu1)

    scan("[[1, 1], [r, 1]] with r < 1 ⇔ ll1 ∧ lu1 ∧ ul1 ∧ uu1", nonempty_lower, strict_pattern)
    scan("[[1, 1], [r, 1]] ⇔ ll1 ∧ lu1 ∧ uu1", nonempty_lower, loose_pattern)
    return report


def feasibility_filter(ms: Iterable[GrifMatrix]) -> bool:
    """False when some matrix cannot come from ζ(K0) on a set HGOS (necessary condition only)."""
    impossible = GrifMatrix(ZERO, ONE, ONE, ONE)
    for m in ms:
        if not (m.ll <= m.lu and m.ul <= m.uu) or m == impossible:
            logger.debug("Infeasible observation %s", m)
            return False
    return True


def monotonicity_check(s: SetHgos) -> Report:
    """Properties of the basic GRIF: ulu2, llu2, mo, refl, bot and top."""
    if s.bottom != frozenset():
        raise PreconditionError("Basic GRIF properties need ⊥ = ∅")
    kind = GrifKind("basic")
    elements = s.elements()
    table = _zeta_table(s, kind)
    report = Report("basic GRIF properties")

    def first(domain, predicate):
        for item in domain:
            if not predicate(*item):
                return item
        return None

    pairs = list(product(elements, repeat=2))
    rows = [
        ("ulu2", pairs, lambda a, b: table[(a, b)].ul <= table[(a, b)].uu),
        ("llu2", pairs, lambda a, b: table[(a, b)].ll <= table[(a, b)].lu),
        ("mo", [(a, b, e) for b, e in pairs if b < e for a in elements],
         lambda a, b, e: matrix_leq(table[(a, b)], table[(a, e)])),
        ("refl", [(a,) for a in elements],
         lambda a: table[(a, a)].lu <= table[(a, a)].ll == ONE == table[(a, a)].uu),
        ("bot", [(a,) for a in elements], lambda a: table[(s.bottom, a)] == GrifMatrix.ones()),
    ]
    for name, domain, predicate in rows:
        witness = first(domain, predicate)
        report.add(CheckResult(name, CONFIRMED if witness is None else REFUTED, witness))
    if _definite(s, s.top):
        witness = first([(a,) for a in elements], lambda a: table[(a, s.top)] == GrifMatrix.ones())
        report.add(CheckResult("top", CONFIRMED if witness is None else REFUTED, witness))
    else:
        report.add(CheckResult("top", NOT_APPLICABLE, note="⊤ is not definite"))
    return report


def cobasic_witness(s: SetHgos) -> Optional[Tuple[Subset, Subset, GrifMatrix]]:
    """First pair whose cobasic matrix leaves [0, 1]."""
    kind = GrifKind("cobasic")
    for a, b in product(s.elements(), repeat=2):
        m = grif_matrix(s, kind, a, b)
        if m.out_of_range:
            return a, b, m
    return None


class GranularApproximation(NamedTuple):
    lower: Tuple[Subset, ...]
    upper: Tuple[Subset, ...]
    guarded: Tuple[Subset, ...]


def granular_param_approx(s: SetHgos, hslash: Mapping, X: Subset, kind: GrifKind = ZETA_K0,
                          one_o: Optional[GrifMatrix] = None, zero_o: Optional[GrifMatrix] = None,
                          objects: Optional[Sequence] = None) -> GranularApproximation:
    """
    L⁺ = {ℏ(x) : ζ(ℏ(x), X) = 1ₒ} and U⁺ = {ℏ(x) : 0ₒ ≺ ζ(ℏ(x), X)}.

    Neighborhoods in U⁺ that are there only because an empty approximation
    triggered the 1-on-empty convention are listed in `guarded`.
    """
    one_o = one_o or GrifMatrix.ones()
    zero_o = zero_o or GrifMatrix.zero()
    objects = s.universe if objects is None else objects
    missing = [x for x in objects if x not in hslash]
    if missing:
        raise PreconditionError(f"ℏ undefined at {missing[0]!r}")
    X = frozenset(X)
    neighborhoods = list(dict.fromkeys(frozenset(hslash[x]) for x in objects))

    lower, upper, guarded = [], [], []
    for n in neighborhoods:
        m = grif_matrix(s, kind, n, X)
        if m == one_o:
            lower.append(n)
        if matrix_lt(zero_o, m):
            upper.append(n)
            empty_rows = [sigma for sigma in SIGMA if not _approx(s, n, sigma)]
            if empty_rows:
                stripped = GrifMatrix(*(ZERO if sigma in empty_rows else m.entry(sigma, pi)
                                        for sigma, pi in product(SIGMA, SIGMA)))
                if not matrix_lt(zero_o, stripped):
                    guarded.append(n)
    return GranularApproximation(tuple(lower), tuple(upper), tuple(guarded))


def check_certain_forms(s, tau: InclusionFn = K0) -> Report:
    """Shapes of ζ when one or both arguments are definite, with the 1-/2-certain pairs."""
    kind = GrifKind("zeta", tau)
    one, two = GrifKind("one_certain", tau), GrifKind("two_certain", tau)
    elements = s.elements()
    table = _zeta_table(s, kind)
    definite = [x for x in elements if _definite(s, x)]
    report = Report(f"certain forms ({tau.label})")

    def scan(name, domain, predicate):
        witness = next(((a, b) for a, b in domain if not predicate(a, b)), None)
        report.add(CheckResult(name, CONFIRMED if witness is None else REFUTED, witness))

    first_definite = [(a, b) for a in definite for b in elements]
    second_definite = [(a, b) for a in elements for b in definite]
    scan("A definite ⇒ equal rows", first_definite,
         lambda a, b: table[(a, b)].rows[0] == table[(a, b)].rows[1] == grif_matrix(s, one, a, b))
    scan("A, B definite ⇒ constant", [(a, b) for a in definite for b in definite],
         lambda a, b: table[(a, b)] == GrifMatrix.constant(eval_rif(tau, a, b, s)))
    scan("B definite ⇒ equal columns", second_definite,
         lambda a, b: (table[(a, b)].ll, table[(a, b)].ul) == (table[(a, b)].lu, table[(a, b)].uu)
         == grif_matrix(s, two, a, b))
    return report


def compare_hasty_phi(m: GgsMorphism, tau: InclusionFn = K0) -> Report:
    """A closed morphism makes the hasty and the φ-GRIF coincide wherever both are defined."""
    source = m.source
    hasty, phi = GrifKind("hasty", tau, m), GrifKind("phi", tau, m)
    closed = check_morphism(m, closed=True)["closed"].holds
    report = Report("hasty vs φ-GRIF")
    witness, undefined = None, 0
    for a, b in product(source.elements(), repeat=2):
        left = grif_matrix(source, hasty, a, b)
        try:
            right = grif_matrix(source, phi, a, b)
        except PreconditionError:
            undefined += 1
            if closed:
                witness = (a, b)
                break
            continue
        if left != right:
            witness = (a, b)
            break
    if undefined:
        report.annotate(f"φ-GRIF undefined on {undefined} pairs")
    if closed:
        report.add(CheckResult("closed ⇒ hasty = φ", CONFIRMED if witness is None else REFUTED, witness))
    else:
        report.add(CheckResult.of("hasty = φ", witness is None, witness, note="morphism is not closed"))
    return report
