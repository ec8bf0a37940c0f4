"""Wire formats: JSON documents, CSV information tables and JSON output encoding."""

import dataclasses
import json
import logging
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import pandas as pd

from .errors import InputError
from .mereo import DiscernibilityMatrix, ParthoodRelation
from .rationals import format_rational, parse_rational
from .report import CheckResult, Report
from .spaces import AbstractGgs, ApproximationRow, GgsMorphism, SetHgos, build_set_hgos
from .tables import BinaryRelationSpace, CoverAnswer, CoverSpace, InformationTable, granules_from_relation
from .universe import canonical, parse_subset

VALUE_SEPARATOR = "|"


class GranulumCodec:
    """Parsers for the JSON and CSV inputs of the command line."""

    def __init__(self):
        """Initialize codec."""
        self.logger = logging.getLogger(__name__)

    @staticmethod
    def load_json(path: Union[str, Path]) -> Any:
        """
        Read a JSON document.

        Args:
            path: File path

        Returns:
            Decoded document
        """
        try:
            with open(path, "r", encoding="utf-8") as f:
                return json.load(f)
        except FileNotFoundError:
            raise InputError(f"No such file: {path}") from None
        except json.JSONDecodeError as e:
            raise InputError(f"Malformed JSON in {path}: {e}") from e

    @staticmethod
    def _field(doc: Mapping, key: str, kind: type = list):
        if not isinstance(doc, Mapping):
            raise InputError("Expected a JSON object")
        if key not in doc:
            raise InputError(f"Missing field {key!r}")
        value = doc[key]
        if not isinstance(value, kind):
            raise InputError(f"Field {key!r} must be a {kind.__name__}")
        return value

    @staticmethod
    def _pairs(items: Iterable, arity: int = 2) -> List[Tuple]:
        result = []
        for item in items:
            if not isinstance(item, list) or len(item) != arity:
                raise InputError(f"Expected a list of {arity} items, got {item!r}")
            result.append(tuple(item))
        return result

    @staticmethod
    def parse_relation(doc: Mapping) -> BinaryRelationSpace:
        """{"universe": [...], "pairs": [[x, y], ...]}"""
        universe = GranulumCodec._field(doc, "universe")
        pairs = GranulumCodec._pairs(GranulumCodec._field(doc, "pairs"))
        return BinaryRelationSpace(tuple(universe), frozenset(pairs))

    @staticmethod
    def parse_cover(doc: Mapping) -> CoverSpace:
        """{"universe": [...], "blocks": [[...], ...]}"""
        universe = GranulumCodec._field(doc, "universe")
        blocks = GranulumCodec._field(doc, "blocks")
        return CoverSpace(tuple(universe), tuple(frozenset(b) for b in blocks))

    @staticmethod
    def parse_parthood(doc: Mapping) -> ParthoodRelation:
        """Parthood uses the relation schema; "universe" may be spelled "carrier"."""
        if isinstance(doc, Mapping) and "carrier" in doc and "universe" not in doc:
            doc = dict(doc, universe=doc["carrier"])
        r = GranulumCodec.parse_relation(doc)
        return ParthoodRelation(r.universe, r.relation)

    @staticmethod
    def parse_set_hgos(doc: Mapping, powerset_limit: int = 12) -> SetHgos:
        """
        A set HGOS given by granules or by a relation.

        Accepts {"universe", "granules"} or {"universe", "pairs"} (successor
        neighborhoods), plus an optional "family".
        """
        universe = tuple(GranulumCodec._field(doc, "universe"))
        if "granules" in doc:
            granules = [frozenset(g) for g in GranulumCodec._field(doc, "granules")]
        elif "pairs" in doc:
            granules = granules_from_relation(GranulumCodec.parse_relation(doc))
        else:
            raise InputError("A set space needs \"granules\" or \"pairs\"")
        family = doc.get("family")
        if family is not None and not isinstance(family, list):
            raise InputError("Field 'family' must be a list")
        return build_set_hgos(universe, granules, family, powerset_limit)

    @staticmethod
    def parse_abstract(doc: Mapping) -> AbstractGgs:
        """
        An abstract space given by explicit tables.

        Fields: carrier, parthood and order as pair lists, joins and meets as
        [a, b, c] triples (absent pairs are undefined), lower and upper as
        [a, b] pairs, granules, bottom and top.
        """
        field = GranulumCodec._field
        pairs = GranulumCodec._pairs
        carrier = tuple(field(doc, "carrier"))
        parthood = frozenset(pairs(field(doc, "parthood")))
        order = frozenset(pairs(doc["order"])) if "order" in doc else parthood
        joins = {(a, b): c for a, b, c in pairs(doc.get("joins", []), 3)}
        meets = {(a, b): c for a, b, c in pairs(doc.get("meets", []), 3)}
        lowers = dict(pairs(doc.get("lower", [])))
        uppers = dict(pairs(doc.get("upper", [])))
        for key in ("bottom", "top"):
            if key not in doc:
                raise InputError(f"Missing field {key!r}")
        return AbstractGgs(
            carrier=carrier,
            parthood=parthood,
            order=order,
            joins=joins,
            meets=meets,
            lowers=lowers,
            uppers=uppers,
            granulation=tuple(field(doc, "granules")),
            bottom=doc["bottom"],
            top=doc["top"],
        )

    @staticmethod
    def parse_space(doc: Mapping, powerset_limit: int = 12) -> Union[SetHgos, AbstractGgs]:
        """Dispatch on the presence of "carrier" (abstract) or "universe" (set based)."""
        if isinstance(doc, Mapping) and "carrier" in doc:
            return GranulumCodec.parse_abstract(doc)
        return GranulumCodec.parse_set_hgos(doc, powerset_limit)

    @staticmethod
    def parse_morphism(doc: Mapping, source, target) -> GgsMorphism:
        """{"mapping": [[a, b], ...]}; set elements are written as lists."""
        def key(x):
            return frozenset(x) if isinstance(x, list) else x
        mapping = {key(a): key(b) for a, b in GranulumCodec._pairs(GranulumCodec._field(doc, "mapping"))}
        return GgsMorphism(source, target, mapping)

    @staticmethod
    def parse_matrix(doc: Union[Mapping, Sequence]):
        """A GRIF matrix as {"ll": "p/q", ...} or [[ll, lu], [ul, uu]]."""
        from ..inclusion.grif import GrifMatrix
        if isinstance(doc, Mapping):
            return GrifMatrix.from_dict(doc)
        if isinstance(doc, list) and len(doc) == 2 and all(isinstance(r, list) and len(r) == 2 for r in doc):
            return GrifMatrix.from_rows(doc)
        raise InputError(f"Not a matrix: {doc!r}")

    @staticmethod
    def _subject(value):
        return value if isinstance(value, str) else frozenset(value)

    @staticmethod
    def parse_observations(doc: Union[Mapping, Sequence]) -> list:
        """
        Observation list.

        Each entry: {"subject": [...] or "label", "lower": [...], "upper": [...],
        "grif": [{"other": [...] or "label", "matrix": {...}}, ...]}.
        """
        from ..decision.inverse import Observation
        entries = doc.get("observations") if isinstance(doc, Mapping) else doc
        if not isinstance(entries, list):
            raise InputError("Observations must be a list")
        result = []
        for entry in entries:
            if not isinstance(entry, Mapping) or "subject" not in entry:
                raise InputError(f"Observation without subject: {entry!r}")
            grif = tuple((GranulumCodec._subject(g["other"]), GranulumCodec.parse_matrix(g["matrix"]))
                         for g in entry.get("grif", []))
            lower = entry.get("lower")
            upper = entry.get("upper")
            result.append(Observation(
                GranulumCodec._subject(entry["subject"]),
                None if lower is None else frozenset(lower),
                None if upper is None else frozenset(upper),
                grif,
            ))
        return result

    @staticmethod
    def parse_scenario(doc: Mapping, powerset_limit: int = 12):
        """
        {"space": {...}, "stages": {"Er": [...], ...},
        "catalogs": {"A": {"name": {"op": ..., "operand": [...]}}, "C": {...}}, "seed": 0}
        """
        from ..decision.actions import ActionCatalog
        from ..decision.pilot import Scenario
        space = GranulumCodec.parse_set_hgos(GranulumCodec._field(doc, "space", dict), powerset_limit)
        stages = {k: parse_subset(v, space.universe) for k, v in GranulumCodec._field(doc, "stages", dict).items()}
        catalogs = {name: ActionCatalog.from_mapping(space, spec)
                    for name, spec in GranulumCodec._field(doc, "catalogs", dict).items()}
        seed = doc.get("seed", 0)
        if not isinstance(seed, int):
            raise InputError("Field 'seed' must be an integer")
        return Scenario(space, stages, catalogs, seed)

    @staticmethod
    def read_table_csv(path: Union[str, Path]) -> InformationTable:
        """
        Read an information table.

        The first column holds object ids, the header row attribute ids;
        cells are value tokens separated by "|" and an empty cell is the
        empty set.
        """
        try:
            frame = pd.read_csv(path, dtype=str, keep_default_na=False)
        except FileNotFoundError:
            raise InputError(f"No such file: {path}") from None
        except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as e:
            raise InputError(f"Malformed CSV in {path}: {e}") from e
        if frame.shape[1] < 1:
            raise InputError(f"{path} has no object column")
        id_column, *attributes = list(frame.columns)
        rows: Dict[Hashable, Dict[str, List[str]]] = {}
        for record in frame.itertuples(index=False):
            obj, *cells = record
            if obj in rows:
                raise InputError(f"Duplicate object {obj!r} in {path}")
            rows[obj] = {a: [t.strip() for t in cell.split(VALUE_SEPARATOR) if t.strip()]
                         for a, cell in zip(attributes, cells)}
        return InformationTable.from_rows(rows, attributes)


def _canonical_list(items, universe: Optional[Sequence] = None) -> List:
    if all(isinstance(x, frozenset) for x in items):
        encoded = [to_jsonable(x, universe) for x in items]
        return sorted(encoded, key=lambda e: (len(e), json.dumps(e, ensure_ascii=False)))
    return [to_jsonable(x, universe) for x in canonical(items, universe)]


def to_jsonable(value: Any, universe: Optional[Sequence] = None) -> Any:
    """
    Convert library values to plain JSON data.

    Sets become canonically ordered lists, rationals "p/q" strings, matrices
    their entry dicts and reports their row dicts.
    """
    from ..inclusion.grif import GrifMatrix
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, (frozenset, set)):
        return _canonical_list(value, universe)
    if isinstance(value, GrifMatrix):
        return value.to_dict()
    if isinstance(value, Report):
        return value.to_dict(lambda w: to_jsonable(w, universe))
    if isinstance(value, CheckResult):
        return {"name": value.name, "status": value.status, "witness": to_jsonable(value.witness, universe),
                "note": value.note, "finding": value.finding}
    if isinstance(value, CoverAnswer):
        return {"value": to_jsonable(value.value, universe), "uncovered": value.uncovered}
    if isinstance(value, ApproximationRow):
        return {"members": [to_jsonable(m, universe) for m in value.members],
                "lower": to_jsonable(value.lower, universe), "upper": to_jsonable(value.upper, universe)}
    if isinstance(value, DiscernibilityMatrix):
        return {"objects": list(value.objects),
                "entries": [[[to_jsonable(x, universe) for x in entry] for entry in row] for row in value.entries]}
    if hasattr(value, "to_dict"):
        return to_jsonable(value.to_dict(), universe)
    if isinstance(value, Mapping):
        return {str(to_jsonable(k, universe)) if not isinstance(k, str) else k: to_jsonable(v, universe)
                for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(x, universe) for x in value]
    if dataclasses.is_dataclass(value):
        return {f.name: to_jsonable(getattr(value, f.name), universe) for f in dataclasses.fields(value)}
    if hasattr(value, "item"):
        return value.item()
    return str(value)


def dumps(document: Mapping, schema: str) -> str:
    """One JSON document tagged with the schema version."""
    payload = {"schema": schema}
    payload.update(document)
    return json.dumps(payload, ensure_ascii=False, sort_keys=False)


def parse_fraction_list(text: str) -> List[Fraction]:
    """Comma separated rationals: "1/2,3/4"."""
    items = [item.strip() for item in text.split(",") if item.strip()]
    if not items:
        raise InputError("Expected at least one value")
    return [parse_rational(item) for item in items]
