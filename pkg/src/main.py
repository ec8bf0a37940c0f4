"""Command-line entry point for granulum."""

import argparse
import json
import logging
import sys
from typing import Any, Dict, Iterable, List, Optional

import pandas as pd

from logging_utils import configure_logging

from . import SCHEMA, __version__
from .config import Config
from .decision.inverse import consistency_filter, enumerate_models, enumerate_unknown
from .decision.pilot import Measure, Ranking, check_dataset, generate_dataset, generate_scenario, run_scenario
from .granular.codec import GranulumCodec, dumps, parse_fraction_list, to_jsonable
from .granular.errors import GranulumError, InputError
from .granular.mereo import check_separative_theorems
from .granular.rationals import grid
from .granular.report import Report
from .granular.spaces import SetHgos, approximation_table, check_admissibility, check_ggs_axioms
from .granular.tables import (cover_query, cover_reduct, equivalence_from_table, is_deterministic,
                              neighborhood_cover_flag, successor_neighborhoods)
from .granular.universe import label, parse_subset
from .inclusion.axioms import prif_oracle
from .inclusion.grif import (GrifKind, check_certain_forms, check_inclusion_theorem, check_semiring,
                             form_theorems, grif_matrix, monotonicity_check)
from .inclusion.norms import NormTriple, check_norm_axioms, derive_snorm, norm_eval
from .inclusion.rif import InclusionFn, check_rif_axioms, eval_rif

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2

TNORM_ALIASES = {"min": "min", "product": "product", "luk": "lukasiewicz"}
SNORM_ALIASES = {"max": "max", "prob": "probabilistic", "luk": "lukasiewicz", "derived": "derived"}

logger = logging.getLogger(__name__)


class UsageError(InputError):
    """Bad command-line usage; argparse prints usage before this is raised."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


# --- output ------------------------------------------------------------------------

def emit(document: Dict[str, Any], universe=None) -> None:
    print(dumps(to_jsonable(document, universe), SCHEMA))


def emit_table(rows: List[Dict[str, Any]]) -> None:
    """Aligned text table on stdout."""
    if not rows:
        print("(empty)")
        return
    print(pd.DataFrame(rows).to_string(index=False))


def report_rows(report: Report) -> List[Dict[str, Any]]:
    return [{"check": r.name, "status": r.status + (" (finding)" if r.finding else ""),
             "witness": "" if r.witness is None else json.dumps(to_jsonable(r.witness), ensure_ascii=False)}
            for r in report.results]


def finish_report(args, *reports: Report, universe=None) -> int:
    if args.table:
        for report in reports:
            print(report.title)
            emit_table(report_rows(report))
    else:
        emit({"reports": list(reports)}, universe)
    failed = [r for report in reports for r in report.failures()]
    for r in failed:
        logger.warning("Check %s failed with witness %s", r.name, r.witness)
    return EXIT_CHECK_FAILED if failed else EXIT_OK


# --- argument helpers --------------------------------------------------------------

def load_space(args, config: Config):
    doc = GranulumCodec.load_json(args.space)
    return GranulumCodec.parse_space(doc, config.limits().powerset_limit)


def inclusion_fn(name: str, s=None, t=None) -> InclusionFn:
    kind = {"k0": "K0", "k1": "K1", "k2": "K2", "kst": "Kst"}.get(name.lower())
    if kind is None:
        raise InputError(f"Unknown inclusion function {name!r}")
    if kind == "Kst":
        return InclusionFn.kst(s if s is not None else "0", t if t is not None else "1")
    return InclusionFn(kind)


def norm_triple(args) -> NormTriple:
    tnorm = TNORM_ALIASES.get(args.tnorm)
    snorm = SNORM_ALIASES.get(args.snorm)
    if tnorm is None or snorm is None:
        raise InputError(f"Unknown norm selection {args.tnorm!r}/{args.snorm!r}")
    if snorm == "derived":
        return derive_snorm(NormTriple(tnorm))
    return NormTriple(tnorm, snorm)


def subset_arg(value: Optional[str], space, name: str):
    if value is None:
        raise InputError(f"--{name} is required")
    x = parse_subset(value, getattr(space, "universe", None))
    if x not in space:
        raise InputError(f"--{name} {label(x)} is not an element of the space")
    return x


# --- commands ------------------------------------------------------------------------

def cmd_granules(args, config: Config) -> int:
    if args.relation:
        r = GranulumCodec.parse_relation(GranulumCodec.load_json(args.relation))
        neighborhoods = successor_neighborhoods(r)
        if args.table:
            emit_table([{"x": x, "n(x)": label(n, r.universe)} for x, n in neighborhoods.items()])
        else:
            emit({"neighborhoods": neighborhoods,
                  "granules": list(dict.fromkeys(neighborhoods.values())),
                  "cover": neighborhood_cover_flag(r)}, r.universe)
        return EXIT_OK

    if args.cover:
        c = GranulumCodec.parse_cover(GranulumCodec.load_json(args.cover))
        if args.reduct:
            emit({"blocks": list(cover_reduct(c).blocks)}, c.universe)
            return EXIT_OK
        points = [args.point] if args.point else list(c.universe)
        answers = {x: cover_query(c, x, args.kind) for x in points}
        if args.table:
            emit_table([{"x": x, args.kind: json.dumps(to_jsonable(a.value, c.universe), ensure_ascii=False),
                         "uncovered": a.uncovered} for x, a in answers.items()])
        else:
            emit({"kind": args.kind, "answers": answers}, c.universe)
        return EXIT_OK

    if args.csv:
        table = GranulumCodec.read_table_csv(args.csv)
        attrs = [a.strip() for a in (args.attrs or "").split(",") if a.strip()] or list(table.attributes)
        classes = equivalence_from_table(table, attrs)
        emit({"attributes": attrs, "classes": list(classes), "deterministic": is_deterministic(table)},
             table.objects)
        return EXIT_OK

    raise InputError("granules needs --relation, --cover or --csv")


def cmd_approx(args, config: Config) -> int:
    s = load_space(args, config)
    if not isinstance(s, SetHgos):
        raise InputError("approx needs a set based space")
    if args.x is not None:
        x = parse_subset(args.x, s.universe)
        if x not in s:
            raise InputError(f"{label(x)} is not an element of the space")
        lower, upper = s.lower(x), s.upper(x)
        if args.table:
            emit_table([{"X": label(x, s.universe), "lower": label(lower, s.universe),
                         "upper": label(upper, s.universe)}])
        else:
            emit({"lower": lower, "upper": upper}, s.universe)
        return EXIT_OK

    rows = approximation_table(s)
    if args.table:
        emit_table([{"subsets": ", ".join(label(m, s.universe) for m in row.members),
                     "lower": label(row.lower, s.universe), "upper": label(row.upper, s.universe)}
                    for row in rows])
    else:
        emit({"rows": rows}, s.universe)
    return EXIT_OK


def cmd_riff(args, config: Config) -> int:
    s = load_space(args, config)
    f = inclusion_fn(args.fn, args.s, args.t)
    document: Dict[str, Any] = {"function": f.label}
    if args.a is not None or args.b is not None:
        A, B = subset_arg(args.a, s, "a"), subset_arg(args.b, s, "b")
        document["value"] = eval_rif(f, A, B, s)
    if args.profile or "value" not in document:
        profile = check_rif_axioms(f, s)
        if args.table:
            print(f"{f.label}: {profile.classification}")
            emit_table(report_rows(profile.report))
            return EXIT_OK
        document["profile"] = profile.to_dict(lambda w: to_jsonable(w, getattr(s, "universe", None)))
    emit(document, getattr(s, "universe", None))
    return EXIT_OK


def cmd_grif(args, config: Config) -> int:
    s = load_space(args, config)
    A, B = subset_arg(args.a, s, "a"), subset_arg(args.b, s, "b")
    kind = GrifKind(args.kind, inclusion_fn(args.tau, args.s, args.t))
    value = grif_matrix(s, kind, A, B)
    if args.table:
        if isinstance(value, tuple):
            emit_table([{"l": str(value[0]), "u": str(value[1])}])
        else:
            emit_table([{"": sigma, "l": str(row[0]), "u": str(row[1])} for sigma, row in zip("lu", value.rows)])
        return EXIT_OK
    document: Dict[str, Any] = {"kind": kind.label}
    if isinstance(value, tuple):
        document["pair"] = list(value)
    else:
        document["matrix"] = value
        document["out_of_range"] = value.out_of_range
    emit(document, s.universe)
    return EXIT_OK


def cmd_check(args, config: Config) -> int:
    if args.ggs:
        args.space = args.ggs
        g = load_space(args, config)
        return finish_report(args, check_ggs_axioms(g, args.mode), universe=getattr(g, "universe", None))
    if args.admissibility:
        args.space = args.admissibility
        g = load_space(args, config)
        return finish_report(args, check_admissibility(g, args.degenerate), universe=getattr(g, "universe", None))
    if args.theorems:
        args.space = args.theorems
        s = load_space(args, config)
        tau = inclusion_fn(args.tau)
        reports = [check_inclusion_theorem(s, GrifKind("zeta", tau)), monotonicity_check(s),
                   check_certain_forms(s, tau)]
        if isinstance(s, SetHgos) and s.is_powerset:
            reports.append(form_theorems(s, "K0"))
            reports.append(form_theorems(s, "K1"))
        return finish_report(args, *reports, universe=s.universe)
    if args.mereo:
        p = GranulumCodec.parse_parthood(GranulumCodec.load_json(args.mereo))
        limit = config.limits().powerset_limit
        return finish_report(args, check_separative_theorems(p, limit), universe=p.carrier)
    if args.prif:
        return finish_report(args, prif_oracle())
    if args.semiring:
        nt = norm_triple(args)
        points = grid(args.grid or 2)
        report = check_semiring(
            nt, points,
            exhaustive_points=config.get_int("Semiring", "exhaustive_grid_points", 3),
            sample_size=config.get_int("Semiring", "sample_size", 20000),
            seed=config.get_int("Semiring", "seed", 7),
        )
        return finish_report(args, report)
    raise InputError("check needs one of --ggs, --admissibility, --theorems, --mereo, --prif, --semiring")


def _stream(lines: Iterable[Dict[str, Any]], universe=None) -> None:
    for document in lines:
        emit(document, universe)
        sys.stdout.flush()


def cmd_inverse(args, config: Config) -> int:
    observations = GranulumCodec.parse_observations(GranulumCodec.load_json(args.obs))
    tau = inclusion_fn(args.tau)
    limits = config.limits()
    pool = None
    if args.pool:
        doc = GranulumCodec.load_json(args.pool)
        pool = doc.get("blocks") if isinstance(doc, dict) else doc
        if not isinstance(pool, list):
            raise InputError("Granule pool must be a list of blocks")
    options = dict(generator=args.gen, pool=pool, max_blocks=args.max_blocks,
                   relation_limit=limits.relation_universe_limit, max_combinations=limits.max_block_combinations)

    if args.universe is not None:
        universe = tuple(x.strip() for x in args.universe.split(",") if x.strip())
        models = enumerate_models(universe, **options)
    elif args.unknown is not None:
        universe = None
        models = enumerate_unknown(args.unknown, **options)
    else:
        raise InputError("inverse needs --universe or --unknown")

    workers = args.workers or config.get_int("General", "workers", 1)
    survivors = consistency_filter(models, observations, tau, workers=workers, progress=args.progress,
                                   size_limit=limits.case1_size_limit)
    _stream(({"universe": list(m.universe), "granules": list(m.granulation),
              "relation": None if m.relation is None else sorted(m.relation, key=str)}
             for m in survivors), universe)
    emit({"survivors": len(survivors)})
    return EXIT_OK


def _interactive_chooser(stage: str, ranking: Ranking) -> int:
    for i, entry in enumerate(ranking.entries):
        print(f"  [{i}] {entry.action.name}: {entry.value}", file=sys.stderr)
    for line in ranking.trace:
        print(f"      {line}", file=sys.stderr)
    while True:
        print(f"Choose action for {stage} [0]: ", end="", file=sys.stderr, flush=True)
        answer = sys.stdin.readline().strip()
        if not answer:
            return 0
        if answer.isdigit() and int(answer) < len(ranking):
            return int(answer)
        print("Invalid choice", file=sys.stderr)


def cmd_pilot(args, config: Config) -> int:
    seed = args.seed if args.seed is not None else config.get_int("Pilot", "seed", 7)
    if args.pilot_command == "gen":
        dataset, bundle = generate_dataset(args.n, args.r, args.q, args.l, seed)
        report = check_dataset(dataset, bundle)
        emit({"dataset": dataset, "invariants": report}, dataset.universe)
        return EXIT_OK if report.passed else EXIT_CHECK_FAILED

    if args.scenario:
        limit = config.limits().powerset_limit
        scenario = GranulumCodec.parse_scenario(GranulumCodec.load_json(args.scenario), limit)
    else:
        scenario = generate_scenario(seed)
    tau = inclusion_fn(args.tau)
    measure = Measure("grif", GrifKind("zeta", tau), tau) if args.measure == "grif" else Measure("rif", tau=tau)
    chooser = _interactive_chooser if args.interactive else None
    log = run_scenario(scenario, measure, chooser)
    universe = scenario.space.universe
    _stream(({"step": e.step, "event": e.event, **e.values} for e in log.entries), universe)
    emit({"measure": log.measure, "checks": log.checks}, universe)
    return EXIT_OK if log.passed else EXIT_CHECK_FAILED


def cmd_norms(args, config: Config) -> int:
    nt = norm_triple(args)
    if args.check:
        points = grid(config.get_int("Norms", "grid_denominator", 8))
        reports = [check_norm_axioms(nt.t, points, "t"), check_norm_axioms(nt.s, points, "s")]
        return finish_report(args, *reports)
    if args.args is None:
        raise InputError("norms needs --args or --check")
    value = norm_eval(nt, args.op, parse_fraction_list(args.args))
    emit({"norms": nt.label, "op": args.op, "value": value})
    return EXIT_OK


COMMANDS = {
    "granules": cmd_granules,
    "approx": cmd_approx,
    "riff": cmd_riff,
    "grif": cmd_grif,
    "check": cmd_check,
    "inverse": cmd_inverse,
    "pilot": cmd_pilot,
    "norms": cmd_norms,
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="granulum", description="Granulum - granular rough sets and granular inclusion")
    parser.add_argument('--config', type=str, default=None, help='Path to an INI configuration file')
    parser.add_argument('--config-profile', type=str, default=None, help='Configuration profile to activate')
    parser.add_argument('--debug', action='store_true', help='Enable debug logging')
    parser.add_argument('--table', action='store_true', help='Print aligned text tables instead of JSON')
    parser.add_argument('--version', action='version', version=f'granulum v{__version__}')
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("granules", help="Neighborhoods, cover queries and table partitions")
    p.add_argument('--relation', help='Relation JSON {"universe", "pairs"}')
    p.add_argument('--cover', help='Cover JSON {"universe", "blocks"}')
    p.add_argument('--point', help='Single point for cover queries')
    p.add_argument('--kind', choices=("nbd", "md", "fr"), default="nbd")
    p.add_argument('--reduct', action='store_true', help='Print the cover reduct')
    p.add_argument('--csv', help='Information table CSV')
    p.add_argument('--attrs', help='Comma separated attributes (all by default)')

    p = sub.add_parser("approx", help="Lower and upper approximations")
    p.add_argument('--space', required=True)
    p.add_argument('--x', help='Subset, e.g. "a,b"; the full table when omitted')

    p = sub.add_parser("riff", help="Rough inclusion values and axiom profiles")
    p.add_argument('--fn', default="k0", choices=("k0", "k1", "k2", "kst"))
    p.add_argument('--s', help='Lower threshold of kst')
    p.add_argument('--t', help='Upper threshold of kst')
    p.add_argument('--space', required=True)
    p.add_argument('--a')
    p.add_argument('--b')
    p.add_argument('--profile', action='store_true', help='Emit the axiom profile')

    p = sub.add_parser("grif", help="Granular inclusion matrices")
    p.add_argument('--space', required=True)
    p.add_argument('--kind', default="zeta", choices=("zeta", "basic", "cobasic", "one_certain", "two_certain"))
    p.add_argument('--tau', default="k0", choices=("k0", "k1", "k2", "kst"))
    p.add_argument('--s')
    p.add_argument('--t')
    p.add_argument('--a', required=True)
    p.add_argument('--b', required=True)

    p = sub.add_parser("check", help="Axiom and theorem checks")
    target = p.add_mutually_exclusive_group(required=True)
    target.add_argument('--ggs', help='Space JSON to check against the GGS axioms')
    target.add_argument('--admissibility', help='Space JSON whose granulation is checked')
    target.add_argument('--theorems', help='Space JSON for the GRIF theorem suite')
    target.add_argument('--mereo', help='Parthood JSON for the separative theorems')
    target.add_argument('--prif', action='store_true', help='Implication oracle for the inclusion axioms')
    target.add_argument('--semiring', action='store_true', help='Semiring laws of the matrix algebra')
    p.add_argument('--mode', default="ggs", choices=("ggs", "gs", "pre", "pre_gs"))
    p.add_argument('--degenerate', action='store_true', help='Let FU range over equal granules too')
    p.add_argument('--tau', default="k0", choices=("k0", "k1"))
    p.add_argument('--tnorm', default="min", choices=tuple(TNORM_ALIASES))
    p.add_argument('--snorm', default="max", choices=tuple(SNORM_ALIASES))
    p.add_argument('--grid', type=int, help='Grid denominator for --semiring (default 2)')

    p = sub.add_parser("inverse", help="Models consistent with observed approximations")
    p.add_argument('--obs', required=True)
    p.add_argument('--universe', help='Known universe, e.g. "a,b,c"')
    p.add_argument('--unknown', type=int, help='Largest universe size when it is unknown')
    p.add_argument('--gen', default="relations", choices=("relations", "pool"))
    p.add_argument('--pool', help='Granule pool JSON for --gen pool')
    p.add_argument('--max-blocks', type=int, default=None)
    p.add_argument('--tau', default="k0", choices=("k0", "k1"))
    p.add_argument('--workers', type=int, default=None)
    p.add_argument('--progress', action='store_true', help='Progress bar on stderr')

    p = sub.add_parser("pilot", help="Pilot datasets and scripted scenarios")
    pilot = p.add_subparsers(dest="pilot_command", required=True, parser_class=_Parser)
    gen = pilot.add_parser("gen")
    gen.add_argument('--n', type=int, required=True)
    gen.add_argument('--r', type=int, required=True)
    gen.add_argument('--q', type=int, required=True)
    gen.add_argument('--l', type=int, required=True)
    gen.add_argument('--seed', type=int, default=None)
    run = pilot.add_parser("run")
    run.add_argument('--scenario', help='Scenario JSON; a seeded scenario when omitted')
    run.add_argument('--seed', type=int, default=None)
    run.add_argument('--measure', default="grif", choices=("grif", "rif"))
    run.add_argument('--tau', default="k0", choices=("k0", "k1"))
    run.add_argument('--interactive', action='store_true')

    p = sub.add_parser("norms", help="Evaluate and check t-norms and s-norms")
    p.add_argument('--tnorm', default="min", choices=tuple(TNORM_ALIASES))
    p.add_argument('--snorm', default="max", choices=tuple(SNORM_ALIASES))
    p.add_argument('--op', default="t", choices=("t", "s", "n", "residual"))
    p.add_argument('--args', help='Comma separated operands, e.g. "1/2,3/4"')
    p.add_argument('--check', action='store_true', help='Check the norm axioms on the configured grid')
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        print(f"granulum: error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR

    try:
        config = Config(args.config, args.config_profile)
    except Exception as e:
        print(f"granulum: error: unreadable configuration: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR

    configure_logging(debug=args.debug or config.get_bool("General", "debug"))
    logger.debug("Running %s with profile %s", args.command, config.get_active_profile())

    try:
        return COMMANDS[args.command](args, config)
    except GranulumError as e:
        logger.error("%s", e)
        print(f"granulum: error: {e}", file=sys.stderr)
        return e.exit_code
    except KeyboardInterrupt:
        logger.info("User interrupted")
        return EXIT_CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())
