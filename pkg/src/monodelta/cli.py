"""Command line front end.

::

    monodelta compute --input data.csv --measures alpha,delta --seed 42
    monodelta scenario --config suite.cfg --format json --output report.json
    monodelta oracle --input small.csv
    monodelta dump-tournament --input data.csv

Exit status is 0 on success, 1 on data or validation errors and 2 on usage
errors. Diagnostics go to stderr as a single ``error[CODE]: message`` line;
the payload goes to stdout or to ``--output``.
"""

from __future__ import annotations

import argparse
import io
import sys
from pathlib import Path
from typing import Sequence

import numpy as np

from . import __version__
from .data import read_csv
from .errors import ReliabilityError
from .measures import MeasureParams, compute_measure, parse_measures
from .report import FORMATS, emit_report
from .scenarios import (
    CONFIG_KEYS,
    ReportRow,
    ScenarioConfig,
    ScenarioReport,
    config_from_mapping,
    format_config,
    parse_config,
    run_scenario_suite,
)
from .search import SearchParams, exact_min_contradictions, initial_ordering, local_search
from .tournament import build_tournament, delta_from_counts, max_contradictions


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """Argument parser whose errors carry the ``error[USAGE]:`` prefix."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(2, f"error[USAGE]: {message}\n")


def _io_parent() -> argparse.ArgumentParser:
    p = _Parser(add_help=False)
    p.add_argument("--output", help="write the payload here instead of stdout")
    p.add_argument("--format", choices=FORMATS, default="table", help="report format (default: table)")
    return p


def _search_parent() -> argparse.ArgumentParser:
    p = _Parser(add_help=False)
    p.add_argument("--seed", type=int, default=0, help="search seed (default: 0)")
    p.add_argument("--restarts", type=int, default=10, help="local search restarts (default: 10)")
    p.add_argument("--max-non-improving", type=int, default=None,
                   help="consecutive rejected swaps before a restart stops (default: N*(N-1))")
    return p


def _measure_parent() -> argparse.ArgumentParser:
    p = _Parser(add_help=False)
    p.add_argument("--measures", default="all",
                   help="comma-separated measures; 'delta' and 'omega' are aliases (default: all)")
    p.add_argument("--variance-mode", choices=("sample", "population"), default="sample")
    p.add_argument("--omega-variant", choices=("paper", "conventional"), default="paper",
                   help="which omega the 'omega' alias selects")
    p.add_argument("--split-scheme", choices=("odd-even", "random"), default="odd-even")
    p.add_argument("--split-seed", type=int, default=0)
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="monodelta", description="Monotone Delta and classical reliability coefficients.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    io_p, search_p, measure_p = _io_parent(), _search_parent(), _measure_parent()

    compute = sub.add_parser("compute", parents=[io_p, search_p, measure_p], help="reliability measures of a CSV dataset")
    compute.add_argument("--input", help="CSV file: header of item labels, one respondent per row")

    scenario = sub.add_parser("scenario", parents=[io_p], help="run the synthetic scenario suite")
    scenario.add_argument("--config", help="flat key = value configuration file")
    scenario.add_argument("--omega-variant", choices=("paper", "conventional"), default="paper",
                          help="which omega the 'omega' alias selects")
    scenario.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                          help="any configuration key, e.g. d1.loading=0.7 (repeatable)")
    scenario.add_argument("--print-config", action="store_true", help="print the effective configuration and exit")
    group = scenario.add_argument_group("configuration overrides")
    for key in CONFIG_KEYS:
        group.add_argument("--" + key.replace("_", "-"), dest=f"cfg_{key}", metavar="VALUE")

    oracle = sub.add_parser("oracle", parents=[io_p, search_p], help="compare the local search with exhaustive search")
    oracle.add_argument("--input", help="CSV file with at most --oracle-limit respondents")
    oracle.add_argument("--oracle-limit", type=int, default=9, help="largest N searched exhaustively (default: 9)")

    dump = sub.add_parser("dump-tournament", help="write the dominance matrix W as CSV")
    dump.add_argument("--input", help="CSV file")
    dump.add_argument("--output", help="write here instead of stdout")
    return parser


def _require_input(args) -> Path:
    if not args.input:
        raise UsageError(f"{args.command} requires --input")
    return Path(args.input)


def _search_params(args) -> SearchParams:
    return SearchParams(seed=args.seed, restarts=args.restarts, max_non_improving=args.max_non_improving)


def _measures(text: str, variant: str) -> tuple[str, ...]:
    try:
        return parse_measures(text, variant)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _compute(args) -> bytes:
    path = _require_input(args)
    measures = _measures(args.measures, args.omega_variant)
    search = _search_params(args)
    m = read_csv(path)
    params = MeasureParams(args.variance_mode, args.split_scheme, args.split_seed, search)
    rows = []
    for name in measures:
        res = compute_measure(m, name, params)
        rows.append(ReportRow("", path.stem, name, res.value, res.seconds, res.notes))
    meta = {
        "command": "compute",
        "input": str(path),
        "n_respondents": m.n_respondents,
        "n_items": m.n_items,
        "measures": list(measures),
        "seed": search.seed,
        "restarts": search.restarts,
        "max_non_improving": search.max_non_improving,
        "variance_mode": args.variance_mode,
        "omega_variant": args.omega_variant,
        "split_scheme": args.split_scheme,
        "split_seed": args.split_seed,
    }
    return emit_report(ScenarioReport(tuple(rows), meta), args.format)


def _scenario_config(args) -> ScenarioConfig:
    config = ScenarioConfig()
    if args.config:
        config = parse_config(Path(args.config).read_text(encoding="utf-8"), config)
    overrides = {}
    for item in args.set:
        if "=" not in item:
            raise UsageError(f"--set expects KEY=VALUE, got {item!r}")
        key, value = item.split("=", 1)
        overrides[key.strip()] = value.strip()
    for key in CONFIG_KEYS:
        value = getattr(args, f"cfg_{key}")
        if value is not None:
            overrides[key] = value
    if "measures" in overrides:
        overrides["measures"] = ",".join(_measures(overrides["measures"], args.omega_variant))
    return config_from_mapping(overrides, config)


def _scenario(args) -> bytes:
    config = _scenario_config(args)
    if args.print_config:
        return format_config(config).encode("utf-8")
    report = run_scenario_suite(config)
    meta = {"command": "scenario", "omega_variant": args.omega_variant}
    meta.update(report.spec_echo)
    return emit_report(ScenarioReport(report.rows, meta), args.format)


def _oracle(args) -> bytes:
    path = _require_input(args)
    search = _search_params(args)
    m = read_csv(path)
    t = build_tournament(m)
    exact = exact_min_contradictions(t, limit=args.oracle_limit)
    local = local_search(t, search, start=initial_ordering(m))
    c_max = max_contradictions(t.n, t.k_items)
    gap = local.c_star - exact.c_star
    rows = (
        ReportRow("", path.stem, "delta_exact", delta_from_counts(exact.c_star, c_max), 0.0,
                  f"c_star={exact.c_star}; ordering={list(exact.ordering)}; examined={exact.permutations_examined}"),
        ReportRow("", path.stem, "delta_local", local.delta, local.diagnostics.seconds,
                  f"c_star={local.c_star}; ordering={list(local.best_ordering)}; gap={gap}"),
    )
    meta = {
        "command": "oracle",
        "input": str(path),
        "oracle_limit": args.oracle_limit,
        "seed": search.seed,
        "restarts": search.restarts,
        "max_non_improving": search.max_non_improving,
        "c_max": c_max,
        "agree": gap == 0,
    }
    return emit_report(ScenarioReport(rows, meta), args.format)


def _dump(args) -> bytes:
    t = build_tournament(read_csv(_require_input(args)))
    buf = io.StringIO()
    np.savetxt(buf, t.w, fmt="%d", delimiter=",")
    return buf.getvalue().encode("utf-8")


_COMMANDS = {"compute": _compute, "scenario": _scenario, "oracle": _oracle, "dump-tournament": _dump}


def _fail(code: str, message: str, status: int) -> int:
    print(f"error[{code}]: {message}", file=sys.stderr)
    return status


def run_cli(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        payload = _COMMANDS[args.command](args)
        if getattr(args, "output", None):
            Path(args.output).write_bytes(payload)
        else:
            sys.stdout.buffer.write(payload)
            sys.stdout.flush()
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        return _fail("USAGE", str(exc), 2)
    except ReliabilityError as exc:
        return _fail(exc.code, str(exc), 1)
    except OSError as exc:
        return _fail("IO", f"{exc.strerror or exc}: {exc.filename}" if exc.filename else str(exc), 1)
    return 0


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
