"""
Console entry point: ``deon-mf COMMAND THEORY [options]``.

Exit codes: 0 when the request is met, 1 when the logical outcome is the
contrary one, 2 for usage, parse, sort and configuration errors, 3 for
timeouts and exceeded scope budgets, 4 when a solver model fails
re-verification.
"""

from __future__ import annotations

import argparse
import json
import logging
import pathlib
import sys
from typing import Callable, Dict, Optional

from .check import Checker, axioms_for, load_theory, read_text, resolve_goal
from .config import DEFAULT_CEILING, CheckerConfig, default_budget, load_scope
from .corpus.manifest import load_corpus
from .corpus.runner import failed_entries, run_corpus
from .errors import (
    ConfigError,
    DeonError,
    DuplicateName,
    IncompleteAssignment,
    ParseError,
    ScopeTooLarge,
    SolverTimeout,
    SortError,
    UnknownSort,
    UnsupportedSort,
    VerificationError,
)
from .grounder.dimacs import emit
from .grounder.encoder import MODES, REFUTE, SATISFY
from .semantics.conditions import CONDITION_NAMES, DEFAULT_CONDITIONS, ConditionSet
from .semantics.scope import Scope
from .surface.parser import parse_theory
from .surface.printer import print_theory

_LOGGER = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONTRARY = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3
EXIT_INTERNAL = 4

_USAGE_ERRORS = (ParseError, DuplicateName, UnknownSort, SortError, ConfigError, UnsupportedSort)
_BUDGET_ERRORS = (SolverTimeout, ScopeTooLarge)

LOG_FORMAT = "%(asctime)s [%(levelname)s] %(name)s: %(message)s"


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="deon-mf",
        description="Finite model finder and bounded validity checker for dyadic deontic logic with contexts",
    )
    parser.add_argument(
        "--log-file",
        type=pathlib.Path,
        default=None,
        help="Optional path to log file (default: standard error only)",
    )
    parser.add_argument(
        "--log-level",
        default="WARNING",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="Minimum logging level (default: WARNING)",
    )
    commands = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    parse = commands.add_parser("parse", help="Parse a theory and print it back in normal form")
    parse.add_argument("theory", type=pathlib.Path)

    check = commands.add_parser("check", help="Parse and sort-check a theory")
    check.add_argument("theory", type=pathlib.Path)
    _add_output_options(check)

    consistency = commands.add_parser("consistency", help="Search for a model of the axioms")
    consistency.add_argument("theory", type=pathlib.Path)
    _add_search_options(consistency, goal=False)

    countermodel = commands.add_parser("countermodel", help="Search for a model of the axioms refuting a goal")
    countermodel.add_argument("theory", type=pathlib.Path)
    _add_search_options(countermodel, goal=True)

    valid = commands.add_parser(
        "valid", help="Refute a goal at every scope up to a ceiling (default c=2,e=2,w=2)"
    )
    valid.add_argument("theory", type=pathlib.Path)
    _add_search_options(valid, goal=True)

    corpus = commands.add_parser("corpus", help="Run the regression manifest against a theory")
    corpus.add_argument("theory", type=pathlib.Path, nargs="?", default=None, help="Theory file (default: bundled)")
    corpus.add_argument("--manifest", type=pathlib.Path, default=None, help="Manifest file (default: bundled)")
    corpus.add_argument("--entry", action="append", default=None, help="Run only the named entry (repeatable)")
    _add_config_options(corpus)
    _add_output_options(corpus)

    dimacs = commands.add_parser("emit-dimacs", help="Ground a query and write it in DIMACS CNF")
    dimacs.add_argument("theory", type=pathlib.Path)
    dimacs.add_argument("--goal", default=None, help="Goal name (default: axioms only)")
    dimacs.add_argument("--mode", choices=MODES, default=REFUTE, help="Assert the goal or its negation")
    dimacs.add_argument("--scope", default=None, help="Scope as c=i,e=j,w=k")
    dimacs.add_argument("--output", type=pathlib.Path, default=None, help="Write to a file instead of stdout")
    _add_config_options(dimacs)
    return parser


def _add_search_options(parser: argparse.ArgumentParser, goal: bool) -> None:
    if goal:
        parser.add_argument("--goal", required=True, help="Name of a goal declared in the theory")
    parser.add_argument("--scope", default=None, help="Scope as c=i,e=j,w=k (omitted keys default to 1)")
    _add_config_options(parser)
    _add_output_options(parser)


def _add_config_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--enable", action="append", default=[], metavar="NAME", help=f"Enable a frame condition ({', '.join(CONDITION_NAMES)})"
    )
    parser.add_argument("--disable", action="append", default=[], metavar="NAME", help="Disable a frame condition")
    parser.add_argument("--conditions", type=pathlib.Path, default=None, help="JSON file of condition flags")
    parser.add_argument(
        "--budget", type=float, default=None, help="Wall-clock seconds per query (default: $DEONMF_BUDGET or 60)"
    )
    parser.add_argument(
        "--deterministic", action="store_true", help="Single worker, timing left out of the output"
    )
    parser.add_argument("--jobs", type=int, default=1, help="Worker processes (ignored with --deterministic)")
    parser.add_argument("--no-learning", action="store_true", help="Chronological backtracking without learned clauses")
    parser.add_argument("--symmetry-breaking", action="store_true", help="Add world-order symmetry breaking clauses")


def _add_output_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=["text", "json"], default="text", help="Output format (default: text)")


def _configure_logging(level: str, log_file: Optional[pathlib.Path]) -> None:
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.WARNING),
        format=LOG_FORMAT,
        handlers=[logging.StreamHandler(sys.stderr)],
    )

    if log_file:
        log_file.parent.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(log_file, encoding="utf-8")
        file_handler.setFormatter(logging.Formatter(LOG_FORMAT))
        logging.getLogger().addHandler(file_handler)
        logging.getLogger(__name__).info("Logging to %s", log_file)


def _config_from_args(args: argparse.Namespace) -> CheckerConfig:
    conditions = ConditionSet.from_file(args.conditions) if args.conditions else DEFAULT_CONDITIONS
    conditions = conditions.toggled(args.enable, args.disable)
    return CheckerConfig(
        budget=args.budget if args.budget is not None else default_budget(),
        deterministic=args.deterministic,
        jobs=args.jobs,
        learning=not args.no_learning,
        symmetry_breaking=args.symmetry_breaking,
        conditions=conditions,
    )


def _emit(args: argparse.Namespace, report, include_timing: bool) -> None:
    if args.format == "json":
        sys.stdout.write(report.to_json(include_timing) + "\n")
    else:
        sys.stdout.write(report.render(include_timing))


# Commands -------------------------------------------------------------------


def _cmd_parse(args: argparse.Namespace) -> int:
    sys.stdout.write(print_theory(parse_theory(read_text(args.theory))))
    return EXIT_OK


def _cmd_check(args: argparse.Namespace) -> int:
    theory = load_theory(args.theory)
    summary = {
        "theory": str(args.theory),
        "constants": [name for name, _ in theory.signature.user_constants()],
        "definitions": list(theory.definitions),
        "axioms": [axiom.name for axiom in theory.axioms],
        "goals": [goal.name for goal in theory.goals],
    }
    if args.format == "json":
        sys.stdout.write(json.dumps(summary, sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write(
            f"{args.theory}: ok ({len(summary['constants'])} constants, {len(summary['definitions'])} definitions, "
            f"{len(summary['axioms'])} axioms, {len(summary['goals'])} goals)\n"
        )
    return EXIT_OK


def _cmd_consistency(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    scope = load_scope(args.scope, Scope(1, 1, 1))
    result = Checker(load_theory(args.theory), config).consistency(scope)
    _emit(args, result, not config.deterministic)
    if result.timed_out:
        return EXIT_BUDGET
    return EXIT_OK if result.found_model else EXIT_CONTRARY


def _cmd_countermodel(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    scope = load_scope(args.scope, Scope(1, 1, 1))
    theory = load_theory(args.theory)
    result = Checker(theory, config).countermodel(resolve_goal(theory, args.goal), scope)
    _emit(args, result, not config.deterministic)
    if result.timed_out:
        return EXIT_BUDGET
    return EXIT_OK if result.found_model else EXIT_CONTRARY


def _cmd_valid(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    ceiling = load_scope(args.scope, DEFAULT_CEILING)
    theory = load_theory(args.theory)
    report = Checker(theory, config).valid(resolve_goal(theory, args.goal), ceiling)
    _emit(args, report, not config.deterministic)
    if report.countermodel is not None:
        return EXIT_CONTRARY
    return EXIT_OK if report.exhaustive else EXIT_BUDGET


def _cmd_corpus(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    theory, entries = load_corpus(args.theory, args.manifest)
    report = run_corpus(theory, entries, config, only=args.entry)
    _emit(args, report, not config.deterministic)
    failed = failed_entries(report)
    if failed:
        print(f"deon-mf: failing entries: {', '.join(failed)}", file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_CONTRARY


def _cmd_emit_dimacs(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    scope = load_scope(args.scope, Scope(1, 1, 1))
    theory = load_theory(args.theory)
    checker = Checker(theory, config)
    if args.goal is None:
        problem = checker.ground(None, SATISFY, scope)
    else:
        goal = resolve_goal(theory, args.goal)
        problem = checker.ground(goal.formula, args.mode, scope, axioms_for(theory, goal))
    text = emit(problem)
    if args.output is None:
        sys.stdout.write(text)
    else:
        args.output.parent.mkdir(parents=True, exist_ok=True)
        args.output.write_text(text, encoding="utf-8")
        _LOGGER.info("Wrote %d clauses to %s", len(problem.clauses), args.output)
    return EXIT_OK


_COMMANDS: Dict[str, Callable[[argparse.Namespace], int]] = {
    "parse": _cmd_parse,
    "check": _cmd_check,
    "consistency": _cmd_consistency,
    "countermodel": _cmd_countermodel,
    "valid": _cmd_valid,
    "corpus": _cmd_corpus,
    "emit-dimacs": _cmd_emit_dimacs,
}


def _context(args: argparse.Namespace) -> str:
    parts = [str(path) for path in (getattr(args, "theory", None),) if path is not None]
    goal = getattr(args, "goal", None)
    if goal:
        parts.append(f"goal {goal}")
    return f" [{', '.join(parts)}]" if parts else ""


def main(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK

    _configure_logging(args.log_level, args.log_file)

    try:
        return _COMMANDS[args.command](args)
    except _USAGE_ERRORS as exc:
        print(f"deon-mf: error{_context(args)}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except _BUDGET_ERRORS as exc:
        print(f"deon-mf: budget exceeded{_context(args)}: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (VerificationError, IncompleteAssignment) as exc:
        print(f"deon-mf: internal error{_context(args)}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except DeonError as exc:
        print(f"deon-mf: error{_context(args)}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except KeyboardInterrupt:
        _LOGGER.info("Interrupted by user.")
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
