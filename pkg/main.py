"""Command-line entry point for the SPQ toolkit."""

import argparse
import logging
import sys
from enum import IntEnum
from pathlib import Path
from typing import List, Optional

from config.settings import settings
from logic import (
    CanonicalizationError, EmptyGroupError, EmptyModelError, ModelValidationError, NotReducibleError,
    ParseError, UnknownAgentError, UnknownStateError, parse_formula, parse_group, print_formula,
)
from semantics import dump_model_file, evaluate, extension, global_check, load_model_file, update
from solvers import QueryAction, SatStatus, fuzz_soundness, plan, sat_bounded, translate
from axioms import all_schemas
from utils import ReportFormatter, export_dot, write_dot

logger = logging.getLogger(__name__)


class ExitCode(IntEnum):
    SUCCESS = 0
    FALSE = 1
    USAGE = 2
    UNSUPPORTED = 3


class UsageError(Exception):
    """Bad flag combination or unreadable input file."""


formatter = ReportFormatter()


def _read_formula(args, flag: str = "formula"):
    text = getattr(args, flag, None)
    path = getattr(args, f"{flag}_file", None)
    if text is not None and path is not None:
        raise UsageError(f"--{flag} and --{flag}-file are mutually exclusive")
    if path is not None:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as e:
            raise UsageError(f"cannot read {path}: {e.strerror}")
    if text is None:
        raise UsageError(f"one of --{flag} or --{flag}-file is required")
    return parse_formula(text)


def _load_model(args):
    try:
        return load_model_file(args.model)
    except OSError as e:
        raise UsageError(f"cannot read model {args.model}: {e.strerror}")


def _parse_action(text: str) -> QueryAction:
    """``GROUP:QUESTION``, for example ``n,m:p``."""
    group, separator, question = text.partition(":")
    if not separator:
        raise UsageError(f"action {text!r} must look like GROUP:QUESTION")
    return QueryAction(group=parse_group(group), question=parse_formula(question))


def run_check(args) -> int:
    """List the states where the formula holds."""
    model = _load_model(args)
    formula = _read_formula(args)
    if args.algo == "reference":
        states = extension(model, formula)
    else:
        states = global_check(model, formula)
    print(formatter.format_extension(model, states), end="")
    return ExitCode.SUCCESS


def run_eval(args) -> int:
    model = _load_model(args)
    formula = _read_formula(args)
    value = evaluate(model, args.state, formula)
    print(formatter.format_truth(value), end="")
    return ExitCode.SUCCESS if value else ExitCode.FALSE


def run_update(args) -> int:
    """Apply one query and write the updated model document."""
    model = _load_model(args)
    group = parse_group(args.group)
    question = parse_formula(args.query)
    updated = update(model, group, question)
    if updated.is_empty:
        print("update yields empty model")
        return ExitCode.FALSE
    dump_model_file(updated, args.out)
    logger.info(f"Wrote {len(updated.states)} states to {args.out}")
    return ExitCode.SUCCESS


def run_translate(args) -> int:
    formula = _read_formula(args)
    print(print_formula(translate(formula)))
    return ExitCode.SUCCESS


def run_sat(args) -> int:
    formula = _read_formula(args)
    result = sat_bounded(formula, args.max_states)
    print(formatter.format_sat(result), end="")
    if result.status is SatStatus.SAT:
        return ExitCode.SUCCESS
    if result.status is SatStatus.UNSUPPORTED:
        return ExitCode.UNSUPPORTED
    return ExitCode.FALSE


def run_plan(args) -> int:
    """Search for the cheapest query sequence achieving the goal."""
    model = _load_model(args)
    goal = _read_formula(args, "goal")
    if not args.action:
        raise UsageError("at least one --action is required")
    actions = [_parse_action(text) for text in args.action]
    found = plan(model, args.state, goal, actions, args.max_depth)
    if found is None:
        print(formatter.format_no_plan(args.max_depth), end="")
        return ExitCode.FALSE
    print(formatter.format_plan(found), end="")
    return ExitCode.SUCCESS


def run_axioms(args) -> int:
    schemas = all_schemas()
    if args.schema:
        wanted = set(args.schema)
        unknown = wanted - {schema.name for schema in schemas}
        if unknown:
            raise UsageError(f"unknown schema: {', '.join(sorted(unknown))}")
        schemas = [schema for schema in schemas if schema.name in wanted]
    report = fuzz_soundness(args.trials, args.seed, schemas)
    print(formatter.format_fuzz_report(report), end="")
    return ExitCode.SUCCESS if report.ok else ExitCode.FALSE


def run_dot(args) -> int:
    model = _load_model(args)
    name = Path(args.model).stem
    if args.out:
        write_dot(model, args.out, name)
    else:
        print(export_dot(model, name), end="")
    return ExitCode.SUCCESS


def run_info(args) -> int:
    model = _load_model(args)
    print(formatter.format_model_info(model), end="")
    return ExitCode.SUCCESS


def _add_formula_options(parser: argparse.ArgumentParser, flag: str = "formula") -> None:
    parser.add_argument(f"--{flag}", help=f"{flag} text")
    parser.add_argument(f"--{flag}-file", help=f"file holding the {flag}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spq",
        description="Model checking, translation, satisfiability and planning for semi-public queries",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python main.py check --model data/telescope.json --formula "p"
  python main.py eval --model data/telescope.json --state w1 --formula "[? n,m : p] C{n,m} p"
  python main.py update --model data/telescope.json --group n,m --query p --out updated.json
  python main.py translate --formula "[? n : p] q"
  python main.py sat --formula "(b[i] >= 3) & K{i} (b[i] < 5)" --max-states 1
  python main.py plan --model data/telescope.json --state w1 --goal "C{n,m} p | C{n,m} ~p" --action n,m:p
  python main.py axioms --trials 50
  python main.py dot --model data/telescope.json
        """
    )
    parser.add_argument(
        "--verbose",
        "-v",
        action="store_true",
        help="Enable verbose logging"
    )
    commands = parser.add_subparsers(dest="command", required=True)

    check = commands.add_parser("check", help="list the states where a formula holds")
    check.add_argument("--model", required=True)
    _add_formula_options(check)
    check.add_argument("--algo", choices=["labeling", "reference"], default="labeling")
    check.set_defaults(handler=run_check)

    evaluate_cmd = commands.add_parser("eval", help="truth of a formula at one state")
    evaluate_cmd.add_argument("--model", required=True)
    evaluate_cmd.add_argument("--state", required=True)
    _add_formula_options(evaluate_cmd)
    evaluate_cmd.set_defaults(handler=run_eval)

    update_cmd = commands.add_parser("update", help="apply a group query and save the result")
    update_cmd.add_argument("--model", required=True)
    update_cmd.add_argument("--group", required=True, help="comma-separated agents")
    update_cmd.add_argument("--query", required=True, help="propositional question")
    update_cmd.add_argument("--out", required=True)
    update_cmd.set_defaults(handler=run_update)

    translate_cmd = commands.add_parser("translate", help="eliminate query boxes")
    _add_formula_options(translate_cmd)
    translate_cmd.set_defaults(handler=run_translate)

    sat = commands.add_parser("sat", help="bounded satisfiability")
    _add_formula_options(sat)
    sat.add_argument("--max-states", type=int, default=settings.max_states)
    sat.set_defaults(handler=run_sat)

    plan_cmd = commands.add_parser("plan", help="cheapest queries achieving a goal")
    plan_cmd.add_argument("--model", required=True)
    plan_cmd.add_argument("--state", required=True)
    _add_formula_options(plan_cmd, "goal")
    plan_cmd.add_argument("--action", action="append", help="GROUP:QUESTION, repeatable")
    plan_cmd.add_argument("--max-depth", type=int, default=settings.plan_max_depth)
    plan_cmd.set_defaults(handler=run_plan)

    axioms = commands.add_parser("axioms", help="fuzz the axiom schemas for soundness")
    axioms.add_argument("--trials", type=int, default=settings.fuzz_trials)
    axioms.add_argument("--seed", type=lambda text: int(text, 0), default=settings.fuzz_seed)
    axioms.add_argument("--schema", action="append", help="schema name, repeatable")
    axioms.set_defaults(handler=run_axioms)

    dot = commands.add_parser("dot", help="export a model as a DOT graph")
    dot.add_argument("--model", required=True)
    dot.add_argument("--out")
    dot.set_defaults(handler=run_dot)

    info = commands.add_parser("info", help="model counts and size")
    info.add_argument("--model", required=True)
    info.set_defaults(handler=run_info)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, configure logging and run one subcommand."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return ExitCode.USAGE if e.code else ExitCode.SUCCESS

    logging.basicConfig(
        level=getattr(logging, settings.log_level, logging.WARNING),
        format=settings.log_format
    )
    if args.verbose:
        logging.getLogger().setLevel(logging.DEBUG)

    try:
        settings.validate_settings()
    except ValueError as e:
        print(f"Configuration Error: {e}", file=sys.stderr)
        return ExitCode.USAGE

    try:
        return int(args.handler(args))
    except NotReducibleError as e:
        print(f"Error: {e}", file=sys.stderr)
        return ExitCode.UNSUPPORTED
    except EmptyModelError as e:
        print(f"Error: {e}", file=sys.stderr)
        return ExitCode.FALSE
    except (
        UsageError, ParseError, ModelValidationError, UnknownStateError, UnknownAgentError,
        EmptyGroupError, CanonicalizationError,
    ) as e:
        print(f"Error: {e}", file=sys.stderr)
        return ExitCode.USAGE
    except KeyboardInterrupt:
        print("\nInterrupted by user.", file=sys.stderr)
        return ExitCode.FALSE
    except Exception as e:
        print(f"Error: {str(e)}", file=sys.stderr)
        return ExitCode.FALSE


if __name__ == "__main__":
    sys.exit(main())
