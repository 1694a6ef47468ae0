"""Text rendering of plans, verdicts, fuzz reports and models."""

import json
from typing import Iterable, List

from linarith.rational import format_rational
from semantics.kripke import Model
from semantics.model_io import dump_model
from solvers.planner import Plan, PlanStep
from solvers.satisfiability import SatResult, SatStatus
from solvers.soundness import FuzzReport


class ReportFormatter:
    """Formats toolkit results for the command line."""

    def format_extension(self, model: Model, states: Iterable[str]) -> str:
        """One state name per line, in model order."""
        chosen = set(states)
        return "".join(f"{name}\n" for name in model.states if name in chosen)

    def format_truth(self, value: bool) -> str:
        return "true\n" if value else "false\n"

    def format_plan(self, plan: Plan) -> str:
        """
        One line per query with what it cost, then the total.

        Args:
            plan: a plan returned by the planner

        Returns:
            Formatted plan text
        """
        lines = [self._format_step(step) for step in plan.steps]
        lines.append(f"total: {format_rational(plan.total)}")
        return "\n".join(lines) + "\n"

    def format_no_plan(self, max_depth: int) -> str:
        return f"no plan within {max_depth} steps\n"

    def format_sat(self, result: SatResult) -> str:
        """The witness model document for SAT, a one-line verdict otherwise."""
        if result.status is SatStatus.SAT:
            document = json.dumps(dump_model(result.witness), indent=2)
            return f"SAT at {result.state}\n{document}\n"
        if result.status is SatStatus.UNSAT_UP_TO:
            return f"UNSAT up to {result.max_states} states (theoretical bound: {result.theoretical_bound})\n"
        return f"UNSUPPORTED: {result.reason}\n"

    def format_fuzz_report(self, report: FuzzReport, show_counterexamples: bool = True) -> str:
        """
        The ``name trials failures`` lines, followed by any counterexamples.
        """
        lines = report.lines()
        if show_counterexamples:
            lines.extend(self._format_counterexamples(report))
        return "\n".join(lines) + "\n"

    def format_model_info(self, model: Model) -> str:
        """State, agent and variable counts and the model size |M|."""
        lines = [
            f"states: {len(model.states)}",
            f"agents: {len(model.agents)}",
            f"variables: {len(model.props())}",
            f"size: {model.size()}",
        ]
        return "\n".join(lines) + "\n"

    def _format_step(self, step: PlanStep) -> str:
        return (
            f"query {step.action} — spent {format_rational(step.spent)}, "
            f"shares {format_rational(step.share)}"
        )

    def _format_counterexamples(self, report: FuzzReport) -> List[str]:
        lines: List[str] = []
        for result in report.results:
            for counterexample in result.counterexamples:
                lines.append(f"counterexample {result.name} trial {counterexample.trial}: {counterexample.instance}")
                lines.append(json.dumps(counterexample.model, sort_keys=True))
        return lines
