"""Cheapest sequences of group queries that make a goal true at a state."""

import heapq
import itertools
import logging
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, field_validator

from config.settings import settings
from logic.parser import print_formula
from logic.syntax import Formula, is_propositional, make_group
from semantics.evaluator import evaluate
from semantics.kripke import Model, StateRef, bcs_holds, query_share, update

logger = logging.getLogger(__name__)


class QueryAction(BaseModel):
    """A group asking a propositional question."""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    group: Tuple[str, ...]
    question: Formula

    @field_validator("group", mode="before")
    @classmethod
    def _normalise_group(cls, value):
        return make_group(value)

    @field_validator("question")
    @classmethod
    def _propositional(cls, value):
        if not is_propositional(value):
            raise ValueError("query questions must be propositional")
        return value

    def __str__(self) -> str:
        return f"{{{','.join(self.group)}}} : {print_formula(self.question)}"


class PlanStep(BaseModel):
    """One executed query with the amount the group surrendered."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    action: QueryAction
    spent: Fraction
    share: Fraction


class Plan(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    steps: List[PlanStep] = []
    total: Fraction = Fraction(0)

    @property
    def actions(self) -> List[QueryAction]:
        return [step.action for step in self.steps]


def _signature(model: Model) -> Tuple:
    """Survivors, partitions and budgets; costs never change under update."""
    return (
        model.states,
        tuple(model.blocks[agent] for agent in model.agents),
        tuple(model.budgets[agent] for agent in model.agents),
    )


def replay(model: Model, state: StateRef, goal: Formula, actions: Sequence[QueryAction]) -> Plan:
    """
    Execute ``actions`` in order and account for what each one costs.

    Raises:
        RuntimeError: if a step's budget constraint fails or the goal does not
            hold at the end
    """
    name = model.states[model.index(state)]
    current = model
    steps: List[PlanStep] = []
    for action in actions:
        if not bcs_holds(current, name, action.group, action.question):
            raise RuntimeError(f"budget constraint fails for query {action}")
        share = query_share(current, name, action.group, action.question)
        steps.append(PlanStep(action=action, spent=share * len(action.group), share=share))
        current = update(current, action.group, action.question)
    if not evaluate(current, name, goal):
        raise RuntimeError("goal does not hold after replaying the plan")
    return Plan(steps=steps, total=sum((step.spent for step in steps), Fraction(0)))


def plan(
    model: Model,
    state: StateRef,
    goal: Formula,
    actions: Sequence[QueryAction],
    max_depth: Optional[int] = None,
) -> Optional[Plan]:
    """
    Uniform-cost search for the cheapest query sequence achieving ``goal``.

    A plan's cost is the sum over its steps of the cheapest member's cost
    for the question. Ties go to fewer steps, then to the earlier actions
    in ``actions``.

    Args:
        model: the initial model
        state: the designated state, kept fixed throughout
        goal: formula that must hold at the state at the end
        actions: the queries available, in preference order
        max_depth: longest plan considered; defaults to the configured depth

    Returns:
        The optimal plan, or None when no plan of at most ``max_depth`` steps exists

    Raises:
        UnknownStateError: when the state is not in the model
        ValueError: for an empty action list or a negative depth
    """
    depth_bound = settings.plan_max_depth if max_depth is None else max_depth
    if depth_bound < 0:
        raise ValueError("max_depth must not be negative")
    if not actions:
        raise ValueError("the planner needs at least one action")
    name = model.states[model.index(state)]
    for action in actions:
        model.check_group(action.group)

    tie = itertools.count()
    frontier: List = [(Fraction(0), 0, (), next(tie), model)]
    settled: Dict[Tuple, int] = {}
    expanded = 0

    while frontier:
        spent, depth, path, _, current = heapq.heappop(frontier)
        signature = _signature(current)
        if signature in settled and settled[signature] <= depth:
            continue
        settled[signature] = depth

        if evaluate(current, name, goal):
            chosen = [actions[index] for index in path]
            result = replay(model, name, goal, chosen)
            if result.total != spent:
                raise RuntimeError("replayed plan cost differs from the search cost")
            logger.info(f"Plan of {len(chosen)} steps found, total spent {spent}, {expanded} nodes expanded")
            return result

        if depth >= depth_bound:
            continue
        expanded += 1
        for index, action in enumerate(actions):
            if not bcs_holds(current, name, action.group, action.question):
                continue
            cost = query_share(current, name, action.group, action.question) * len(action.group)
            child = update(current, action.group, action.question)
            heapq.heappush(frontier, (spent + cost, depth + 1, path + (index,), next(tie), child))
        logger.debug(f"Expanded node at depth {depth} with spent {spent}")

    logger.info(f"No plan within {depth_bound} steps")
    return None
