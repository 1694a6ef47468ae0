"""Random models and formulas for fuzzing and property tests.

Every generator draws from the ``random.Random`` it is given, so a seed fixes
the output.
"""

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from logic.similarity import class_key
from logic.syntax import (
    And, Budget, Common, Cost, Formula, Ineq, Know, Not, Prop, Query, TOP, BOTTOM,
    make_group,
)
from semantics.kripke import Model

AGENT_NAMES = ("a", "b", "c")
PROP_NAMES = ("p", "q", "r")
HALVES = tuple(Fraction(k, 2) for k in range(21))


@dataclass(frozen=True)
class Signature:
    """The vocabulary instances are drawn over."""
    agents: Tuple[str, ...]
    props: Tuple[str, ...] = PROP_NAMES

    @classmethod
    def of(cls, model: Model, props: Sequence[str] = PROP_NAMES) -> "Signature":
        return cls(tuple(model.agents), tuple(props))


def random_partition(rng: random.Random, states: Sequence[str]) -> List[List[str]]:
    blocks: List[List[str]] = []
    for state in states:
        choice = rng.randint(0, len(blocks))
        if choice == len(blocks):
            blocks.append([state])
        else:
            blocks[choice].append(state)
    return blocks


def random_group(rng: random.Random, agents: Sequence[str]) -> Tuple[str, ...]:
    size = rng.randint(1, len(agents))
    return make_group(rng.sample(list(agents), size))


def random_prop(rng: random.Random, props: Sequence[str] = PROP_NAMES, depth: int = 2) -> Formula:
    """A propositional formula of bounded depth."""
    if depth <= 0 or rng.random() < 0.35:
        roll = rng.random()
        if roll < 0.06:
            return TOP
        if roll < 0.1:
            return BOTTOM
        return Prop(rng.choice(list(props)))
    if rng.random() < 0.4:
        return Not(random_prop(rng, props, depth - 1))
    return And(random_prop(rng, props, depth - 1), random_prop(rng, props, depth - 1))


def random_term(rng: random.Random, agents: Sequence[str], props: Sequence[str] = PROP_NAMES):
    agent = rng.choice(list(agents))
    if rng.random() < 0.5:
        return Budget(agent)
    return Cost(agent, random_prop(rng, props, 1))


def random_ineq(rng: random.Random, agents: Sequence[str], props: Sequence[str] = PROP_NAMES) -> Ineq:
    """A linear atom with one to three summands and small integer coefficients."""
    summands = []
    for _ in range(rng.randint(1, 3)):
        coefficient = rng.choice([-3, -2, -1, 1, 1, 2, 3])
        summands.append((coefficient, random_term(rng, agents, props)))
    return Ineq(tuple(summands), rng.randint(-10, 10))


def random_formula(
    rng: random.Random,
    agents: Sequence[str],
    props: Sequence[str] = PROP_NAMES,
    depth: int = 3,
    max_queries: int = 2,
    allow_common: bool = True,
    allow_queries: bool = True,
    common_under_query: bool = True,
) -> Formula:
    """
    A random formula over the signature.

    Args:
        rng: random source
        agents: agent vocabulary (nonempty)
        props: variable vocabulary
        depth: maximal operator nesting
        max_queries: maximal number of query boxes in the result
        allow_common: whether common knowledge may occur
        allow_queries: whether query boxes may occur
        common_under_query: whether common knowledge may occur inside a query

    Returns:
        The formula
    """
    remaining = [max_queries if allow_queries else 0]

    def build(level: int, under_query: bool) -> Formula:
        if level <= 0 or rng.random() < 0.2:
            roll = rng.random()
            if roll < 0.55:
                return Prop(rng.choice(list(props)))
            if roll < 0.95:
                return random_ineq(rng, agents, props)
            return TOP if roll < 0.975 else BOTTOM
        options = ["not", "and", "know"]
        if allow_common and (common_under_query or not under_query):
            options.append("common")
        if remaining[0] > 0:
            options.append("query")
        choice = rng.choice(options)
        if choice == "not":
            return Not(build(level - 1, under_query))
        if choice == "and":
            return And(build(level - 1, under_query), build(level - 1, under_query))
        if choice == "know":
            return Know(rng.choice(list(agents)), build(level - 1, under_query))
        if choice == "common":
            return Common(random_group(rng, agents), build(level - 1, under_query))
        remaining[0] -= 1
        return Query(random_group(rng, agents), random_prop(rng, props, 2), build(level - 1, True))

    return build(depth, False)


_COST_POOL = (
    Prop("p"), Prop("q"), Prop("r"),
    And(Prop("p"), Prop("q")), And(Prop("q"), Prop("r")),
    Not(And(Not(Prop("p")), Not(Prop("r")))),
    And(Prop("p"), Not(Prop("q"))),
)


def random_model(
    rng: random.Random,
    min_states: int = 1,
    max_states: int = 6,
    min_agents: int = 1,
    max_agents: int = 3,
    props: Sequence[str] = PROP_NAMES,
    aware: bool = False,
    cost_pool: Optional[Sequence[Formula]] = None,
) -> Model:
    """
    A random valid model.

    Budgets and costs are drawn from {0, 1/2, ..., 10}. Costs are set per
    similarity class, so no two entries conflict; the tautology class is
    never priced. With ``aware`` every agent's budget and costs are constant
    on its own classes.
    """
    states = [f"w{k}" for k in range(1, rng.randint(min_states, max_states) + 1)]
    agents = list(AGENT_NAMES[:rng.randint(min_agents, max_agents)])
    partitions = {agent: random_partition(rng, states) for agent in agents}
    valuation = {prop: [state for state in states if rng.random() < 0.5] for prop in props}
    pool = [formula for formula in (cost_pool or _COST_POOL) if not class_key(formula).is_tautology_class()]

    budgets = {}
    costs = []
    for agent in agents:
        if aware:
            groups = partitions[agent]
        else:
            groups = [[state] for state in states]
        budgets[agent] = {}
        for group in groups:
            budget = rng.choice(HALVES)
            priced = {}
            for formula in rng.sample(pool, rng.randint(0, min(3, len(pool)))):
                priced.setdefault(class_key(formula), (formula, rng.choice(HALVES)))
            for state in group:
                budgets[agent][state] = budget
                costs.extend((agent, state, formula, value) for formula, value in priced.values())
    return Model.build(states, agents, partitions, valuation, budgets, costs)


def random_static_formula(rng: random.Random, agents: Sequence[str], props: Sequence[str] = PROP_NAMES,
                          depth: int = 2) -> Formula:
    return random_formula(rng, agents, props, depth, max_queries=0, allow_queries=False)
