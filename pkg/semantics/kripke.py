"""Finite SPQ models, budget constraints, the query update and G-reachability.

States are addressed by name or by index into ``Model.states``. Relations are
stored as one block id per state and agent; two states are related by an
agent exactly when they carry the same block id.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import networkx as nx

from linarith import rational_min, to_rational
from logic.errors import CanonicalizationError, ModelValidationError, UnknownAgentError, UnknownStateError
from logic.similarity import ClassKey, class_key
from logic.syntax import (
    And, Bottom, Budget, Cost, Formula, Not, Prop, Top, is_propositional, make_group,
)

logger = logging.getLogger(__name__)

StateRef = Union[str, int]


def canonical_blocks(keys: Sequence) -> Tuple[int, ...]:
    """Renumber block keys by first occurrence so equal partitions compare equal."""
    numbering: Dict[object, int] = {}
    return tuple(numbering.setdefault(key, len(numbering)) for key in keys)


@dataclass(frozen=True)
class Model:
    """
    A finite model: states, per-agent partitions, valuation, budgets and costs.

    Costs are stored per agent and state as a mapping from similarity class to
    value; classes not listed cost 0. ``cost_formulas`` keeps one formula per
    class for printing and takes no part in equality.

    Nothing is written to an instance after construction. ``update`` and
    ``components`` memoise by value in bounded module-level caches.
    """
    states: Tuple[str, ...]
    agents: Tuple[str, ...]
    blocks: Dict[str, Tuple[int, ...]] = field(hash=False)
    valuation: Dict[str, FrozenSet[int]] = field(hash=False)
    budgets: Dict[str, Tuple[Fraction, ...]] = field(hash=False)
    costs: Dict[str, Tuple[Dict[ClassKey, Fraction], ...]] = field(hash=False)
    cost_formulas: Dict[ClassKey, Formula] = field(default_factory=dict, hash=False, compare=False, repr=False)
    _positions: Dict[str, int] = field(init=False, hash=False, compare=False, repr=False)

    def __post_init__(self):
        errors: List[str] = []
        count = len(self.states)
        if len(set(self.states)) != count:
            errors.append("duplicate state names")
        if len(set(self.agents)) != len(self.agents):
            errors.append("duplicate agent names")
        for agent in self.agents:
            if len(self.blocks.get(agent, ())) != count:
                errors.append(f"relation of agent {agent} does not cover every state")
            budgets = self.budgets.get(agent, ())
            if len(budgets) != count:
                errors.append(f"budgets of agent {agent} do not cover every state")
            elif any(value < 0 for value in budgets):
                errors.append(f"negative budget for agent {agent}")
            costs = self.costs.get(agent, ())
            if len(costs) != count:
                errors.append(f"costs of agent {agent} do not cover every state")
                continue
            for index, table in enumerate(costs):
                for key, value in table.items():
                    if value < 0:
                        errors.append(f"negative cost for agent {agent} at {self.states[index]}")
                    if key.is_tautology_class() and value != 0:
                        errors.append(f"tautology-class cost nonzero for agent {agent} at {self.states[index]}")
        for prop, members in self.valuation.items():
            if any(not 0 <= index < count for index in members):
                errors.append(f"valuation of {prop} names a state outside the model")
        if errors:
            raise ModelValidationError(errors)
        object.__setattr__(self, "_positions", {name: position for position, name in enumerate(self.states)})

    # Construction

    @classmethod
    def build(
        cls,
        states: Sequence[str],
        agents: Sequence[str],
        partitions: Mapping[str, Sequence[Sequence[str]]],
        valuation: Optional[Mapping[str, Iterable[str]]] = None,
        budgets: Optional[Mapping[str, Mapping[str, Union[int, str, Fraction]]]] = None,
        costs: Iterable[Tuple[str, str, Formula, Union[int, str, Fraction]]] = (),
    ) -> "Model":
        """
        Build a model from names, checking every model constraint.

        Args:
            states: state names in model order
            agents: agent names
            partitions: per agent, the list of equivalence classes
            valuation: per variable, the states where it is true
            budgets: per agent and state name; omitted entries are 0
            costs: (agent, state, propositional formula, value) entries;
                omitted classes cost 0

        Returns:
            The validated model

        Raises:
            ModelValidationError: listing every violated constraint
        """
        states = tuple(states)
        agents = tuple(agents)
        index = {name: position for position, name in enumerate(states)}
        errors: List[str] = []

        blocks: Dict[str, Tuple[int, ...]] = {}
        for agent in partitions:
            if agent not in agents:
                errors.append(f"unknown agent in relations: {agent}")
        for agent in agents:
            if agent not in partitions:
                errors.append(f"missing relation for agent {agent}")
                continue
            owner: Dict[int, int] = {}
            for number, block in enumerate(partitions[agent]):
                if not block:
                    errors.append(f"empty class in relation of agent {agent}")
                for name in block:
                    if name not in index:
                        errors.append(f"unknown state in relation of agent {agent}: {name}")
                    elif index[name] in owner:
                        errors.append(f"relation of agent {agent} is not a partition: {name} is in two classes")
                    else:
                        owner[index[name]] = number
            missing = [name for name in states if index[name] not in owner]
            if missing:
                errors.append(f"relation of agent {agent} is not a partition: missing {', '.join(missing)}")
                continue
            blocks[agent] = canonical_blocks([owner[position] for position in range(len(states))])

        true_at: Dict[str, FrozenSet[int]] = {}
        for prop, names in (valuation or {}).items():
            members = set()
            for name in names:
                if name not in index:
                    errors.append(f"unknown state in valuation of {prop}: {name}")
                else:
                    members.add(index[name])
            if members:
                true_at[prop] = frozenset(members)

        budget_table: Dict[str, List[Fraction]] = {agent: [Fraction(0)] * len(states) for agent in agents}
        for agent, entries in (budgets or {}).items():
            if agent not in budget_table:
                errors.append(f"unknown agent in budgets: {agent}")
                continue
            for name, value in entries.items():
                if name not in index:
                    errors.append(f"unknown state in budgets of agent {agent}: {name}")
                    continue
                try:
                    amount = to_rational(value)
                except ValueError as error:
                    errors.append(f"budget of agent {agent} at {name}: {error}")
                    continue
                if amount < 0:
                    errors.append(f"negative budget for agent {agent} at {name}")
                budget_table[agent][index[name]] = amount

        cost_table: Dict[str, List[Dict[ClassKey, Fraction]]] = {
            agent: [{} for _ in states] for agent in agents
        }
        representatives: Dict[ClassKey, Formula] = {}
        for agent, name, formula, value in costs:
            if agent not in cost_table:
                errors.append(f"unknown agent in costs: {agent}")
                continue
            if name not in index:
                errors.append(f"unknown state in costs of agent {agent}: {name}")
                continue
            if not is_propositional(formula):
                errors.append(f"cost formula for agent {agent} at {name} is not propositional")
                continue
            try:
                amount = to_rational(value)
            except ValueError as error:
                errors.append(f"cost of agent {agent} at {name}: {error}")
                continue
            try:
                key = class_key(formula)
            except CanonicalizationError as error:
                errors.append(f"cost formula for agent {agent} at {name}: {error}")
                continue
            if amount < 0:
                errors.append(f"negative cost for agent {agent} at {name}")
                continue
            if key.is_tautology_class():
                if amount != 0:
                    errors.append(f"tautology-class cost nonzero for agent {agent} at {name}")
                continue
            table = cost_table[agent][index[name]]
            if key in table and table[key] != amount:
                errors.append(f"similarity-class conflict for agent {agent} at {name}: {table[key]} and {amount}")
                continue
            table[key] = amount
            representatives.setdefault(key, formula)

        if errors:
            raise ModelValidationError(errors)

        return cls(
            states=states,
            agents=agents,
            blocks=blocks,
            valuation=true_at,
            budgets={agent: tuple(values) for agent, values in budget_table.items()},
            costs={
                agent: tuple({key: value for key, value in table.items() if value != 0} for table in tables)
                for agent, tables in cost_table.items()
            },
            cost_formulas=representatives,
        )

    # Addressing

    @property
    def is_empty(self) -> bool:
        return not self.states

    def index(self, state: StateRef) -> int:
        """Position of a state given by name or index."""
        if isinstance(state, int) and not isinstance(state, bool):
            if 0 <= state < len(self.states):
                return state
            raise UnknownStateError(state)
        if state not in self._positions:
            raise UnknownStateError(state)
        return self._positions[state]

    def names(self, indices: Iterable[int]) -> FrozenSet[str]:
        return frozenset(self.states[index] for index in indices)

    def check_agent(self, agent: str) -> str:
        if agent not in self.blocks:
            raise UnknownAgentError(agent)
        return agent

    def check_group(self, group: Iterable[str]) -> Tuple[str, ...]:
        members = make_group(group)
        for agent in members:
            self.check_agent(agent)
        return members

    # Vocabulary

    def props(self) -> Tuple[str, ...]:
        return tuple(sorted(self.valuation))

    def true_props(self, state: StateRef) -> FrozenSet[str]:
        """P(w): the variables true at ``state``."""
        position = self.index(state)
        return frozenset(prop for prop, members in self.valuation.items() if position in members)

    def block_of(self, agent: str, state: StateRef) -> FrozenSet[str]:
        """The equivalence class of ``state`` for ``agent``."""
        position = self.index(state)
        row = self.blocks[self.check_agent(agent)]
        return frozenset(self.states[k] for k, block in enumerate(row) if block == row[position])

    def partition(self, agent: str) -> List[List[str]]:
        """Equivalence classes of ``agent`` in state order."""
        classes: Dict[int, List[str]] = {}
        for position, block in enumerate(self.blocks[self.check_agent(agent)]):
            classes.setdefault(block, []).append(self.states[position])
        return list(classes.values())

    def budget(self, agent: str, state: StateRef) -> Fraction:
        return self.budgets[self.check_agent(agent)][self.index(state)]

    def cost_of_key(self, agent: str, state: StateRef, key: ClassKey) -> Fraction:
        return self.costs[self.check_agent(agent)][self.index(state)].get(key, Fraction(0))

    def cost(self, agent: str, state: StateRef, formula: Formula) -> Fraction:
        """Cost_i(w, A), looked up through the similarity class of A."""
        return self.cost_of_key(agent, state, class_key(formula))

    def positive_cost_classes(self, agent: str, state: StateRef) -> FrozenSet[ClassKey]:
        """c>0(i, w): the similarity classes with positive cost."""
        table = self.costs[self.check_agent(agent)][self.index(state)]
        return frozenset(key for key, value in table.items() if value > 0)

    def size(self) -> int:
        """|M|: states, related ordered pairs, positive-cost classes and true variables."""
        total = len(self.states)
        for agent in self.agents:
            counts: Dict[int, int] = {}
            for block in self.blocks[agent]:
                counts[block] = counts.get(block, 0) + 1
            total += sum(count * count for count in counts.values())
            total += sum(
                sum(1 for value in table.values() if value > 0) for table in self.costs[agent]
            )
        total += sum(len(members) for members in self.valuation.values())
        return total

    def is_resource_aware(self) -> bool:
        """True when every agent's budget and costs are constant on its own classes."""
        for agent in self.agents:
            seen: Dict[int, int] = {}
            for position, block in enumerate(self.blocks[agent]):
                first = seen.setdefault(block, position)
                if self.budgets[agent][first] != self.budgets[agent][position]:
                    return False
                if self.costs[agent][first] != self.costs[agent][position]:
                    return False
        return True


# Semantics of the static parts


def eval_prop(model: Model, state: StateRef, formula: Formula) -> bool:
    """Classical truth of a propositional formula; unknown variables are false."""
    position = model.index(state)
    stack = [formula]
    order: List[Formula] = []
    while stack:
        node = stack.pop()
        order.append(node)
        if isinstance(node, Not):
            stack.append(node.arg)
        elif isinstance(node, And):
            stack.extend((node.left, node.right))
        elif not isinstance(node, (Prop, Top, Bottom)):
            raise ValueError(f"not propositional: {node!r}")
    # reversed pre-order visits children before parents
    results: List[bool] = []
    for node in reversed(order):
        if isinstance(node, Prop):
            results.append(position in model.valuation.get(node.name, ()))
        elif isinstance(node, Top):
            results.append(True)
        elif isinstance(node, Bottom):
            results.append(False)
        elif isinstance(node, Not):
            results.append(not results.pop())
        else:
            first = results.pop()
            second = results.pop()
            results.append(first and second)
    return results[0]


def prop_extension(model: Model, formula: Formula) -> FrozenSet[int]:
    """Indices of the states where a propositional formula is true."""
    return frozenset(k for k in range(len(model.states)) if eval_prop(model, k, formula))


def term_value(model: Model, state: StateRef, term) -> Fraction:
    """Bdg_i(w) for a budget term, Cost_i(w, A) for a cost term."""
    if isinstance(term, Budget):
        return model.budget(term.agent, state)
    if isinstance(term, Cost):
        return model.cost(term.agent, state, term.formula)
    raise TypeError(f"not a term: {term!r}")


def query_share(model: Model, state: StateRef, group: Iterable[str], question: Formula) -> Fraction:
    """The per-member share: the cheapest member's cost divided by |G|."""
    members = model.check_group(group)
    key = class_key(question)
    cheapest = rational_min(model.cost_of_key(agent, state, key) for agent in members)
    return cheapest / len(members)


def bcs_holds(model: Model, state: StateRef, group: Iterable[str], question: Formula) -> bool:
    """Every member can pay the share of the cheapest member's cost."""
    members = model.check_group(group)
    share = query_share(model, state, members, question)
    return all(model.budget(agent, state) >= share for agent in members)


def update(model: Model, group: Iterable[str], question: Formula) -> Model:
    """
    The model after the group asks the question.

    Survivors are the states where the budget constraint holds. Members of
    the group additionally split their classes by the answer, and pay the
    share. The result may have no states.

    Args:
        model: the current model
        group: nonempty set of asking agents
        question: propositional question

    Returns:
        The updated model, memoised by value in a bounded module-level cache
    """
    return _updated(model, model.check_group(group), question)


@lru_cache(maxsize=1024)
def _updated(model: Model, members: Tuple[str, ...], question: Formula) -> Model:
    answer = prop_extension(model, question)
    key = class_key(question)
    survivors: List[int] = []
    shares: Dict[int, Fraction] = {}
    for position in range(len(model.states)):
        cheapest = rational_min(model.cost_of_key(agent, position, key) for agent in members)
        share = cheapest / len(members)
        if all(model.budgets[agent][position] >= share for agent in members):
            survivors.append(position)
            shares[position] = share

    renumber = {old: new for new, old in enumerate(survivors)}
    blocks = {}
    budgets = {}
    for agent in model.agents:
        row = model.blocks[agent]
        if agent in members:
            blocks[agent] = canonical_blocks([(row[k], k in answer) for k in survivors])
            budgets[agent] = tuple(model.budgets[agent][k] - shares[k] for k in survivors)
        else:
            blocks[agent] = canonical_blocks([row[k] for k in survivors])
            budgets[agent] = tuple(model.budgets[agent][k] for k in survivors)
    valuation = {}
    for prop, members_true in model.valuation.items():
        kept = frozenset(renumber[k] for k in members_true if k in renumber)
        if kept:
            valuation[prop] = kept

    updated = Model(
        states=tuple(model.states[k] for k in survivors),
        agents=model.agents,
        blocks=blocks,
        valuation=valuation,
        budgets=budgets,
        costs={agent: tuple(dict(model.costs[agent][k]) for k in survivors) for agent in model.agents},
        cost_formulas=dict(model.cost_formulas),
    )
    logger.debug(f"Update by {members} asking {question!r}: {len(survivors)}/{len(model.states)} states survive")
    return updated


def components(model: Model, group: Iterable[str]) -> Tuple[int, ...]:
    """Connected-component id per state in the union graph of the group's relations."""
    return _components(model, model.check_group(group))


@lru_cache(maxsize=1024)
def _components(model: Model, members: Tuple[str, ...]) -> Tuple[int, ...]:
    graph = nx.Graph()
    graph.add_nodes_from(range(len(model.states)))
    for agent in members:
        first: Dict[int, int] = {}
        for position, block in enumerate(model.blocks[agent]):
            anchor = first.setdefault(block, position)
            if anchor != position:
                graph.add_edge(anchor, position)
    labels = [0] * len(model.states)
    for number, component in enumerate(nx.connected_components(graph)):
        for position in component:
            labels[position] = number
    return canonical_blocks(labels)


def reach_group(model: Model, group: Iterable[str], state: StateRef) -> FrozenSet[str]:
    """States reachable from ``state`` along the union of the group's relations."""
    position = model.index(state)
    labels = components(model, group)
    return frozenset(model.states[k] for k, label in enumerate(labels) if label == labels[position])
