"""Reference evaluator: the truth clauses applied directly, state sets at a time.

Extensions are computed bottom-up; only query boxes recurse, into an
evaluator for the updated model.
"""

import logging
from fractions import Fraction
from typing import Dict, FrozenSet, List, Tuple

from logic.similarity import class_key
from logic.syntax import (
    And, Bottom, Budget, Common, Formula, Ineq, Know, Not, Prop, Query, Top, children,
)
from .kripke import Model, StateRef, components, update

logger = logging.getLogger(__name__)


def _blocks_inside(row: Tuple[int, ...], inside: FrozenSet[int]) -> FrozenSet[int]:
    """States whose whole block (by ``row``) lies in ``inside``."""
    broken = {row[k] for k in range(len(row)) if k not in inside}
    return frozenset(k for k in range(len(row)) if row[k] not in broken)


class Evaluator:
    """Evaluates formulas on one model, memoizing extensions per node object."""

    def __init__(self, model: Model):
        self.model = model
        self._memo: Dict[int, FrozenSet[int]] = {}
        self._keep: List[Formula] = []
        self._children: Dict[Tuple, "Evaluator"] = {}

    def _updated(self, node: Query) -> "Evaluator":
        key = (node.group, node.question)
        child = self._children.get(key)
        if child is None:
            child = Evaluator(update(self.model, node.group, node.question))
            self._children[key] = child
        return child

    def _inequality(self, node: Ineq) -> FrozenSet[int]:
        model = self.model
        lookups = []
        for coefficient, term in node.summands:
            if isinstance(term, Budget):
                lookups.append((coefficient, model.budgets[model.check_agent(term.agent)], None))
            else:
                lookups.append((coefficient, model.costs[model.check_agent(term.agent)], class_key(term.formula)))
        result = set()
        for position in range(len(model.states)):
            total = Fraction(0)
            for coefficient, table, key in lookups:
                value = table[position] if key is None else table[position].get(key, Fraction(0))
                total += coefficient * value
            if total >= node.bound:
                result.add(position)
        return frozenset(result)

    def _query(self, node: Query) -> FrozenSet[int]:
        model = self.model
        child = self._updated(node)
        inner = child.extension_indices(node.arg)
        survivors = {model.index(name) for name in child.model.states}
        vacuous = frozenset(range(len(model.states))) - survivors
        return vacuous | frozenset(model.index(child.model.states[k]) for k in inner)

    def _compute(self, node: Formula, values: Dict[int, FrozenSet[int]]) -> FrozenSet[int]:
        model = self.model
        everything = frozenset(range(len(model.states)))
        if isinstance(node, Prop):
            return model.valuation.get(node.name, frozenset())
        if isinstance(node, Top):
            return everything
        if isinstance(node, Bottom):
            return frozenset()
        if isinstance(node, Ineq):
            return self._inequality(node)
        if isinstance(node, Not):
            return everything - values[id(node.arg)]
        if isinstance(node, And):
            return values[id(node.left)] & values[id(node.right)]
        if isinstance(node, Know):
            return _blocks_inside(model.blocks[model.check_agent(node.agent)], values[id(node.arg)])
        if isinstance(node, Common):
            return _blocks_inside(components(model, node.group), values[id(node.arg)])
        if isinstance(node, Query):
            return self._query(node)
        raise TypeError(f"not a formula: {node!r}")

    def extension_indices(self, formula: Formula) -> FrozenSet[int]:
        """Indices of the states satisfying ``formula``."""
        memo = self._memo
        if id(formula) in memo:
            return memo[id(formula)]
        self._keep.append(formula)
        stack: List[Tuple[Formula, bool]] = [(formula, False)]
        while stack:
            node, expanded = stack.pop()
            if id(node) in memo:
                continue
            if expanded or isinstance(node, Query):
                memo[id(node)] = self._compute(node, memo)
                continue
            stack.append((node, True))
            stack.extend((child, False) for child in children(node) if id(child) not in memo)
        return memo[id(formula)]

    def holds(self, state: StateRef, formula: Formula) -> bool:
        return self.model.index(state) in self.extension_indices(formula)

    def extension(self, formula: Formula) -> FrozenSet[str]:
        return self.model.names(self.extension_indices(formula))


def evaluate(model: Model, state: StateRef, formula: Formula) -> bool:
    """
    Truth of ``formula`` at ``state``.

    A query box is vacuously true where its budget constraint fails and is
    otherwise evaluated in the updated model.

    Args:
        model: the model
        state: state name or index
        formula: any formula

    Returns:
        True when the formula holds at the state

    Raises:
        UnknownStateError: when the state is not in the model
        UnknownAgentError: when the formula names an agent the model lacks
    """
    return Evaluator(model).holds(state, formula)


def extension(model: Model, formula: Formula) -> FrozenSet[str]:
    """The names of all states where ``formula`` holds."""
    return Evaluator(model).extension(formula)


def is_valid_on(model: Model, formula: Formula) -> bool:
    """True when the formula holds at every state of the model."""
    return len(Evaluator(model).extension_indices(formula)) == len(model.states)
