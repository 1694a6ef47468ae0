"""The finite closure of a formula used by the small-model argument.

The closure is saturated to a fixpoint: it is closed under subformulas,
single negation, the resource sign facts, the common-knowledge unfolding and
the one-step rewrites of every query box.
"""

import logging
from typing import Dict, FrozenSet, Iterable, List, Optional, Set

from .queries import rewrite_box
from .similarity import class_key
from .syntax import (
    And, Budget, Common, Cost, Formula, Ineq, Know, Not, Query, TOP,
    agents_of, everybody, is_propositional, subformulas,
)

logger = logging.getLogger(__name__)


def _non_negative(term) -> Ineq:
    return Ineq(((1, term),), 0)


def _is_zero(term) -> Formula:
    return And(Ineq(((1, term),), 0), Ineq(((-1, term),), 0))


def _same_cost(agent: str, first: Formula, second: Formula) -> Formula:
    lhs = ((1, Cost(agent, first)), (-1, Cost(agent, second)))
    rhs = ((-1, Cost(agent, first)), (1, Cost(agent, second)))
    return And(Ineq(lhs, 0), Ineq(rhs, 0))


def _query_rewrites(formula: Query) -> List[Formula]:
    """Right-hand sides contributed by a query box, one rewrite deep."""
    body = formula.arg
    if isinstance(body, Common):
        # every member of the inner group, whatever that group is
        return [Query(formula.group, formula.question, Know(agent, body)) for agent in body.group]
    rewritten = rewrite_box(formula)
    return [rewritten] if rewritten is not None else []


def _expansions(formula: Formula) -> List[Formula]:
    """Members a single closure member forces into the closure."""
    added: List[Formula] = list(subformulas(formula))
    if not isinstance(formula, Not):
        added.append(Not(formula))
    if isinstance(formula, Common):
        added.append(everybody(formula.group, And(formula.arg, formula)))
    if isinstance(formula, Query):
        added.extend(_query_rewrites(formula))
    return added


def closure(formula: Formula, agents: Optional[Iterable[str]] = None) -> FrozenSet[Formula]:
    """
    Saturate ``formula`` under the closure rules.

    Args:
        formula: any SPQ formula
        agents: the agent vocabulary; defaults to the agents named in ``formula``

    Returns:
        The finite closure set
    """
    vocabulary = tuple(sorted(set(agents) if agents is not None else agents_of(formula)))

    members: Set[Formula] = set()
    pending: List[Formula] = [formula]
    for agent in vocabulary:
        pending.append(_non_negative(Budget(agent)))
        pending.append(_is_zero(Cost(agent, TOP)))

    costed: Set[Formula] = set()
    classes: Dict[object, List[Formula]] = {}

    while pending:
        current = pending.pop()
        if current in members:
            continue
        members.add(current)
        pending.extend(item for item in _expansions(current) if item not in members)

        # cost arguments of atoms are propositional members in their own right
        candidates = [current] if is_propositional(current) else []
        if isinstance(current, Ineq):
            candidates.extend(term.formula for _, term in current.summands if isinstance(term, Cost))
        for prop in candidates:
            if prop in costed:
                continue
            costed.add(prop)
            if prop not in members:
                pending.append(prop)
            siblings = classes.setdefault(class_key(prop), [])
            for agent in vocabulary:
                pending.append(_non_negative(Cost(agent, prop)))
                for other in siblings:
                    pending.append(_same_cost(agent, other, prop))
            siblings.append(prop)

    logger.debug(f"Closure saturated with {len(members)} members over agents {vocabulary}")
    return frozenset(members)
