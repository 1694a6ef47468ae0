"""Formula builders for group queries: the budget constraint, the
substituted atoms and the one-step rewrites of a query box.

The budget builders clear the division by |G| so every atom keeps integer
coefficients.
"""

from typing import Iterable, List, Optional, Tuple

from .syntax import (
    And, Bottom, Budget, Cost, Formula, Ineq, Know, Not, Prop, Query, Top,
    conjoin, disjoin, implies, make_group,
)


def cheapest_guard(group: Iterable[str], question: Formula, cheapest: str) -> Formula:
    """c_j(A) <= c_k(A) for every k in the group, where j is ``cheapest``."""
    members = make_group(group)
    return conjoin([
        Ineq(((1, Cost(member, question)), (-1, Cost(cheapest, question))), 0)
        for member in members
    ])


def bcs_formula(group: Iterable[str], question: Formula) -> Formula:
    """
    The budget constraint of a query as a formula.

    For each candidate cheapest agent j: j's cost is minimal, and every member
    i can pay the share, written |G|*b_i - c_j(A) >= 0. The disjunction runs
    over all j in the group.

    Args:
        group: nonempty set of agents asking
        question: the propositional question

    Returns:
        The formula BCS(G, A)
    """
    members = make_group(group)
    size = len(members)
    disjuncts: List[Formula] = []
    for cheapest in members:
        conjuncts: List[Formula] = []
        for member in members:
            conjuncts.append(Ineq(((1, Cost(member, question)), (-1, Cost(cheapest, question))), 0))
            conjuncts.append(Ineq(((size, Budget(member)), (-1, Cost(cheapest, question))), 0))
        disjuncts.append(conjoin(conjuncts))
    return disjoin(disjuncts)


def subst_inequality(atom: Ineq, group: Iterable[str], question: Formula) -> Formula:
    """
    The atom as it must hold before the query so that it holds after it.

    After the query every member's budget b_i becomes b_i - c_j(A)/|G| where j
    is a cheapest member. Which member is cheapest depends on the state, so
    the result is a disjunction over j, each disjunct guarded by j being
    cheapest. Multiplying by |G| keeps the coefficients integral.

    Args:
        atom: the linear atom under the query
        group: nonempty set of agents asking
        question: the propositional question

    Returns:
        A query-free formula equivalent to the atom after the update
    """
    members = make_group(group)
    size = len(members)
    disjuncts: List[Formula] = []
    for cheapest in members:
        summands = []
        for coefficient, term in atom.summands:
            if isinstance(term, Budget) and term.agent in members:
                summands.append((size * coefficient, term))
                summands.append((-coefficient, Cost(cheapest, question)))
            else:
                summands.append((size * coefficient, term))
        shifted = Ineq(tuple(summands), size * atom.bound)
        disjuncts.append(And(cheapest_guard(members, question, cheapest), shifted))
    return disjoin(disjuncts)


# One-step rewrites of a query box, read left to right from the reduction axioms


def rewrite_atom(group: Tuple[str, ...], question: Formula, atom: Formula) -> Formula:
    return implies(bcs_formula(group, question), atom)


def rewrite_inequality(group: Tuple[str, ...], question: Formula, atom: Ineq) -> Formula:
    return implies(bcs_formula(group, question), subst_inequality(atom, group, question))


def rewrite_negation(group: Tuple[str, ...], question: Formula, body: Formula) -> Formula:
    return implies(bcs_formula(group, question), Not(Query(group, question, body)))


def rewrite_conjunction(group: Tuple[str, ...], question: Formula, left: Formula, right: Formula) -> Formula:
    return And(Query(group, question, left), Query(group, question, right))


def rewrite_outsider(group: Tuple[str, ...], question: Formula, agent: str, body: Formula) -> Formula:
    """An agent outside the group only learns that the query happened."""
    return implies(bcs_formula(group, question), Know(agent, Query(group, question, body)))


def rewrite_member(group: Tuple[str, ...], question: Formula, agent: str, body: Formula) -> Formula:
    """A member learns the answer, whichever it is."""
    box = Query(group, question, body)
    return implies(bcs_formula(group, question), conjoin([
        implies(answer, Know(agent, implies(answer, box)))
        for answer in (question, Not(question))
    ]))


def rewrite_box(box: Query) -> Optional[Formula]:
    """
    The right side of the reduction axiom matching ``box``.

    Returns None when the body is itself a box, which has to be reduced
    first, or a common-knowledge formula, for which no reduction exists.
    """
    group, question, body = box.group, box.question, box.arg
    if isinstance(body, (Prop, Top, Bottom)):
        return rewrite_atom(group, question, body)
    if isinstance(body, Ineq):
        return rewrite_inequality(group, question, body)
    if isinstance(body, Not):
        return rewrite_negation(group, question, body.arg)
    if isinstance(body, And):
        return rewrite_conjunction(group, question, body.left, body.right)
    if isinstance(body, Know):
        if body.agent in group:
            return rewrite_member(group, question, body.agent, body.arg)
        return rewrite_outsider(group, question, body.agent, body.arg)
    return None
