"""Sign and similarity facts about budgets and costs."""

import random

from logic.syntax import And, Budget, Cost, Formula, Ineq, Not, TOP, equals
from .base_axiom import AxiomSchema
from .generators import Signature, random_prop


def similar_variant(rng: random.Random, formula: Formula) -> Formula:
    """A formula equivalent to ``formula`` or to its negation."""
    variants = [
        Not(formula),
        Not(Not(formula)),
        And(formula, formula),
        And(formula, TOP),
        And(TOP, Not(formula)),
        Not(And(Not(formula), Not(formula))),
    ]
    return rng.choice(variants)


class BudgetSignSchema(AxiomSchema):
    def __init__(self):
        super().__init__(name="B+", description="b_i >= 0")

    def instantiate(self, rng: random.Random, signature: Signature) -> Formula:
        return Ineq(((1, Budget(rng.choice(signature.agents))),), 0)


class CostSignSchema(AxiomSchema):
    def __init__(self):
        super().__init__(name="c+", description="c_i(A) >= 0")

    def instantiate(self, rng: random.Random, signature: Signature) -> Formula:
        return Ineq(((1, Cost(rng.choice(signature.agents), random_prop(rng, signature.props))),), 0)


class TautologyCostSchema(AxiomSchema):
    def __init__(self):
        super().__init__(name="c-top", description="c_i(true) = 0")

    def instantiate(self, rng: random.Random, signature: Signature) -> Formula:
        return equals([(1, Cost(rng.choice(signature.agents), TOP))], 0)


class SimilarCostSchema(AxiomSchema):
    def __init__(self):
        super().__init__(name="c-sim", description="c_i(A) = c_i(B) when A and B are similar")

    def instantiate(self, rng: random.Random, signature: Signature) -> Formula:
        agent = rng.choice(signature.agents)
        formula = random_prop(rng, signature.props)
        variant = similar_variant(rng, formula)
        return equals([(1, Cost(agent, formula)), (-1, Cost(agent, variant))], 0)
