"""Resource awareness: agents know their own budget and costs.

These schemas hold only on models where every agent's budget and costs are
constant on its own equivalence classes.
"""

import random

from logic.syntax import Budget, Cost, Formula, Know, equals, implies
from .base_axiom import AxiomSchema
from .generators import Signature, random_prop


class BudgetAwarenessSchema(AxiomSchema):
    requires_awareness = True

    def __init__(self):
        super().__init__(name="A1", description="(b_i = k) -> K_i(b_i = k)")

    def instantiate(self, rng: random.Random, signature: Signature) -> Formula:
        agent = rng.choice(signature.agents)
        # k ranges over halves, so state 2*b_i = 2k
        fact = equals([(2, Budget(agent))], rng.randint(0, 20))
        return implies(fact, Know(agent, fact))


class CostAwarenessSchema(AxiomSchema):
    requires_awareness = True

    def __init__(self):
        super().__init__(name="A2", description="(c_i(A) = k) -> K_i(c_i(A) = k)")

    def instantiate(self, rng: random.Random, signature: Signature) -> Formula:
        agent = rng.choice(signature.agents)
        fact = equals([(2, Cost(agent, random_prop(rng, signature.props)))], rng.randint(0, 20))
        return implies(fact, Know(agent, fact))
