"""S5 knowledge and common knowledge."""

import random

from logic.syntax import And, Common, Formula, Know, Not, everybody, implies
from .base_axiom import AxiomSchema
from .generators import Signature


class DistributionSchema(AxiomSchema):
    def __init__(self):
        super().__init__(name="K", description="K_i(phi -> psi) -> (K_i phi -> K_i psi)")

    def instantiate(self, rng: random.Random, signature: Signature) -> Formula:
        agent = rng.choice(signature.agents)
        phi, psi = self._formula(rng, signature), self._formula(rng, signature)
        return implies(Know(agent, implies(phi, psi)), implies(Know(agent, phi), Know(agent, psi)))


class TruthSchema(AxiomSchema):
    def __init__(self):
        super().__init__(name="T", description="K_i phi -> phi")

    def instantiate(self, rng: random.Random, signature: Signature) -> Formula:
        phi = self._formula(rng, signature)
        return implies(Know(rng.choice(signature.agents), phi), phi)


class PositiveIntrospectionSchema(AxiomSchema):
    def __init__(self):
        super().__init__(name="4", description="K_i phi -> K_i K_i phi")

    def instantiate(self, rng: random.Random, signature: Signature) -> Formula:
        agent = rng.choice(signature.agents)
        phi = self._formula(rng, signature)
        return implies(Know(agent, phi), Know(agent, Know(agent, phi)))


class NegativeIntrospectionSchema(AxiomSchema):
    def __init__(self):
        super().__init__(name="5", description="~K_i phi -> K_i ~K_i phi")

    def instantiate(self, rng: random.Random, signature: Signature) -> Formula:
        agent = rng.choice(signature.agents)
        phi = self._formula(rng, signature)
        return implies(Not(Know(agent, phi)), Know(agent, Not(Know(agent, phi))))


class CommonKnowledgeSchema(AxiomSchema):
    def __init__(self):
        super().__init__(name="C", description="C_G phi -> E_G(phi & C_G phi)")

    def instantiate(self, rng: random.Random, signature: Signature) -> Formula:
        group = self._group(rng, signature)
        phi = self._formula(rng, signature)
        common = Common(group, phi)
        return implies(common, everybody(group, And(phi, common)))
