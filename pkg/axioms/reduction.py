"""Reduction axioms for the query box.

Each schema states the equivalence between a box and its one-step rewrite;
the translator applies the same rewrites left to right.
"""

import random

from logic.queries import (
    rewrite_atom, rewrite_conjunction, rewrite_inequality, rewrite_member, rewrite_negation, rewrite_outsider,
)
from logic.syntax import And, Formula, Know, Not, Prop, Query, iff
from .base_axiom import AxiomSchema
from .generators import Signature, random_group, random_ineq, random_prop


class _ReductionSchema(AxiomSchema):
    static = False

    def _query_parts(self, rng: random.Random, signature: Signature):
        return random_group(rng, signature.agents), random_prop(rng, signature.props)


class AtomReductionSchema(_ReductionSchema):
    def __init__(self):
        super().__init__(name="r_p", description="[?G A]p <-> (BCS(G,A) -> p)")

    def instantiate(self, rng: random.Random, signature: Signature) -> Formula:
        group, question = self._query_parts(rng, signature)
        atom = Prop(rng.choice(signature.props))
        return iff(Query(group, question, atom), rewrite_atom(group, question, atom))


class InequalityReductionSchema(_ReductionSchema):
    def __init__(self):
        super().__init__(name="r_ge", description="[?G A](sum >= z) <-> (BCS(G,A) -> (sum >= z)^(G,A))")

    def instantiate(self, rng: random.Random, signature: Signature) -> Formula:
        group, question = self._query_parts(rng, signature)
        atom = random_ineq(rng, signature.agents, signature.props)
        return iff(Query(group, question, atom), rewrite_inequality(group, question, atom))


class NegationReductionSchema(_ReductionSchema):
    def __init__(self):
        super().__init__(name="r_not", description="[?G A]~phi <-> (BCS(G,A) -> ~[?G A]phi)")

    def instantiate(self, rng: random.Random, signature: Signature) -> Formula:
        group, question = self._query_parts(rng, signature)
        body = self._formula(rng, signature)
        return iff(Query(group, question, Not(body)), rewrite_negation(group, question, body))


class ConjunctionReductionSchema(_ReductionSchema):
    def __init__(self):
        super().__init__(name="r_and", description="[?G A](phi & psi) <-> [?G A]phi & [?G A]psi")

    def instantiate(self, rng: random.Random, signature: Signature) -> Formula:
        group, question = self._query_parts(rng, signature)
        left, right = self._formula(rng, signature), self._formula(rng, signature)
        return iff(Query(group, question, And(left, right)), rewrite_conjunction(group, question, left, right))


class OutsiderKnowledgeSchema(_ReductionSchema):
    min_agents = 2

    def __init__(self):
        super().__init__(name="r_K1", description="[?G A]K_j phi <-> (BCS(G,A) -> K_j [?G A]phi), j not in G")

    def instantiate(self, rng: random.Random, signature: Signature) -> Formula:
        agent = rng.choice(signature.agents)
        others = [name for name in signature.agents if name != agent]
        group = random_group(rng, others)
        question = random_prop(rng, signature.props)
        body = self._formula(rng, signature)
        return iff(Query(group, question, Know(agent, body)), rewrite_outsider(group, question, agent, body))


class MemberKnowledgeSchema(_ReductionSchema):
    def __init__(self):
        super().__init__(
            name="r_K2",
            description="[?G A]K_i phi <-> (BCS(G,A) -> for A' in {A, ~A}: A' -> K_i(A' -> [?G A]phi)), i in G",
        )

    def instantiate(self, rng: random.Random, signature: Signature) -> Formula:
        group, question = self._query_parts(rng, signature)
        agent = rng.choice(group)
        body = self._formula(rng, signature)
        return iff(Query(group, question, Know(agent, body)), rewrite_member(group, question, agent, body))
