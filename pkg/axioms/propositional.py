"""Propositional tautologies over arbitrary formulas."""

import random
from typing import Callable, List

from logic.syntax import And, Formula, Not, conjoin, disjoin, iff, implies
from .base_axiom import AxiomSchema
from .generators import Signature

Template = Callable[[Formula, Formula, Formula], Formula]


# Tautology shapes; each is filled with three random formulas.
TEMPLATES: List[Template] = [
    lambda a, b, c: implies(a, a),
    lambda a, b, c: disjoin([a, Not(a)]),
    lambda a, b, c: implies(And(a, b), a),
    lambda a, b, c: iff(Not(Not(a)), a),
    lambda a, b, c: iff(Not(And(a, b)), disjoin([Not(a), Not(b)])),
    lambda a, b, c: implies(And(implies(a, b), implies(b, c)), implies(a, c)),
    lambda a, b, c: implies(a, implies(b, a)),
    lambda a, b, c: iff(And(a, disjoin([b, c])), disjoin([And(a, b), And(a, c)])),
    lambda a, b, c: implies(conjoin([a, implies(a, b)]), b),
]


class TautologySchema(AxiomSchema):
    """Substitution instances of propositional tautologies."""

    def __init__(self):
        super().__init__(
            name="Taut",
            description="All propositional tautologies"
        )

    def instantiate(self, rng: random.Random, signature: Signature) -> Formula:
        template = rng.choice(TEMPLATES)
        return template(
            self._formula(rng, signature),
            self._formula(rng, signature),
            self._formula(rng, signature),
        )
