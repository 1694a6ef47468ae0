"""Axioms for linear inequalities over budget and cost terms."""

import random
from typing import List, Tuple

from logic.syntax import And, Formula, Ineq, Not, Term, disjoin, iff, implies
from .base_axiom import AxiomSchema
from .generators import Signature, random_term

COEFFICIENTS = (-3, -2, -1, 1, 2, 3)


def _terms(rng: random.Random, signature: Signature, low: int = 1, high: int = 3) -> List[Term]:
    return [random_term(rng, signature.agents, signature.props) for _ in range(rng.randint(low, high))]


def _coefficients(rng: random.Random, count: int) -> List[int]:
    return [rng.choice(COEFFICIENTS) for _ in range(count)]


def _atom(coefficients, terms, bound: int) -> Ineq:
    return Ineq(tuple(zip(coefficients, terms)), bound)


def _negated(summands: Tuple, bound: int) -> Ineq:
    """-t >= -z, that is t <= z."""
    return Ineq(tuple((-z, t) for z, t in summands), -bound)


class ZeroTermSchema(AxiomSchema):
    def __init__(self):
        super().__init__(name="I1", description="Adding a term with coefficient 0")

    def instantiate(self, rng: random.Random, signature: Signature) -> Formula:
        terms = _terms(rng, signature)
        coefficients = _coefficients(rng, len(terms))
        bound = rng.randint(-10, 10)
        extra = random_term(rng, signature.agents, signature.props)
        return iff(
            _atom(coefficients, terms, bound),
            _atom(coefficients + [0], terms + [extra], bound),
        )


class PermutationSchema(AxiomSchema):
    def __init__(self):
        super().__init__(name="I2", description="Permuting the summands")

    def instantiate(self, rng: random.Random, signature: Signature) -> Formula:
        terms = _terms(rng, signature)
        summands = list(zip(_coefficients(rng, len(terms)), terms))
        shuffled = list(summands)
        rng.shuffle(shuffled)
        bound = rng.randint(-10, 10)
        return implies(Ineq(tuple(summands), bound), Ineq(tuple(shuffled), bound))


class AdditionSchema(AxiomSchema):
    def __init__(self):
        super().__init__(name="I3", description="Adding two inequalities over the same terms")

    def instantiate(self, rng: random.Random, signature: Signature) -> Formula:
        terms = _terms(rng, signature)
        first = _coefficients(rng, len(terms))
        second = _coefficients(rng, len(terms))
        c1, c2 = rng.randint(-10, 10), rng.randint(-10, 10)
        total = [a + b for a, b in zip(first, second)]
        return implies(
            And(_atom(first, terms, c1), _atom(second, terms, c2)),
            _atom(total, terms, c1 + c2),
        )


class ScalingSchema(AxiomSchema):
    def __init__(self):
        super().__init__(name="I4", description="Multiplying by a positive constant")

    def instantiate(self, rng: random.Random, signature: Signature) -> Formula:
        terms = _terms(rng, signature)
        coefficients = _coefficients(rng, len(terms))
        bound = rng.randint(-10, 10)
        factor = rng.randint(1, 4)
        return iff(
            _atom(coefficients, terms, bound),
            _atom([factor * z for z in coefficients], terms, factor * bound),
        )


class TotalitySchema(AxiomSchema):
    def __init__(self):
        super().__init__(name="I5", description="(t >= c) or (t <= c)")

    def instantiate(self, rng: random.Random, signature: Signature) -> Formula:
        terms = _terms(rng, signature)
        summands = tuple(zip(_coefficients(rng, len(terms)), terms))
        bound = rng.randint(-10, 10)
        return disjoin([Ineq(summands, bound), _negated(summands, bound)])


class MonotonicitySchema(AxiomSchema):
    def __init__(self):
        super().__init__(name="I6", description="(t >= c) implies (t > d) when c > d")

    def instantiate(self, rng: random.Random, signature: Signature) -> Formula:
        terms = _terms(rng, signature)
        summands = tuple(zip(_coefficients(rng, len(terms)), terms))
        high = rng.randint(-9, 10)
        low = rng.randint(-10, high - 1)
        # t > d is the negation of t <= d
        return implies(Ineq(summands, high), Not(_negated(summands, low)))
