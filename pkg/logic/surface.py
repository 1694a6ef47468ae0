"""Surface syntax: abbreviations and rational comparisons, and their desugaring.

The parser produces these nodes (mixed with core nodes); ``desugar`` rewrites
them into the core constructors of ``logic.syntax``.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from linarith import denominator_lcm
from .syntax import (
    And, Bottom, Common, Cost, Formula, Ineq, Know, Not, Prop, Query, Top,
    disjoin, everybody, iff, implies, make_group, possible,
)


@dataclass(frozen=True)
class Or:
    left: object
    right: object


@dataclass(frozen=True)
class Implies:
    left: object
    right: object


@dataclass(frozen=True)
class Iff:
    left: object
    right: object


@dataclass(frozen=True)
class Everybody:
    group: Tuple[str, ...]
    arg: object


@dataclass(frozen=True)
class Possible:
    agent: str
    arg: object


@dataclass(frozen=True)
class Ask:
    """A query box whose question has not been desugared yet."""
    group: Tuple[str, ...]
    question: object
    arg: object


@dataclass(frozen=True)
class Diamond:
    group: Tuple[str, ...]
    question: object
    arg: object


# One summand of a rational linear sum; ``term`` is None for a constant.
LinItem = Tuple[Fraction, Optional[object]]


@dataclass(frozen=True)
class Compare:
    """``left relation right`` over rational linear sums, relation in >=, >, <=, <, =."""
    left: Tuple[LinItem, ...]
    relation: str
    right: Tuple[LinItem, ...]


_PROPOSITIONAL_SURFACE = (Prop, Top, Bottom, Not, And, Or, Implies, Iff)


def is_surface_propositional(node) -> bool:
    """Propositional check before desugaring (allows |, -> and <->)."""
    if not isinstance(node, _PROPOSITIONAL_SURFACE):
        return False
    if isinstance(node, (Prop, Top, Bottom)):
        return True
    if isinstance(node, Not):
        return is_surface_propositional(node.arg)
    return is_surface_propositional(node.left) and is_surface_propositional(node.right)


def _desugar_term(term):
    if isinstance(term, Cost):
        return Cost(term.agent, desugar(term.formula))
    return term


def desugar_comparison(node: Compare) -> Formula:
    """
    Rewrite a rational comparison into integer ``>=`` atoms.

    Terms keep their written order: left-hand terms first, then the negated
    right-hand terms. Constants move to the bound, and all coefficients are
    multiplied by the lcm of their denominators.
    """
    summands = []
    constant = Fraction(0)
    for coefficient, term in node.left:
        if term is None:
            constant -= coefficient
        else:
            summands.append((Fraction(coefficient), _desugar_term(term)))
    for coefficient, term in node.right:
        if term is None:
            constant += coefficient
        else:
            summands.append((-Fraction(coefficient), _desugar_term(term)))
    if not summands:
        raise ValueError("a comparison needs at least one budget or cost term")

    scale = denominator_lcm([z for z, _ in summands] + [constant])
    ints = [(int(z * scale), t) for z, t in summands]
    bound = int(constant * scale)
    flipped = [(-z, t) for z, t in ints]

    if node.relation == ">=":
        return Ineq(tuple(ints), bound)
    if node.relation == "<=":
        return Ineq(tuple(flipped), -bound)
    if node.relation == "<":
        return Not(Ineq(tuple(ints), bound))
    if node.relation == ">":
        return Not(Ineq(tuple(flipped), -bound))
    if node.relation == "=":
        return And(Ineq(tuple(ints), bound), Ineq(tuple(flipped), -bound))
    raise ValueError(f"unknown relation {node.relation!r}")


def desugar(node) -> Formula:
    """Translate a surface formula into the core constructors."""
    if isinstance(node, (Prop, Top, Bottom)):
        return node
    if isinstance(node, Ineq):
        return Ineq(tuple((z, _desugar_term(t)) for z, t in node.summands), node.bound)
    if isinstance(node, Not):
        return Not(desugar(node.arg))
    if isinstance(node, And):
        return And(desugar(node.left), desugar(node.right))
    if isinstance(node, Know):
        return Know(node.agent, desugar(node.arg))
    if isinstance(node, Common):
        return Common(node.group, desugar(node.arg))
    if isinstance(node, (Query, Ask)):
        return Query(make_group(node.group), desugar(node.question), desugar(node.arg))
    if isinstance(node, Or):
        return disjoin([desugar(node.left), desugar(node.right)])
    if isinstance(node, Implies):
        return implies(desugar(node.left), desugar(node.right))
    if isinstance(node, Iff):
        return iff(desugar(node.left), desugar(node.right))
    if isinstance(node, Everybody):
        return everybody(node.group, desugar(node.arg))
    if isinstance(node, Possible):
        return possible(node.agent, desugar(node.arg))
    if isinstance(node, Diamond):
        return Not(Query(make_group(node.group), desugar(node.question), Not(desugar(node.arg))))
    if isinstance(node, Compare):
        return desugar_comparison(node)
    raise TypeError(f"not a surface formula: {node!r}")
