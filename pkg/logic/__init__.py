"""Syntax of the logic of semi-public queries."""

from .errors import (
    SpqError,
    EmptyGroupError,
    UnknownAgentError,
    UnknownStateError,
    CanonicalizationError,
    EmptyModelError,
    ParseError,
    PropositionalPositionError,
    ModelValidationError,
    NotReducibleError,
)
from .syntax import (
    Budget, Cost, Term, Prop, Top, Bottom, Ineq, Not, And, Know, Common, Query, Formula,
    TOP, BOTTOM, make_group, is_propositional, conjoin, disjoin, implies, iff, everybody,
    possible, diamond, ineq, equals, children, iter_postorder, subformulas, agents_of,
    props_of, variables_of, has_query, size, complexity,
)
from .surface import desugar
from .similarity import ClassKey, TAUTOLOGY_KEY, class_key, similar, is_tautology_class
from .queries import (
    bcs_formula, subst_inequality, cheapest_guard, rewrite_atom, rewrite_inequality, rewrite_negation,
    rewrite_conjunction, rewrite_outsider, rewrite_member, rewrite_box,
)
from .closure import closure
from .parser import parse_formula, parse_group, print_formula

__all__ = [
    'SpqError', 'EmptyGroupError', 'UnknownAgentError', 'UnknownStateError',
    'CanonicalizationError', 'EmptyModelError', 'ParseError', 'PropositionalPositionError',
    'ModelValidationError', 'NotReducibleError',
    'Budget', 'Cost', 'Term', 'Prop', 'Top', 'Bottom', 'Ineq', 'Not', 'And', 'Know',
    'Common', 'Query', 'Formula', 'TOP', 'BOTTOM',
    'make_group', 'is_propositional', 'conjoin', 'disjoin', 'implies', 'iff', 'everybody',
    'possible', 'diamond', 'ineq', 'equals', 'children', 'iter_postorder', 'subformulas',
    'agents_of', 'props_of', 'variables_of', 'has_query', 'size', 'complexity',
    'desugar',
    'ClassKey', 'TAUTOLOGY_KEY', 'class_key', 'similar', 'is_tautology_class',
    'bcs_formula', 'subst_inequality', 'cheapest_guard', 'rewrite_atom', 'rewrite_inequality',
    'rewrite_negation', 'rewrite_conjunction', 'rewrite_outsider', 'rewrite_member', 'rewrite_box',
    'closure',
    'parse_formula', 'parse_group', 'print_formula'
]
