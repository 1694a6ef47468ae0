"""Exact rational arithmetic and linear feasibility."""

from .rational import Rational, to_rational, format_rational, rational_min, rational_div, denominator_lcm
from .fourier_motzkin import Relation, LinConstraint, LinSystem, Feasibility, fm_feasible

__all__ = [
    'Rational',
    'to_rational',
    'format_rational',
    'rational_min',
    'rational_div',
    'denominator_lcm',
    'Relation',
    'LinConstraint',
    'LinSystem',
    'Feasibility',
    'fm_feasible'
]
