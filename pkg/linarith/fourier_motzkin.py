"""Fourier-Motzkin feasibility over the rationals, with witness extraction.

Constraints are normalised to ``sum(a_x * x) >= b`` or ``sum(a_x * x) > b``.
Each elimination step keeps the constraints that defined the bounds of the
removed variable so that a witness can be rebuilt by back-substitution.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple

logger = logging.getLogger(__name__)


class Relation(str, Enum):
    """Comparison of a linear constraint against its bound."""
    GE = ">="
    GT = ">"
    EQ = "="


@dataclass(frozen=True)
class LinConstraint:
    """``sum(coefficients[x] * x) relation bound`` with exact coefficients."""
    coefficients: Tuple[Tuple[str, Fraction], ...]
    relation: Relation
    bound: Fraction

    @classmethod
    def build(cls, coefficients: Mapping[str, Fraction], relation: Relation, bound) -> "LinConstraint":
        """Create a constraint, dropping zero coefficients and sorting variables."""
        cleaned = tuple(sorted((name, Fraction(value)) for name, value in coefficients.items() if value != 0))
        return cls(cleaned, Relation(relation), Fraction(bound))

    @property
    def variables(self) -> FrozenSet[str]:
        return frozenset(name for name, _ in self.coefficients)

    def is_ground(self) -> bool:
        return not self.coefficients

    def evaluate(self, assignment: Mapping[str, Fraction]) -> Fraction:
        """Value of the left-hand side; missing variables count as zero."""
        return sum((value * Fraction(assignment.get(name, 0)) for name, value in self.coefficients), Fraction(0))

    def holds(self, assignment: Mapping[str, Fraction]) -> bool:
        lhs = self.evaluate(assignment)
        if self.relation is Relation.GE:
            return lhs >= self.bound
        if self.relation is Relation.GT:
            return lhs > self.bound
        return lhs == self.bound

    def scaled(self, factor) -> "LinConstraint":
        """Multiply both sides by a positive rational."""
        factor = Fraction(factor)
        if factor <= 0:
            raise ValueError("constraints may only be scaled by a positive factor")
        return LinConstraint.build(
            {name: value * factor for name, value in self.coefficients},
            self.relation,
            self.bound * factor,
        )

    def __str__(self) -> str:
        lhs = " + ".join(f"{value}*{name}" for name, value in self.coefficients) or "0"
        return f"{lhs} {self.relation.value} {self.bound}"


@dataclass(frozen=True)
class LinSystem:
    """A finite set of constraints plus the variables a witness must assign."""
    constraints: Tuple[LinConstraint, ...]
    extra_variables: FrozenSet[str] = field(default_factory=frozenset)

    @classmethod
    def of(cls, constraints: Iterable[LinConstraint], variables: Iterable[str] = ()) -> "LinSystem":
        return cls(tuple(constraints), frozenset(variables))

    @property
    def variables(self) -> FrozenSet[str]:
        names = set(self.extra_variables)
        for constraint in self.constraints:
            names.update(constraint.variables)
        return frozenset(names)

    def with_constraints(self, more: Iterable[LinConstraint]) -> "LinSystem":
        return LinSystem(self.constraints + tuple(more), self.extra_variables)

    def satisfied_by(self, assignment: Mapping[str, Fraction]) -> bool:
        return all(constraint.holds(assignment) for constraint in self.constraints)


@dataclass(frozen=True)
class Feasibility:
    """Outcome of ``fm_feasible``; ``witness`` is set exactly when feasible."""
    feasible: bool
    witness: Optional[Dict[str, Fraction]] = None


# Working form: (coefficients, strict, bound) meaning sum >= bound, or > when strict.
_Row = Tuple[Tuple[Tuple[str, Fraction], ...], bool, Fraction]


def _row(coefficients: Dict[str, Fraction], strict: bool, bound: Fraction) -> _Row:
    items = tuple(sorted((name, value) for name, value in coefficients.items() if value != 0))
    if items:
        # normalise by the first coefficient's magnitude so duplicates collapse
        scale = abs(items[0][1])
        items = tuple((name, value / scale) for name, value in items)
        bound = bound / scale
    return items, strict, bound


def _normalise(system: LinSystem) -> List[_Row]:
    rows = []
    for constraint in system.constraints:
        coefficients = dict(constraint.coefficients)
        if constraint.relation is Relation.EQ:
            rows.append(_row(coefficients, False, constraint.bound))
            rows.append(_row({name: -value for name, value in coefficients.items()}, False, -constraint.bound))
        else:
            rows.append(_row(coefficients, constraint.relation is Relation.GT, constraint.bound))
    return rows


def _ground_holds(row: _Row) -> bool:
    _, strict, bound = row
    return Fraction(0) > bound if strict else Fraction(0) >= bound


def _choose_variable(rows: List[_Row]) -> str:
    counts: Dict[str, int] = {}
    for coefficients, _, _ in rows:
        for name, _ in coefficients:
            counts[name] = counts.get(name, 0) + 1
    return min(counts, key=lambda name: (counts[name], name))


def _eliminate(rows: List[_Row], variable: str) -> Tuple[List[_Row], List[_Row], List[_Row]]:
    """Return (projected rows, lower-bound rows, upper-bound rows) for ``variable``."""
    lower, upper, rest = [], [], []
    for row in rows:
        coefficient = dict(row[0]).get(variable, Fraction(0))
        if coefficient > 0:
            lower.append(row)
        elif coefficient < 0:
            upper.append(row)
        else:
            rest.append(row)
    projected = set(rest)
    for low in lower:
        low_coeffs = dict(low[0])
        a = low_coeffs[variable]
        for up in upper:
            up_coeffs = dict(up[0])
            c = -up_coeffs[variable]
            combined: Dict[str, Fraction] = {}
            for name in set(low_coeffs) | set(up_coeffs):
                combined[name] = c * low_coeffs.get(name, Fraction(0)) + a * up_coeffs.get(name, Fraction(0))
            combined.pop(variable, None)
            projected.add(_row(combined, low[1] or up[1], c * low[2] + a * up[2]))
    return sorted(projected, key=repr), lower, upper


def _bounds(variable: str, rows: List[_Row], assignment: Dict[str, Fraction]) -> List[Tuple[Fraction, bool]]:
    """Solve each row for ``variable`` under the current partial assignment."""
    bounds = []
    for coefficients, strict, bound in rows:
        coeffs = dict(coefficients)
        a = coeffs.pop(variable)
        rest = sum((value * assignment[name] for name, value in coeffs.items()), Fraction(0))
        bounds.append(((bound - rest) / a, strict))
    return bounds


def _pick_value(variable: str, lower: List[_Row], upper: List[_Row], assignment: Dict[str, Fraction]) -> Fraction:
    """Choose a value for ``variable`` inside the bounds its rows impose."""
    lows = _bounds(variable, lower, assignment)
    ups = _bounds(variable, upper, assignment)
    best_low = max((value for value, _ in lows), default=None)
    low_strict = any(strict for value, strict in lows if value == best_low)
    best_up = min((value for value, _ in ups), default=None)
    up_strict = any(strict for value, strict in ups if value == best_up)

    def inside(x: Fraction) -> bool:
        if best_low is not None and (x < best_low or (low_strict and x == best_low)):
            return False
        if best_up is not None and (x > best_up or (up_strict and x == best_up)):
            return False
        return True

    if inside(Fraction(0)):
        return Fraction(0)
    if best_low is not None and not low_strict:
        return best_low
    if best_up is not None and not up_strict:
        return best_up
    if best_low is not None and best_up is not None:
        return (best_low + best_up) / 2
    if best_low is not None:
        return best_low + 1
    return best_up - 1


def fm_feasible(system: LinSystem) -> Feasibility:
    """
    Decide feasibility of a linear system over the rationals.

    Args:
        system: constraints with ``>=``, ``>`` or ``=`` relations

    Returns:
        Feasibility with a witness assigning every variable of the system
    """
    rows = _normalise(system)
    steps: List[Tuple[str, List[_Row], List[_Row]]] = []

    while True:
        ground = [row for row in rows if not row[0]]
        if not all(_ground_holds(row) for row in ground):
            logger.debug(f"Infeasible after eliminating {len(steps)} variables")
            return Feasibility(False)
        rows = [row for row in rows if row[0]]
        if not rows:
            break
        variable = _choose_variable(rows)
        rows, lower, upper = _eliminate(rows, variable)
        steps.append((variable, lower, upper))
        logger.debug(f"Eliminated {variable}: {len(lower)} lower, {len(upper)} upper, {len(rows)} remaining")

    assignment: Dict[str, Fraction] = {}
    for name in system.variables:
        assignment[name] = Fraction(0)
    for variable, lower, upper in reversed(steps):
        assignment[variable] = _pick_value(variable, lower, upper, assignment)

    if not system.satisfied_by(assignment):
        raise RuntimeError("Fourier-Motzkin witness does not satisfy the system")
    return Feasibility(True, assignment)
