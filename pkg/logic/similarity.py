"""Similarity classes of propositional formulas.

A and B are similar when A is equivalent to B or to its negation. Each class
is identified by a ``ClassKey``: the truth table restricted to the variables
the function actually depends on, stored in whichever polarity is
lexicographically smaller.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Tuple

from config.settings import settings
from .errors import CanonicalizationError
from .syntax import And, Bottom, Formula, Not, Prop, Top, is_propositional, variables_of


@dataclass(frozen=True)
class ClassKey:
    """Canonical identity of a similarity class; ``polarity`` is not compared."""
    variables: Tuple[str, ...]
    table: int
    polarity: bool = field(default=False, compare=False)

    def is_tautology_class(self) -> bool:
        return not self.variables

    def __str__(self) -> str:
        width = 1 << len(self.variables)
        bits = format(self.table, f"0{width}b")[::-1]
        return f"{','.join(self.variables) or '-'}:{bits}"


TAUTOLOGY_KEY = ClassKey((), 0)


def _tabulate(formula: Formula, columns: Dict[str, int], full: int) -> int:
    """Evaluate on all assignments at once; bit k is the value under assignment k."""
    if isinstance(formula, Prop):
        return columns[formula.name]
    if isinstance(formula, Top):
        return full
    if isinstance(formula, Bottom):
        return 0
    if isinstance(formula, Not):
        return full ^ _tabulate(formula.arg, columns, full)
    if isinstance(formula, And):
        return _tabulate(formula.left, columns, full) & _tabulate(formula.right, columns, full)
    raise TypeError(f"not propositional: {formula!r}")


def _column(position: int, count: int) -> int:
    """Bit mask of the assignments in which variable ``position`` is true."""
    mask = 0
    for assignment in range(1 << count):
        if (assignment >> position) & 1:
            mask |= 1 << assignment
    return mask


def _depends_on(table: int, position: int, count: int) -> bool:
    for assignment in range(1 << count):
        if not (assignment >> position) & 1:
            if ((table >> assignment) & 1) != ((table >> (assignment | (1 << position))) & 1):
                return True
    return False


def _project(table: int, keep: Tuple[int, ...]) -> int:
    """Restrict a table to the kept positions, fixing the others to false."""
    projected = 0
    for index in range(1 << len(keep)):
        assignment = 0
        for bit, position in enumerate(keep):
            if (index >> bit) & 1:
                assignment |= 1 << position
        if (table >> assignment) & 1:
            projected |= 1 << index
    return projected


def _bit_string(table: int, width: int) -> str:
    return "".join("1" if (table >> k) & 1 else "0" for k in range(width))


@lru_cache(maxsize=4096)
def class_key(formula: Formula) -> ClassKey:
    """
    Compute the similarity class of a propositional formula.

    Args:
        formula: a propositional formula

    Returns:
        ClassKey shared by exactly the formulas similar to ``formula``

    Raises:
        CanonicalizationError: when more variables occur than the configured cap
    """
    if not is_propositional(formula):
        raise ValueError("similarity classes are defined for propositional formulas only")
    names = variables_of(formula)
    if len(names) > settings.max_canonical_vars:
        raise CanonicalizationError("formula too large for canonicalization")

    count = len(names)
    full = (1 << (1 << count)) - 1
    columns = {name: _column(position, count) for position, name in enumerate(names)}
    table = _tabulate(formula, columns, full)

    essential = tuple(p for p in range(count) if _depends_on(table, p, count))
    table = _project(table, essential)
    width = 1 << len(essential)
    complement = ((1 << width) - 1) ^ table
    flipped = _bit_string(complement, width) < _bit_string(table, width)
    return ClassKey(
        tuple(names[p] for p in essential),
        complement if flipped else table,
        flipped,
    )


def similar(first: Formula, second: Formula) -> bool:
    """True when the formulas are equivalent up to negation."""
    return class_key(first) == class_key(second)


def is_tautology_class(key: ClassKey) -> bool:
    """The class of the constant functions (tautologies and contradictions)."""
    return key.is_tautology_class()
