"""Abstract syntax of SPQ formulas.

Propositional formulas are the sublanguage built from ``Prop``, ``Top``,
``Bottom``, ``Not`` and ``And``; they are ordinary SPQ formulas, so a question
or a cost argument is just a formula for which ``is_propositional`` holds.
"""

from dataclasses import dataclass
from typing import Iterable, Iterator, List, Sequence, Tuple, Union

from .errors import EmptyGroupError


def make_group(agents: Iterable[str]) -> Tuple[str, ...]:
    """Sorted, duplicate-free agent tuple; rejects the empty group."""
    group = tuple(sorted(set(agents)))
    if not group:
        raise EmptyGroupError()
    return group


# Terms


@dataclass(frozen=True)
class Budget:
    """The budget term b_i."""
    agent: str


@dataclass(frozen=True)
class Cost:
    """The cost term c_i(A) for a propositional A."""
    agent: str
    formula: "Formula"


Term = Union[Budget, Cost]


# Formulas


@dataclass(frozen=True)
class Prop:
    name: str


@dataclass(frozen=True)
class Top:
    pass


@dataclass(frozen=True)
class Bottom:
    pass


@dataclass(frozen=True)
class Ineq:
    """Linear atom ``z1*t1 + ... + zn*tn >= bound`` with integer coefficients."""
    summands: Tuple[Tuple[int, Term], ...]
    bound: int

    def __post_init__(self):
        if not self.summands:
            raise ValueError("a linear atom needs at least one term")


@dataclass(frozen=True)
class Not:
    arg: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Know:
    agent: str
    arg: "Formula"


@dataclass(frozen=True)
class Common:
    group: Tuple[str, ...]
    arg: "Formula"

    def __post_init__(self):
        if not self.group:
            raise EmptyGroupError("common knowledge")


@dataclass(frozen=True)
class Query:
    """The semi-public query box [?_G^A] applied to ``arg``."""
    group: Tuple[str, ...]
    question: "Formula"
    arg: "Formula"

    def __post_init__(self):
        if not self.group:
            raise EmptyGroupError("query")
        if not is_propositional(self.question):
            raise ValueError("query questions must be propositional")


Formula = Union[Prop, Top, Bottom, Ineq, Not, And, Know, Common, Query]

TOP = Top()
BOTTOM = Bottom()


def is_propositional(formula: Formula) -> bool:
    """True for formulas built only from variables, constants, negation and conjunction."""
    stack = [formula]
    while stack:
        node = stack.pop()
        if isinstance(node, (Prop, Top, Bottom)):
            continue
        if isinstance(node, Not):
            stack.append(node.arg)
        elif isinstance(node, And):
            stack.extend((node.left, node.right))
        else:
            return False
    return True


# Derived connectives, expressed with the core constructors


def neg(formula: Formula) -> Formula:
    return Not(formula)


def conjoin(formulas: Sequence[Formula]) -> Formula:
    """Balanced conjunction; the empty conjunction is ``Top``."""
    items = list(formulas)
    if not items:
        return TOP
    if len(items) == 1:
        return items[0]
    middle = len(items) // 2
    return And(conjoin(items[:middle]), conjoin(items[middle:]))


def disjoin(formulas: Sequence[Formula]) -> Formula:
    """Balanced disjunction as negated conjunction of negations; empty is ``Bottom``."""
    items = list(formulas)
    if not items:
        return BOTTOM
    if len(items) == 1:
        return items[0]
    middle = len(items) // 2
    return Not(And(Not(disjoin(items[:middle])), Not(disjoin(items[middle:]))))


def implies(antecedent: Formula, consequent: Formula) -> Formula:
    return Not(And(antecedent, Not(consequent)))


def iff(left: Formula, right: Formula) -> Formula:
    return And(implies(left, right), implies(right, left))


def everybody(group: Iterable[str], formula: Formula) -> Formula:
    """E_G as the conjunction of K_i over the sorted group."""
    return conjoin([Know(agent, formula) for agent in make_group(group)])


def possible(agent: str, formula: Formula) -> Formula:
    return Not(Know(agent, Not(formula)))


def diamond(group: Iterable[str], question: Formula, formula: Formula) -> Formula:
    return Not(Query(make_group(group), question, Not(formula)))


def ineq(summands: Iterable[Tuple[int, Term]], bound: int) -> Ineq:
    return Ineq(tuple((int(z), t) for z, t in summands), int(bound))


def equals(summands: Sequence[Tuple[int, Term]], bound: int) -> Formula:
    """``t = z`` as ``(t >= z) & (-t >= -z)``."""
    return And(ineq(summands, bound), ineq([(-z, t) for z, t in summands], -bound))


# Traversal


def children(formula: Formula) -> Tuple[Formula, ...]:
    """Immediate subformulas; a query's question counts as one."""
    if isinstance(formula, Not):
        return (formula.arg,)
    if isinstance(formula, And):
        return (formula.left, formula.right)
    if isinstance(formula, (Know, Common)):
        return (formula.arg,)
    if isinstance(formula, Query):
        return (formula.question, formula.arg)
    return ()


def iter_postorder(formula: Formula) -> Iterator[Formula]:
    """Every node occurrence, children before parents, left to right."""
    stack: List[Tuple[Formula, bool]] = [(formula, False)]
    while stack:
        node, expanded = stack.pop()
        if expanded:
            yield node
            continue
        stack.append((node, True))
        for child in reversed(children(node)):
            stack.append((child, False))


def subformulas(formula: Formula) -> Tuple[Formula, ...]:
    """Sub(phi) in post-order without repetitions; ``formula`` comes last."""
    seen = set()
    ordered = []
    for node in iter_postorder(formula):
        if node not in seen:
            seen.add(node)
            ordered.append(node)
    return tuple(ordered)


def terms_of(formula: Formula) -> List[Term]:
    """Terms of every linear atom occurring in ``formula``."""
    return [term for node in iter_postorder(formula) if isinstance(node, Ineq) for _, term in node.summands]


def agents_of(formula: Formula) -> Tuple[str, ...]:
    """Every agent named anywhere in ``formula``, sorted."""
    names = set()
    for node in iter_postorder(formula):
        if isinstance(node, Know):
            names.add(node.agent)
        elif isinstance(node, (Common, Query)):
            names.update(node.group)
        elif isinstance(node, Ineq):
            names.update(term.agent for _, term in node.summands)
    return tuple(sorted(names))


def props_of(formula: Formula) -> Tuple[str, ...]:
    """Variables in formula positions (cost arguments excluded), sorted."""
    return tuple(sorted({node.name for node in iter_postorder(formula) if isinstance(node, Prop)}))


def variables_of(formula: Formula) -> Tuple[str, ...]:
    """Variables of a propositional formula, sorted."""
    return props_of(formula)


def has_query(formula: Formula) -> bool:
    return any(isinstance(node, Query) for node in iter_postorder(formula))


def size(formula: Formula) -> int:
    """Number of node occurrences."""
    return sum(1 for _ in iter_postorder(formula))


def complexity(formula: Formula) -> int:
    """The complexity measure used to show that reduction terminates."""
    if isinstance(formula, (Prop, Top, Bottom, Ineq)):
        return 1
    if isinstance(formula, Not):
        return complexity(formula.arg) + 1
    if isinstance(formula, And):
        return max(complexity(formula.left), complexity(formula.right)) + 1
    if isinstance(formula, (Know, Common)):
        return complexity(formula.arg) + 1
    if isinstance(formula, Query):
        return (complexity(formula.question) + 5) * complexity(formula.arg)
    raise TypeError(f"not a formula: {formula!r}")
