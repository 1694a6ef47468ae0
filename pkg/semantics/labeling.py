"""Global model checking by labelling, with query contexts.

Every subformula is labelled in a context: the sequence of query occurrences
it sits under. A query marker entry computes, for its context, the surviving
states, the decremented budgets and the refined relations; formula entries
in that context are then labelled on the survivors only. Labelling follows
an ordering in which every entry comes after everything it reads.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, List, Optional, Tuple

import networkx as nx

from logic.similarity import class_key
from logic.syntax import And, Bottom, Budget, Common, Formula, Ineq, Know, Not, Prop, Query, Top
from logic.parser import print_formula
from .kripke import Model

logger = logging.getLogger(__name__)

Context = Tuple[int, ...]

QUESTION = "question"
MARKER = "marker"
FORMULA = "formula"


@dataclass(frozen=True)
class QueryOccurrence:
    """One syntactic occurrence of a query box; ``occurrence`` numbers them from 1."""
    group: Tuple[str, ...]
    question: Formula
    occurrence: int


@dataclass(frozen=True)
class SubEntry:
    """
    An entry of the ordered sub-list.

    ``kind`` is ``question`` for subformulas of a query question, ``marker``
    for the bare query in its context and ``formula`` otherwise. ``inputs``
    are the indices (in the ordered list) of the entries this one reads.
    """
    formula: Optional[Formula]
    context: Context
    kind: str
    inputs: Tuple[int, ...] = ()
    query: Optional[QueryOccurrence] = None

    def describe(self, occurrences: Dict[int, QueryOccurrence]) -> str:
        shown = (
            f"[? {','.join(self.query.group)} : {print_formula(self.query.question)}]"
            if self.kind == MARKER else print_formula(self.formula)
        )
        if not self.context:
            return shown
        trail = ", ".join(
            f"[? {','.join(occurrences[k].group)} : {print_formula(occurrences[k].question)}]"
            for k in self.context
        )
        return f"{shown} ^ <{trail}>"


class _Walker:
    """Collects entries in post-order, then sorts them into evaluation order."""

    def __init__(self):
        self.raw: List[dict] = []
        self.seen: Dict[Tuple[int, Context, str], int] = {}
        self.occurrences: Dict[int, QueryOccurrence] = {}

    def _add(self, formula, context, kind, inputs=(), query=None) -> int:
        self.raw.append({
            "formula": formula, "context": context, "kind": kind,
            "inputs": tuple(inputs), "query": query,
        })
        return len(self.raw) - 1

    def walk(self, node: Formula, context: Context, kind: str) -> int:
        key = (id(node), context, kind)
        if key in self.seen:
            return self.seen[key]
        if isinstance(node, Not):
            inputs = [self.walk(node.arg, context, kind)]
        elif isinstance(node, And):
            inputs = [self.walk(node.left, context, kind), self.walk(node.right, context, kind)]
        elif isinstance(node, (Know, Common)):
            inputs = [self.walk(node.arg, context, kind)]
        elif isinstance(node, Query):
            question = self.walk(node.question, context, QUESTION)
            occurrence = QueryOccurrence(node.group, node.question, len(self.occurrences) + 1)
            self.occurrences[occurrence.occurrence] = occurrence
            marker = self._add(None, context, MARKER, [question], occurrence)
            inner = context + (occurrence.occurrence,)
            body = self.walk(node.arg, inner, FORMULA)
            inputs = [marker, body]
        else:
            inputs = []
        position = self._add(node, context, kind, inputs)
        self.seen[key] = position
        return position

    def ordered(self) -> Tuple[List[SubEntry], int]:
        def sort_key(position: int):
            item = self.raw[position]
            if item["kind"] == FORMULA:
                return (1, -len(item["context"]), position)
            rank = 0 if item["kind"] == QUESTION else 1
            return (0, len(item["context"]), rank, position)

        order = sorted(range(len(self.raw)), key=sort_key)
        renumber = {old: new for new, old in enumerate(order)}
        entries = []
        for old in order:
            item = self.raw[old]
            entries.append(SubEntry(
                formula=item["formula"],
                context=item["context"],
                kind=item["kind"],
                inputs=tuple(renumber[k] for k in item["inputs"]),
                query=item["query"],
            ))
        return entries, renumber[len(self.raw) - 1]


@dataclass
class OrderedSubList:
    """The ordered entries; ``root`` is the index of the whole formula."""
    entries: List[SubEntry]
    root: int
    occurrences: Dict[int, QueryOccurrence] = field(default_factory=dict)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def describe(self) -> List[str]:
        return [entry.describe(self.occurrences) for entry in self.entries]


def sub_list(formula: Formula) -> OrderedSubList:
    """
    Order the labelled subformulas of ``formula`` for labelling.

    Question subformulas and query markers come first, shallower contexts
    before deeper ones; formula entries follow with deeper contexts first
    and subformulas before the formulas containing them.
    """
    walker = _Walker()
    walker.walk(formula, (), FORMULA)
    entries, root = walker.ordered()
    return OrderedSubList(entries, root, dict(walker.occurrences))


@dataclass
class LabelStore:
    """
    Labels produced by one run.

    ``survivors`` maps a context to its surviving states. ``budgets`` holds
    the budget snapshot per context and agent. ``partitions`` holds, per
    context and agent, a block id per state: an edge between two survivors is
    labelled with the context exactly when their block ids agree. ``labels``
    maps an entry index to the states it holds at.
    """
    model: Model
    survivors: Dict[Context, FrozenSet[int]] = field(default_factory=dict)
    budgets: Dict[Context, Dict[str, Dict[int, Fraction]]] = field(default_factory=dict)
    partitions: Dict[Context, Dict[str, Dict[int, object]]] = field(default_factory=dict)
    labels: Dict[int, FrozenSet[int]] = field(default_factory=dict)

    @classmethod
    def initial(cls, model: Model) -> "LabelStore":
        everything = frozenset(range(len(model.states)))
        store = cls(model)
        store.survivors[()] = everything
        store.budgets[()] = {
            agent: dict(enumerate(model.budgets[agent])) for agent in model.agents
        }
        store.partitions[()] = {
            agent: dict(enumerate(model.blocks[agent])) for agent in model.agents
        }
        return store

    def edge_labelled(self, agent: str, first: int, second: int, context: Context) -> bool:
        """True when the ``agent`` edge between two states carries ``context``."""
        alive = self.survivors.get(context, frozenset())
        if first not in alive or second not in alive:
            return False
        blocks = self.partitions[context][agent]
        return blocks[first] == blocks[second]

    def budget(self, context: Context, agent: str, state: int) -> Fraction:
        return self.budgets[context][agent][state]


class _Labeller:
    def __init__(self, model: Model, ordered: OrderedSubList):
        self.model = model
        self.ordered = ordered
        self.store = LabelStore.initial(model)

    def run(self) -> FrozenSet[int]:
        for position, entry in enumerate(self.ordered.entries):
            if entry.kind == MARKER:
                self._marker(entry)
            else:
                self.store.labels[position] = self._label(entry)
        return self.store.labels[self.ordered.root]

    def _inputs(self, entry: SubEntry) -> List[FrozenSet[int]]:
        return [self.store.labels.get(k, frozenset()) for k in entry.inputs]

    def _marker(self, entry: SubEntry) -> None:
        model = self.model
        store = self.store
        query = entry.query
        context = entry.context
        inner = context + (query.occurrence,)
        for agent in query.group:
            model.check_agent(agent)
        answer = store.labels[entry.inputs[0]]
        key = class_key(query.question)
        size = len(query.group)
        budgets = store.budgets[context]
        survivors = set()
        shares: Dict[int, Fraction] = {}
        for state in store.survivors[context]:
            cheapest = min(model.costs[agent][state].get(key, Fraction(0)) for agent in query.group)
            share = cheapest / size
            if all(budgets[agent][state] >= share for agent in query.group):
                survivors.add(state)
                shares[state] = share
        store.survivors[inner] = frozenset(survivors)
        store.budgets[inner] = {
            agent: {
                state: budgets[agent][state] - shares[state] if agent in query.group else budgets[agent][state]
                for state in survivors
            }
            for agent in model.agents
        }
        previous = store.partitions[context]
        store.partitions[inner] = {
            agent: {
                state: (previous[agent][state], state in answer) if agent in query.group else previous[agent][state]
                for state in survivors
            }
            for agent in model.agents
        }
        logger.debug(f"Query occurrence {query.occurrence}: {len(survivors)} of {len(store.survivors[context])} states survive")

    def _blocks_inside(self, keys: Dict[int, object], alive: FrozenSet[int], inside: FrozenSet[int]) -> FrozenSet[int]:
        broken = {keys[state] for state in alive if state not in inside}
        return frozenset(state for state in alive if keys[state] not in broken)

    def _label(self, entry: SubEntry) -> FrozenSet[int]:
        model = self.model
        store = self.store
        node = entry.formula
        context = entry.context
        alive = store.survivors[context]
        inputs = self._inputs(entry)
        if isinstance(node, Prop):
            return alive & model.valuation.get(node.name, frozenset())
        if isinstance(node, Top):
            return alive
        if isinstance(node, Bottom):
            return frozenset()
        if isinstance(node, Not):
            return alive - inputs[0]
        if isinstance(node, And):
            return inputs[0] & inputs[1]
        if isinstance(node, Ineq):
            return self._inequality(node, context, alive)
        if isinstance(node, Know):
            keys = store.partitions[context][model.check_agent(node.agent)]
            return self._blocks_inside(keys, alive, inputs[0])
        if isinstance(node, Common):
            return self._blocks_inside(self._components(node.group, context, alive), alive, inputs[0])
        if isinstance(node, Query):
            marker = self.ordered.entries[entry.inputs[0]]
            inner = context + (marker.query.occurrence,)
            return (alive - store.survivors[inner]) | inputs[1]
        raise TypeError(f"not a formula: {node!r}")

    def _inequality(self, node: Ineq, context: Context, alive: FrozenSet[int]) -> FrozenSet[int]:
        model = self.model
        budgets = self.store.budgets[context]
        lookups = []
        for coefficient, term in node.summands:
            agent = model.check_agent(term.agent)
            if isinstance(term, Budget):
                lookups.append((coefficient, agent, None))
            else:
                lookups.append((coefficient, agent, class_key(term.formula)))
        result = set()
        for state in alive:
            total = Fraction(0)
            for coefficient, agent, key in lookups:
                if key is None:
                    total += coefficient * budgets[agent][state]
                else:
                    total += coefficient * model.costs[agent][state].get(key, Fraction(0))
            if total >= node.bound:
                result.add(state)
        return frozenset(result)

    def _components(self, group: Tuple[str, ...], context: Context, alive: FrozenSet[int]) -> Dict[int, int]:
        """Components of the union of the group's context-labelled edges."""
        graph = nx.Graph()
        graph.add_nodes_from(alive)
        for agent in group:
            keys = self.store.partitions[context][self.model.check_agent(agent)]
            anchors: Dict[object, int] = {}
            for state in sorted(alive):
                anchor = anchors.setdefault(keys[state], state)
                if anchor != state:
                    graph.add_edge(anchor, state)
        labels: Dict[int, int] = {}
        for number, component in enumerate(nx.connected_components(graph)):
            for state in component:
                labels[state] = number
        return labels


def global_check(model: Model, formula: Formula) -> FrozenSet[str]:
    """
    All states where ``formula`` holds, by labelling.

    Agrees with the reference evaluator on every input; a query box is
    labelled true at the states its budget constraint removes.

    Args:
        model: the model
        formula: any formula

    Returns:
        Names of the satisfying states
    """
    if model.is_empty:
        return frozenset()
    ordered = sub_list(formula)
    logger.debug(f"Labelling {len(ordered)} entries over {len(model.states)} states")
    result = _Labeller(model, ordered).run()
    return model.names(result)


def label_store(model: Model, formula: Formula) -> LabelStore:
    """Run the labelling and return the full store (used for inspection)."""
    labeller = _Labeller(model, sub_list(formula))
    labeller.run()
    return labeller.store
