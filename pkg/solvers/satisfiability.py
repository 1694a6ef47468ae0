"""Bounded satisfiability by pre-structure enumeration and linear feasibility.

A pre-structure fixes states, partitions, a valuation and, per state, an
assumed truth value for every linear atom of the formula. The formula is
evaluated with the atoms read from those assumptions; a pre-structure that
makes it true is then realised by solving, for every state, the linear
system saying the assumptions are the actual truth values. Budgets and
costs of different states are distinct variables, so the joint system is
feasible exactly when each state's part is, and assumption rows can be
filtered once up front.
"""

import itertools
import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

import networkx as nx
from pydantic import BaseModel, ConfigDict

from config.settings import settings
from linarith.fourier_motzkin import LinConstraint, LinSystem, Relation, fm_feasible
from logic.closure import closure
from logic.similarity import ClassKey, class_key
from logic.syntax import (
    And, Bottom, Budget, Common, Formula, Ineq, Know, Not, Prop, Top,
    agents_of, has_query, props_of, subformulas,
)
from semantics.evaluator import evaluate
from semantics.kripke import Model, canonical_blocks
from .reducer import find_common_under_query, translate

logger = logging.getLogger(__name__)


class SatStatus(str, Enum):
    SAT = "sat"
    UNSAT_UP_TO = "unsat_up_to"
    UNSUPPORTED = "unsupported"


@dataclass(frozen=True)
class SatResult:
    """Verdict of a bounded satisfiability check."""
    status: SatStatus
    witness: Optional[Model] = field(default=None, compare=False)
    state: Optional[str] = None
    max_states: Optional[int] = None
    closure_size: Optional[int] = None
    reason: Optional[str] = None

    @property
    def is_sat(self) -> bool:
        return self.status is SatStatus.SAT

    @property
    def theoretical_bound(self) -> str:
        """Small-model bound 2^|cl(phi)|, kept symbolic."""
        return f"2^{self.closure_size}"


@dataclass(frozen=True)
class PreStructure:
    """States, partitions and valuation plus assumed truth of the linear atoms."""
    states: Tuple[str, ...]
    blocks: Dict[str, Tuple[int, ...]] = field(hash=False)
    valuation: Tuple[frozenset, ...] = ()
    pseudo: Tuple[Dict[Ineq, bool], ...] = field(default=(), hash=False)
    designated: int = 0

    def partition(self, agent: str) -> List[List[str]]:
        classes: Dict[int, List[str]] = {}
        for position, block in enumerate(self.blocks[agent]):
            classes.setdefault(block, []).append(self.states[position])
        return list(classes.values())


# Linear systems


def inequality_atoms(formula: Formula) -> Tuple[Ineq, ...]:
    """Distinct linear atoms of ``formula`` in post-order."""
    return tuple(node for node in subformulas(formula) if isinstance(node, Ineq))


def cost_classes(formula: Formula) -> Dict[ClassKey, Formula]:
    """One representative cost argument per similarity class."""
    classes: Dict[ClassKey, Formula] = {}
    for atom in inequality_atoms(formula):
        for _, term in atom.summands:
            if not isinstance(term, Budget):
                classes.setdefault(class_key(term.formula), term.formula)
    return classes


def budget_variable(agent: str, state: str) -> str:
    return f"b:{agent}@{state}"


def cost_variable(agent: str, key: ClassKey, state: str) -> str:
    return f"c:{agent}:{key}@{state}"


def _term_variable(term, state: str) -> str:
    if isinstance(term, Budget):
        return budget_variable(term.agent, state)
    return cost_variable(term.agent, class_key(term.formula), state)


def _atom_constraint(atom: Ineq, truth: bool, state: str) -> LinConstraint:
    coefficients: Dict[str, Fraction] = {}
    for coefficient, term in atom.summands:
        name = _term_variable(term, state)
        coefficients[name] = coefficients.get(name, Fraction(0)) + coefficient
    if truth:
        return LinConstraint.build(coefficients, Relation.GE, atom.bound)
    # sum < z written as -sum > -z
    return LinConstraint.build({name: -value for name, value in coefficients.items()}, Relation.GT, -atom.bound)


def build_I(state: str, pseudo: Mapping[Ineq, bool], formula: Formula) -> LinSystem:
    """
    The linear system that realises the assumed atom truths at one state.

    Args:
        state: state name, used to suffix the variables
        pseudo: assumed truth of each linear atom
        formula: the formula whose agents and cost arguments are constrained

    Returns:
        LinSystem: the atoms or their strict negations, plus the sign facts
        b_i >= 0, c_i(A) >= 0 and c_i(true) = 0. Similar cost arguments share
        one variable.
    """
    constraints = [_atom_constraint(atom, truth, state) for atom, truth in pseudo.items()]
    agents = agents_of(formula)
    keys = set(cost_classes(formula))
    variables = []
    for agent in agents:
        name = budget_variable(agent, state)
        variables.append(name)
        constraints.append(LinConstraint.build({name: 1}, Relation.GE, 0))
        for key in sorted(keys, key=str):
            name = cost_variable(agent, key, state)
            variables.append(name)
            relation = Relation.EQ if key.is_tautology_class() else Relation.GE
            constraints.append(LinConstraint.build({name: 1}, relation, 0))
    return LinSystem.of(constraints, variables)


# Enumeration


def restricted_growth_strings(count: int) -> Iterator[Tuple[int, ...]]:
    """Every partition of ``count`` states, each as its canonical block row."""
    def extend(prefix: List[int], top: int) -> Iterator[Tuple[int, ...]]:
        if len(prefix) == count:
            yield tuple(prefix)
            return
        for value in range(top + 2):
            yield from extend(prefix + [value], max(top, value))

    yield from extend([0], 0)


def _permute_row(row: Sequence[int], permutation: Sequence[int]) -> Tuple[int, ...]:
    moved = [0] * len(row)
    for position, value in enumerate(row):
        moved[permutation[position]] = value
    return tuple(moved)


def partition_frames(agents: Sequence[str], count: int) -> Iterator[Tuple[Tuple[Tuple[int, ...], ...], List]]:
    """
    Partition tuples up to state renaming, with their automorphisms.

    Yields:
        (rows, automorphisms): one block row per agent, and the non-identity
        state permutations that leave every row unchanged
    """
    permutations = list(itertools.permutations(range(count)))[1:]
    choices = list(restricted_growth_strings(count))
    for rows in itertools.product(choices, repeat=len(agents)):
        minimal = True
        automorphisms = []
        for permutation in permutations:
            image = tuple(canonical_blocks(_permute_row(row, permutation)) for row in rows)
            if image < rows:
                minimal = False
                break
            if image == rows:
                automorphisms.append(permutation)
        if minimal:
            yield rows, automorphisms


def _is_minimal(labels: Tuple[int, ...], automorphisms: Sequence[Sequence[int]]) -> bool:
    return all(labels <= _permute_row(labels, permutation) for permutation in automorphisms)


class _Program:
    """A static formula compiled to bitmask operations over up to a few states."""

    def __init__(self, formula: Formula, props: Sequence[str], atoms: Sequence[Ineq]):
        positions = {}
        prop_index = {name: k for k, name in enumerate(props)}
        atom_index = {atom: k for k, atom in enumerate(atoms)}
        self.ops: List[Tuple] = []
        self.groups = set()
        for node in subformulas(formula):
            if isinstance(node, Prop):
                op = ("prop", prop_index[node.name])
            elif isinstance(node, Ineq):
                op = ("atom", atom_index[node])
            elif isinstance(node, Top):
                op = ("top",)
            elif isinstance(node, Bottom):
                op = ("bottom",)
            elif isinstance(node, Not):
                op = ("not", positions[node.arg])
            elif isinstance(node, And):
                op = ("and", positions[node.left], positions[node.right])
            elif isinstance(node, Know):
                op = ("know", node.agent, positions[node.arg])
            elif isinstance(node, Common):
                self.groups.add(node.group)
                op = ("common", node.group, positions[node.arg])
            else:
                raise ValueError(f"cannot compile {type(node).__name__}")
            positions[node] = len(self.ops)
            self.ops.append(op)

    def run(self, full: int, prop_masks, atom_masks, blocks, components) -> int:
        values: List[int] = []
        for op in self.ops:
            kind = op[0]
            if kind == "prop":
                values.append(prop_masks[op[1]])
            elif kind == "atom":
                values.append(atom_masks[op[1]])
            elif kind == "top":
                values.append(full)
            elif kind == "bottom":
                values.append(0)
            elif kind == "not":
                values.append(full & ~values[op[1]])
            elif kind == "and":
                values.append(values[op[1]] & values[op[2]])
            else:
                inside = values[op[2]]
                cells = blocks[op[1]] if kind == "know" else components[op[1]]
                values.append(sum(cell for cell in cells if cell & inside == cell))
        return values[-1]


def _cells(row: Sequence[int]) -> List[int]:
    masks: Dict[int, int] = {}
    for position, block in enumerate(row):
        masks[block] = masks.get(block, 0) | (1 << position)
    return list(masks.values())


def _component_cells(rows: Mapping[str, Sequence[int]], group: Sequence[str], count: int) -> List[int]:
    graph = nx.Graph()
    graph.add_nodes_from(range(count))
    for agent in group:
        for cell in _cells(rows[agent]):
            nx.add_path(graph, [k for k in range(count) if cell >> k & 1])
    return [sum(1 << k for k in component) for component in nx.connected_components(graph)]


def feasible_rows(formula: Formula, atoms: Sequence[Ineq]) -> List[Tuple[bool, ...]]:
    """
    Truth assignments to the atoms that some budgets and costs realise.

    Rows grow one atom at a time; a prefix whose system is already infeasible
    is dropped together with all of its extensions. Rows come out in the
    order of ``itertools.product((True, False), repeat=len(atoms))``.
    """
    rows: List[Tuple[bool, ...]] = []

    def extend(prefix: Tuple[bool, ...]) -> None:
        if not fm_feasible(build_I("w", dict(zip(atoms, prefix)), formula)).feasible:
            return
        if len(prefix) == len(atoms):
            rows.append(prefix)
            return
        for truth in (True, False):
            extend(prefix + (truth,))

    extend(())
    return rows


def search_prestructure(formula: Formula, max_states: int) -> Optional[PreStructure]:
    """
    Find a pre-structure with at most ``max_states`` states satisfying ``formula``.

    Args:
        formula: a query-free formula
        max_states: largest state count tried

    Returns:
        The first satisfying pre-structure, or None
    """
    agents = agents_of(formula)
    props = props_of(formula)
    atoms = inequality_atoms(formula)
    rows = feasible_rows(formula, atoms)
    logger.debug(f"{len(rows)} of {2 ** len(atoms)} atom assignments are realisable")
    if not rows:
        return None

    program = _Program(formula, props, atoms)
    valuations = 1 << len(props)
    labels_per_state = valuations * len(rows)

    for count in range(1, max_states + 1):
        full = (1 << count) - 1
        tried = 0
        for frame_rows, automorphisms in partition_frames(agents, count):
            by_agent = dict(zip(agents, frame_rows))
            blocks = {agent: _cells(row) for agent, row in by_agent.items()}
            components = {group: _component_cells(by_agent, group, count) for group in program.groups}
            for labels in itertools.product(range(labels_per_state), repeat=count):
                if automorphisms and not _is_minimal(labels, automorphisms):
                    continue
                tried += 1
                valuation = [label // len(rows) for label in labels]
                truth = [rows[label % len(rows)] for label in labels]
                prop_masks = [
                    sum(1 << k for k in range(count) if valuation[k] >> j & 1) for j in range(len(props))
                ]
                atom_masks = [sum(1 << k for k in range(count) if truth[k][j]) for j in range(len(atoms))]
                satisfied = program.run(full, prop_masks, atom_masks, blocks, components)
                if not satisfied:
                    continue
                states = tuple(f"w{k + 1}" for k in range(count))
                logger.debug(f"Satisfying pre-structure with {count} states after {tried} candidates")
                return PreStructure(
                    states=states,
                    blocks=by_agent,
                    valuation=tuple(
                        frozenset(props[j] for j in range(len(props)) if valuation[k] >> j & 1)
                        for k in range(count)
                    ),
                    pseudo=tuple(dict(zip(atoms, truth[k])) for k in range(count)),
                    designated=(satisfied & -satisfied).bit_length() - 1,
                )
        logger.debug(f"No satisfying pre-structure with {count} states ({tried} candidates)")
    return None


def realise(prestructure: PreStructure, formula: Formula) -> Model:
    """
    Turn a satisfying pre-structure into a model with actual budgets and costs.

    Raises:
        RuntimeError: if the joint linear system is infeasible
    """
    system = LinSystem.of(())
    for position, state in enumerate(prestructure.states):
        part = build_I(state, prestructure.pseudo[position], formula)
        system = LinSystem(system.constraints + part.constraints, system.extra_variables | part.extra_variables)
    outcome = fm_feasible(system)
    if not outcome.feasible:
        raise RuntimeError("pre-structure rows were feasible one by one but not jointly")
    values = outcome.witness

    agents = agents_of(formula)
    classes = cost_classes(formula)
    budgets = {
        agent: {state: values.get(budget_variable(agent, state), Fraction(0)) for state in prestructure.states}
        for agent in agents
    }
    costs = [
        (agent, state, representative, values.get(cost_variable(agent, key, state), Fraction(0)))
        for agent in agents
        for state in prestructure.states
        for key, representative in classes.items()
        if not key.is_tautology_class()
    ]
    valuation: Dict[str, List[str]] = {}
    for state, true_props in zip(prestructure.states, prestructure.valuation):
        for prop in true_props:
            valuation.setdefault(prop, []).append(state)
    return Model.build(
        prestructure.states,
        agents,
        {agent: prestructure.partition(agent) for agent in agents},
        valuation,
        budgets,
        costs,
    )


# Pipeline


class SatState(BaseModel):
    """State of one satisfiability check as it moves through the pipeline."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    formula: Formula
    max_states: int
    searched: Optional[Formula] = None
    closure_size: Optional[int] = None
    prestructure: Optional[PreStructure] = None
    witness: Optional[Model] = None
    state: Optional[str] = None
    unsupported: str = ""
    error_message: str = ""


class SatChecker:
    """Classify, translate, search, realise and verify."""

    def __init__(self):
        self.logger = logger

    def check(self, formula: Formula, max_states: Optional[int] = None) -> SatResult:
        bound = settings.max_states if max_states is None else max_states
        if bound < 1:
            raise ValueError("max_states must be at least 1")
        state = SatState(formula=formula, max_states=bound)
        try:
            state = self._classify(state)
            if state.unsupported:
                return SatResult(SatStatus.UNSUPPORTED, max_states=bound, reason=state.unsupported)
            state = self._translate(state)
            state = self._search(state)
            if state.prestructure is None:
                return SatResult(
                    SatStatus.UNSAT_UP_TO, max_states=bound, closure_size=state.closure_size,
                )
            state = self._realise(state)
            state = self._verify(state)
            return SatResult(
                SatStatus.SAT, witness=state.witness, state=state.state,
                max_states=bound, closure_size=state.closure_size,
            )
        except Exception as e:
            self.logger.error(f"Satisfiability check failed: {str(e)}")
            state.error_message = str(e)
            raise

    def _classify(self, state: SatState) -> SatState:
        offending = find_common_under_query(state.formula)
        if offending is not None:
            state.unsupported = "common knowledge under query"
            self.logger.info("Formula has common knowledge under a query; not supported")
            return state
        state.closure_size = len(closure(state.formula))
        self.logger.info(f"Closure has {state.closure_size} members")
        return state

    def _translate(self, state: SatState) -> SatState:
        if has_query(state.formula):
            state.searched = translate(state.formula)
            self.logger.info("Translated query boxes away")
        else:
            state.searched = state.formula
        return state

    def _search(self, state: SatState) -> SatState:
        state.prestructure = search_prestructure(state.searched, state.max_states)
        found = "found" if state.prestructure is not None else "no"
        self.logger.info(f"Search up to {state.max_states} states: {found} pre-structure")
        return state

    def _realise(self, state: SatState) -> SatState:
        state.witness = realise(state.prestructure, state.searched)
        state.state = state.prestructure.states[state.prestructure.designated]
        return state

    def _verify(self, state: SatState) -> SatState:
        if not evaluate(state.witness, state.state, state.formula):
            raise RuntimeError(f"witness fails the formula at {state.state}")
        self.logger.info(f"Witness verified at {state.state}")
        return state


def sat_static(formula: Formula, max_states: Optional[int] = None) -> SatResult:
    """
    Bounded satisfiability of a query-free formula.

    Args:
        formula: a formula without query boxes; common knowledge is allowed
        max_states: largest model tried; defaults to the configured bound

    Returns:
        SatResult: SAT with a verified witness, or UNSAT_UP_TO the bound

    Raises:
        ValueError: for a bound below 1 or a formula with query boxes
    """
    if has_query(formula):
        raise ValueError("sat_static needs a formula without query boxes")
    return SatChecker().check(formula, max_states)


def sat_bounded(formula: Formula, max_states: Optional[int] = None) -> SatResult:
    """
    Bounded satisfiability of any formula.

    Query boxes are translated away first. Formulas with common knowledge
    under a query are reported as UNSUPPORTED.
    """
    return SatChecker().check(formula, max_states)

