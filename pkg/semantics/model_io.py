"""Model documents: the JSON schema for models, loading and dumping.

Rationals are written as strings (``"5"`` or ``"19/2"``). In budgets and cost
entries the state ``"*"`` stands for every state; entries naming a specific
state override the wildcard.
"""

import json
import logging
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Mapping, Tuple, Union

from pydantic import BaseModel, Field, ValidationError

from linarith import format_rational, to_rational
from logic.errors import EmptyModelError, ModelValidationError, ParseError
from logic.parser import parse_formula, print_formula
from logic.similarity import ClassKey, class_key
from logic.syntax import Formula, is_propositional
from .kripke import Model

logger = logging.getLogger(__name__)

WILDCARD = "*"


class CostEntry(BaseModel):
    """One cost assignment: agent, state (or ``*``), formula text and cost."""
    agent: str
    state: str
    formula: str
    cost: str


class ModelDocument(BaseModel):
    """The serialized form of a model."""
    agents: List[str]
    states: List[str]
    relations: Dict[str, List[List[str]]]
    valuation: Dict[str, List[str]] = Field(default_factory=dict)
    budgets: Dict[str, Dict[str, str]] = Field(default_factory=dict)
    costs: List[CostEntry] = Field(default_factory=list)


def _expand_budgets(document: ModelDocument, errors: List[str]) -> Dict[str, Dict[str, Fraction]]:
    expanded: Dict[str, Dict[str, Fraction]] = {}
    for agent, entries in document.budgets.items():
        if agent not in document.agents:
            errors.append(f"unknown agent in budgets: {agent}")
            continue
        values: Dict[str, Fraction] = {}
        ordered = sorted(entries.items(), key=lambda item: item[0] != WILDCARD)
        for state, text in ordered:
            try:
                amount = to_rational(text)
            except ValueError as error:
                errors.append(f"budget of agent {agent} at {state}: {error}")
                continue
            if state == WILDCARD:
                values.update({name: amount for name in document.states})
            elif state not in document.states:
                errors.append(f"unknown state in budgets of agent {agent}: {state}")
            else:
                values[state] = amount
        expanded[agent] = values
    return expanded


def _expand_costs(
    document: ModelDocument, errors: List[str]
) -> List[Tuple[str, str, Formula, Fraction]]:
    """Resolve wildcards; specific entries replace wildcard ones in the same class."""
    resolved: Dict[Tuple[str, str, ClassKey], Tuple[Formula, Fraction, bool]] = {}
    conflicts: List[Tuple[str, str, Formula, Fraction]] = []
    for position, entry in enumerate(document.costs):
        where = f"cost entry {position}"
        if entry.agent not in document.agents:
            errors.append(f"unknown agent in costs: {entry.agent}")
            continue
        if entry.state != WILDCARD and entry.state not in document.states:
            errors.append(f"unknown state in costs of agent {entry.agent}: {entry.state}")
            continue
        try:
            formula = parse_formula(entry.formula)
        except ParseError as error:
            errors.append(f"{where}: {error}")
            continue
        if not is_propositional(formula):
            errors.append(f"{where}: cost formula must be propositional")
            continue
        try:
            amount = to_rational(entry.cost)
            key = class_key(formula)
        except ValueError as error:
            errors.append(f"{where}: {error}")
            continue
        specific = entry.state != WILDCARD
        for state in ([entry.state] if specific else document.states):
            slot = (entry.agent, state, key)
            previous = resolved.get(slot)
            if previous is None or (specific and not previous[2]):
                resolved[slot] = (formula, amount, specific)
            elif previous[2] == specific and previous[1] != amount:
                # same precedence, different value: let the model report the conflict
                conflicts.append((entry.agent, state, formula, amount))
    entries = [(agent, state, formula, amount) for (agent, state, _), (formula, amount, _) in resolved.items()]
    return entries + conflicts


def model_from_document(document: ModelDocument) -> Model:
    """Validate a parsed document and build the model."""
    errors: List[str] = []
    if len(set(document.states)) != len(document.states):
        errors.append("duplicate state names")
    if len(set(document.agents)) != len(document.agents):
        errors.append("duplicate agent names")
    if not document.states:
        errors.append("a model needs at least one state")
    budgets = _expand_budgets(document, errors)
    costs = _expand_costs(document, errors)
    if errors:
        raise ModelValidationError(errors)
    return Model.build(
        states=document.states,
        agents=document.agents,
        partitions=document.relations,
        valuation=document.valuation,
        budgets=budgets,
        costs=costs,
    )


def load_model(document: Union[Mapping[str, Any], ModelDocument]) -> Model:
    """
    Load a model from a decoded document.

    Args:
        document: mapping in the model document schema

    Returns:
        The validated model

    Raises:
        ModelValidationError: listing every problem found
    """
    if not isinstance(document, ModelDocument):
        try:
            document = ModelDocument.model_validate(document)
        except ValidationError as error:
            raise ModelValidationError([
                f"{'.'.join(str(part) for part in item['loc'])}: {item['msg']}" for item in error.errors()
            ]) from None
    model = model_from_document(document)
    logger.debug(f"Loaded model with {len(model.states)} states and {len(model.agents)} agents")
    return model


def load_model_file(path: Union[str, Path]) -> Model:
    """Read and load a model document from a JSON file."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as error:
        raise ModelValidationError([f"{path}: {error}"]) from None
    return load_model(raw)


def _constant(values) -> bool:
    return len(set(values)) == 1


def dump_document(model: Model) -> ModelDocument:
    """
    Serialize a model, using ``*`` wherever a value is the same in every state.

    Raises:
        EmptyModelError: for a model without states
    """
    if model.is_empty:
        raise EmptyModelError("an empty model cannot be serialized")
    budgets: Dict[str, Dict[str, str]] = {}
    for agent in model.agents:
        row = model.budgets[agent]
        if _constant(row):
            budgets[agent] = {WILDCARD: format_rational(row[0])}
        else:
            budgets[agent] = {name: format_rational(value) for name, value in zip(model.states, row)}

    costs: List[CostEntry] = []
    for agent in model.agents:
        tables = model.costs[agent]
        keys = sorted({key for table in tables for key in table}, key=str)
        for key in keys:
            text = print_formula(model.cost_formulas[key])
            row = [table.get(key, Fraction(0)) for table in tables]
            if _constant(row):
                costs.append(CostEntry(agent=agent, state=WILDCARD, formula=text, cost=format_rational(row[0])))
                continue
            for name, value in zip(model.states, row):
                if value != 0:
                    costs.append(CostEntry(agent=agent, state=name, formula=text, cost=format_rational(value)))

    return ModelDocument(
        agents=list(model.agents),
        states=list(model.states),
        relations={agent: model.partition(agent) for agent in model.agents},
        valuation={prop: sorted((model.states[k] for k in model.valuation[prop]), key=model.index)
                   for prop in model.props()},
        budgets=budgets,
        costs=costs,
    )


def dump_model(model: Model) -> Dict[str, Any]:
    """The model as a plain document mapping, ready for ``json.dumps``."""
    return dump_document(model).model_dump()


def dump_model_file(model: Model, path: Union[str, Path]) -> None:
    Path(path).write_text(dump_document(model).model_dump_json(indent=2) + "\n", encoding="utf-8")
