"""Export of models as undirected DOT graphs.

Each state becomes a node labelled with its true variables and budgets.
Edges join states in a common class of some agent and list those agents.
Reflexive pairs are not drawn, and neither is a pair that two shorter
edges through a third state already carry for all of its agents; "shorter"
compares how much the endpoint labels differ, then how far apart the
states are in model order.
"""

import logging
from itertools import combinations
from pathlib import Path
from typing import Dict, List, Tuple, Union

from linarith.rational import format_rational
from semantics.kripke import Model

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]


def _escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def _node_label(model: Model, position: int) -> str:
    name = model.states[position]
    props = ", ".join(sorted(model.true_props(position))) or "-"
    budgets = " ".join(f"b_{agent}={format_rational(model.budgets[agent][position])}" for agent in model.agents)
    return "\\n".join(_escape(part) for part in (name, props, budgets) if part)


def _label_distance(model: Model, first: int, second: int) -> int:
    props = len(model.true_props(first) ^ model.true_props(second))
    budgets = sum(1 for agent in model.agents if model.budgets[agent][first] != model.budgets[agent][second])
    return props + budgets


def related_agents(model: Model) -> Dict[Pair, Tuple[str, ...]]:
    """For every pair of distinct states, the agents that cannot tell them apart."""
    pairs: Dict[Pair, Tuple[str, ...]] = {}
    for first, second in combinations(range(len(model.states)), 2):
        agents = tuple(agent for agent in model.agents if model.blocks[agent][first] == model.blocks[agent][second])
        if agents:
            pairs[(first, second)] = agents
    return pairs


def drawn_edges(model: Model) -> List[Tuple[Pair, Tuple[str, ...]]]:
    """
    The edges worth drawing, in state order.

    A pair is left out when some third state joins both endpoints through
    pairs carrying all of its agents, each strictly shorter than the pair.
    Every agent's classes stay connected through the drawn edges.
    """
    pairs = related_agents(model)
    weight = {
        pair: (_label_distance(model, *pair), pair[1] - pair[0])
        for pair in pairs
    }

    def leg(first: int, second: int) -> Pair:
        return (first, second) if first < second else (second, first)

    edges = []
    for pair, agents in pairs.items():
        first, second = pair
        implied = False
        for middle in range(len(model.states)):
            if middle in pair:
                continue
            left, right = leg(first, middle), leg(middle, second)
            if left not in pairs or right not in pairs:
                continue
            if not set(agents) <= set(pairs[left]) & set(pairs[right]):
                continue
            if weight[left] < weight[pair] and weight[right] < weight[pair]:
                implied = True
                break
        if not implied:
            edges.append((pair, agents))
    return sorted(edges)


def export_dot(model: Model, name: str = "model") -> str:
    """
    Export ``model`` in DOT format.

    Args:
        model: the model to draw
        name: graph name

    Returns:
        DOT text, one statement per line
    """
    lines = [f'graph "{_escape(name)}" {{']
    for position, state in enumerate(model.states):
        lines.append(f'    "{_escape(state)}" [label="{_node_label(model, position)}"];')
    edges = drawn_edges(model)
    for (first, second), agents in edges:
        lines.append(
            f'    "{_escape(model.states[first])}" -- "{_escape(model.states[second])}" [label="{",".join(agents)}"];'
        )
    lines.append("}")
    logger.debug(f"Drew {len(model.states)} nodes and {len(edges)} edges")
    return "\n".join(lines) + "\n"


def write_dot(model: Model, output_path: Union[str, Path], name: str = "model") -> None:
    output_path = Path(output_path)
    output_path.parent.mkdir(parents=True, exist_ok=True)
    output_path.write_text(export_dot(model, name), encoding="utf-8")
