"""Translation of query boxes into static formulas by the reduction axioms.

Rewriting runs innermost first: the body of a box is made static before the
box itself is rewritten, so every redex has a static body and each rewrite
leaves only boxes around strictly smaller bodies.
"""

import logging
from typing import Callable, Dict, Optional, Tuple

from logic.errors import NotReducibleError
from logic.parser import print_formula
from logic.queries import rewrite_box
from logic.syntax import (
    And, Common, Formula, Know, Not, Query, children, complexity, iter_postorder,
)
from semantics.evaluator import is_valid_on
from semantics.kripke import Model

logger = logging.getLogger(__name__)

StepCallback = Callable[[Query, Formula], None]


def find_common_under_query(formula: Formula) -> Optional[Query]:
    """The first query box (post-order) whose scope contains common knowledge."""
    for node in iter_postorder(formula):
        if isinstance(node, Query) and any(isinstance(inner, Common) for inner in iter_postorder(node.arg)):
            return node
    return None


class Translator:
    """Rewrites one formula; memo tables live as long as the instance."""

    def __init__(self, on_step: Optional[StepCallback] = None):
        self.on_step = on_step
        self.steps = 0
        self._boxes: Dict[Tuple, Formula] = {}
        self._measures: Dict[int, int] = {}
        self._keep = []

    def _measure(self, formula: Formula) -> int:
        cached = self._measures.get(id(formula))
        if cached is None:
            cached = complexity(formula)
            self._measures[id(formula)] = cached
            self._keep.append(formula)
        return cached

    def reduce_box(self, group: Tuple[str, ...], question: Formula, body: Formula) -> Formula:
        """Static equivalent of [?group question]body for a static body."""
        key = (group, question, body)
        done = self._boxes.get(key)
        if done is not None:
            return done

        redex = Query(group, question, body)
        right = rewrite_box(redex)
        if right is None:
            raise NotReducibleError(redex, print_formula(redex))
        self.steps += 1
        if self.on_step is not None:
            self.on_step(redex, right)
        logger.debug(f"Rewrote {print_formula(redex)} (complexity {self._measure(redex)})")

        bound = self._measure(redex)
        for node in iter_postorder(right):
            if isinstance(node, Query) and self._measure(node) >= bound:
                raise RuntimeError(
                    f"rewrite of {print_formula(redex)} left a box of complexity {self._measure(node)} >= {bound}"
                )

        result = self._replace_boxes(right)
        self._boxes[key] = result
        return result

    def _replace_boxes(self, formula: Formula) -> Formula:
        """Replace every box of a rewrite result by its reduction."""
        done: Dict[int, Formula] = {}
        for node in iter_postorder(formula):
            if id(node) in done:
                continue
            if isinstance(node, Query):
                # bodies left by a rewrite are already static
                done[id(node)] = self.reduce_box(node.group, node.question, node.arg)
            else:
                done[id(node)] = _rebuild(node, [done[id(child)] for child in children(node)])
        return done[id(formula)]

    def translate(self, formula: Formula) -> Formula:
        offending = find_common_under_query(formula)
        if offending is not None:
            raise NotReducibleError(offending, print_formula(offending))

        done: Dict[int, Formula] = {}
        for node in iter_postorder(formula):
            if id(node) in done:
                continue
            if isinstance(node, Query):
                # the question is propositional and stays as written
                done[id(node)] = self.reduce_box(node.group, node.question, done[id(node.arg)])
            else:
                done[id(node)] = _rebuild(node, [done[id(child)] for child in children(node)])
        return done[id(formula)]


def _rebuild(node: Formula, parts) -> Formula:
    if isinstance(node, Not):
        return node if parts[0] is node.arg else Not(parts[0])
    if isinstance(node, And):
        if parts[0] is node.left and parts[1] is node.right:
            return node
        return And(parts[0], parts[1])
    if isinstance(node, Know):
        return node if parts[0] is node.arg else Know(node.agent, parts[0])
    if isinstance(node, Common):
        return node if parts[0] is node.arg else Common(node.group, parts[0])
    return node


def translate(formula: Formula, on_step: Optional[StepCallback] = None) -> Formula:
    """
    Eliminate every query box from ``formula``.

    Args:
        formula: a formula with no common knowledge inside any query's scope
        on_step: called with (redex, right side) for every rewrite applied

    Returns:
        An equivalent formula without query boxes

    Raises:
        NotReducibleError: naming the query box that has common knowledge in scope
    """
    translator = Translator(on_step)
    result = translator.translate(formula)
    logger.debug(f"Translation applied {translator.steps} rewrites")
    return result


def validity_check(model: Model, formula: Formula) -> bool:
    """True when ``formula`` holds at every state of ``model``."""
    return is_valid_on(model, formula)
