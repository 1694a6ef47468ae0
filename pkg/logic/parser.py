"""Concrete syntax for SPQ formulas: a Lark LALR grammar and a round-trip printer."""

import logging
from fractions import Fraction
from typing import List, Tuple

from lark import Lark, Token, Transformer, v_args
from lark.exceptions import UnexpectedInput, VisitError

from .errors import ParseError, PropositionalPositionError, SpqError
from .surface import (
    Ask, Compare, Diamond, Everybody, Iff, Implies, Or, Possible,
    desugar, is_surface_propositional,
)
from .syntax import (
    And, Bottom, Budget, Common, Cost, Formula, Ineq, Know, Not, Prop, Query, Top, TOP, BOTTOM,
    make_group,
)

logger = logging.getLogger(__name__)

GRAMMAR = r'''
?start: formula

?formula: disj
    | disj "->" formula             -> implies
    | disj "<->" formula            -> iff

?disj: conj
    | disj "|" conj                 -> or_

?conj: unary
    | conj "&" unary                -> and_

?unary: "~" unary                   -> neg
    | "K" "{" NAME "}" unary        -> know
    | "M" "{" NAME "}" unary        -> possible
    | "C" "{" agents "}" unary      -> common
    | "E" "{" agents "}" unary      -> everybody
    | "[?" agents ":" formula "]" unary   -> ask
    | "<?" agents ":" formula ">" unary   -> diamond
    | atom

?atom: "true"                       -> top
    | "false"                       -> bottom
    | NAME                          -> prop
    | comparison
    | "(" formula ")"

comparison: "(" linsum RELOP linsum ")"
linsum: SIGN? linterm (SIGN linterm)*
linterm: rational "*" termref
    | termref
    | rational
?termref: budget
    | cost
budget: BUDGET NAME "]"
cost: COST NAME "]" "(" formula ")"
rational: INT ("/" INT)?
agents: NAME ("," NAME)*

BUDGET.2: "b["
COST.2: "c["
RELOP: /(>=|<=|>|<|=)/
SIGN: /[+-]/
NAME: /[A-Za-z_][A-Za-z0-9_]*/
INT: /[0-9]+/

%import common.WS
%ignore WS
'''


class _SurfaceBuilder(Transformer):
    """Turns the Lark tree into surface nodes; propositional positions are checked here."""

    def __init__(self, text: str):
        super().__init__()
        self.text = text

    def _position_error(self, meta, message: str) -> PropositionalPositionError:
        offset = getattr(meta, "start_pos", 0) or 0
        line, column = _line_column(self.text, offset)
        return PropositionalPositionError(message, offset, line, column)

    def implies(self, children):
        return Implies(children[0], children[1])

    def iff(self, children):
        return Iff(children[0], children[1])

    def or_(self, children):
        return Or(children[0], children[1])

    def and_(self, children):
        return And(children[0], children[1])

    def neg(self, children):
        return Not(children[0])

    def know(self, children):
        return Know(str(children[0]), children[1])

    def possible(self, children):
        return Possible(str(children[0]), children[1])

    def common(self, children):
        return Common(children[0], children[1])

    def everybody(self, children):
        return Everybody(children[0], children[1])

    @v_args(meta=True)
    def ask(self, meta, children):
        group, question, body = children
        if not is_surface_propositional(question):
            raise self._position_error(meta, "query questions must be propositional")
        return Ask(group, question, body)

    @v_args(meta=True)
    def diamond(self, meta, children):
        group, question, body = children
        if not is_surface_propositional(question):
            raise self._position_error(meta, "query questions must be propositional")
        return Diamond(group, question, body)

    def top(self, children):
        return TOP

    def bottom(self, children):
        return BOTTOM

    def prop(self, children):
        return Prop(str(children[0]))

    def agents(self, children):
        return make_group(str(child) for child in children)

    def rational(self, children):
        numerator = int(children[0])
        denominator = int(children[1]) if len(children) > 1 else 1
        if denominator == 0:
            raise ValueError("zero denominator")
        return Fraction(numerator, denominator)

    def budget(self, children):
        return Budget(str(children[1]))

    @v_args(meta=True)
    def cost(self, meta, children):
        agent, formula = str(children[1]), children[2]
        if not is_surface_propositional(formula):
            raise self._position_error(meta, "cost arguments must be propositional")
        return Cost(agent, formula)

    def linterm(self, children):
        if len(children) == 2:
            return children[0], children[1]
        if isinstance(children[0], Fraction):
            return children[0], None
        return Fraction(1), children[0]

    def linsum(self, children):
        items = []
        sign = 1
        for child in children:
            if isinstance(child, Token) and child.type == "SIGN":
                sign = -1 if child == "-" else 1
                continue
            coefficient, term = child
            items.append((sign * coefficient, term))
            sign = 1
        return tuple(items)

    @v_args(meta=True)
    def comparison(self, meta, children):
        left, relation, right = children
        if all(term is None for _, term in left + right):
            offset = getattr(meta, "start_pos", 0) or 0
            line, column = _line_column(self.text, offset)
            raise ParseError("comparison needs a budget or cost term", offset, line, column)
        return Compare(left, str(relation), right)


_PARSER = Lark(GRAMMAR, parser="lalr", propagate_positions=True)


def _line_column(text: str, offset: int) -> Tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    column = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, column


def _from_lark(text: str, error: UnexpectedInput) -> ParseError:
    offset = getattr(error, "pos_in_stream", None)
    if offset is None or offset < 0:
        offset = len(text)
    offset = max(0, min(offset, len(text) - 1)) if text else 0
    line, column = _line_column(text, offset)
    expected = getattr(error, "expected", None) or getattr(error, "allowed", None) or []
    return ParseError("syntax error", offset, line, column, [str(name) for name in expected])


def parse_surface(text: str):
    """Parse text into surface nodes without desugaring."""
    try:
        tree = _PARSER.parse(text)
    except UnexpectedInput as error:
        raise _from_lark(text, error) from None
    try:
        return _SurfaceBuilder(text).transform(tree)
    except VisitError as error:
        original = error.orig_exc
        if isinstance(original, SpqError):
            raise original from None
        raise ParseError(str(original), 0, 1, 1) from None


def parse_formula(text: str) -> Formula:
    """
    Parse and desugar a formula.

    Args:
        text: formula in the concrete syntax

    Returns:
        The core formula

    Raises:
        ParseError: with the location of the failure
        PropositionalPositionError: for modal operators inside questions or cost terms
    """
    formula = desugar(parse_surface(text))
    logger.debug(f"Parsed {text!r}")
    return formula


def parse_group(text: str) -> Tuple[str, ...]:
    """Parse a comma-separated agent list such as ``"n,m"``."""
    names = [part.strip() for part in text.split(",") if part.strip()]
    return make_group(names)


# Printing


def _term_text(term) -> str:
    if isinstance(term, Budget):
        return f"b[{term.agent}]"
    return f"c[{term.agent}]({print_formula(term.formula)})"


def _sum_text(summands) -> str:
    parts: List[str] = []
    for index, (coefficient, term) in enumerate(summands):
        body = _term_text(term)
        magnitude = abs(coefficient)
        shown = body if magnitude == 1 else f"{magnitude}*{body}"
        if index == 0:
            parts.append(f"-{shown}" if coefficient < 0 else shown)
        else:
            parts.append(f" - {shown}" if coefficient < 0 else f" + {shown}")
    return "".join(parts)


def _unary_text(formula: Formula) -> str:
    if isinstance(formula, Prop):
        return formula.name
    if isinstance(formula, Top):
        return "true"
    if isinstance(formula, Bottom):
        return "false"
    if isinstance(formula, Ineq):
        return f"({_sum_text(formula.summands)} >= {formula.bound})"
    if isinstance(formula, Not):
        return "~" + _unary_text(formula.arg)
    if isinstance(formula, Know):
        return f"K{{{formula.agent}}} {_unary_text(formula.arg)}"
    if isinstance(formula, Common):
        return f"C{{{','.join(formula.group)}}} {_unary_text(formula.arg)}"
    if isinstance(formula, Query):
        return f"[? {','.join(formula.group)} : {print_formula(formula.question)}] {_unary_text(formula.arg)}"
    if isinstance(formula, And):
        return f"({print_formula(formula)})"
    raise TypeError(f"not a formula: {formula!r}")


def print_formula(formula: Formula) -> str:
    """Render a core formula so that ``parse_formula`` gives it back unchanged."""
    if isinstance(formula, And):
        return f"{print_formula(formula.left)} & {_unary_text(formula.right)}"
    return _unary_text(formula)
