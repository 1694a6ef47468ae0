"""Exception hierarchy shared by every SPQ module."""

from typing import Iterable, List, Optional


class SpqError(Exception):
    """Base class for all errors raised by the toolkit."""


class EmptyGroupError(SpqError, ValueError):
    """Raised when a group operator is built or evaluated with no agents."""

    def __init__(self, operator: str = "group"):
        super().__init__(f"{operator} requires a nonempty agent group")


class UnknownAgentError(SpqError, ValueError):
    """Raised when an agent is not part of the model."""

    def __init__(self, agent: str):
        self.agent = agent
        super().__init__(f"unknown agent: {agent}")


class UnknownStateError(SpqError, ValueError):
    """Raised when a state name or index does not exist in the model."""

    def __init__(self, state):
        self.state = state
        super().__init__(f"unknown state: {state}")


class CanonicalizationError(SpqError, ValueError):
    """Raised when a propositional formula has too many variables to tabulate."""


class EmptyModelError(SpqError, ValueError):
    """Raised when an operation needs at least one state but the model has none."""


class ParseError(SpqError, ValueError):
    """Syntax error in formula text, carrying the location of the failure."""

    def __init__(
        self,
        message: str,
        offset: int = 0,
        line: int = 1,
        column: int = 1,
        expected: Optional[Iterable[str]] = None,
    ):
        self.offset = offset
        self.line = line
        self.column = column
        self.expected = sorted(expected) if expected else []
        self.message = message
        super().__init__(self._describe())

    def _describe(self) -> str:
        text = f"{self.message} at line {self.line}, column {self.column} (offset {self.offset})"
        if self.expected:
            text += f"; expected one of: {', '.join(self.expected)}"
        return text


class PropositionalPositionError(ParseError):
    """A modal operator or linear atom appeared where only propositional text is allowed."""


class ModelValidationError(SpqError, ValueError):
    """A model document or model construction violated the model constraints."""

    def __init__(self, errors: List[str]):
        self.errors = list(errors)
        super().__init__("invalid model: " + "; ".join(self.errors))


class NotReducibleError(SpqError):
    """Common knowledge occurs under a query, so no reduction applies."""

    def __init__(self, subformula, rendered: Optional[str] = None):
        self.subformula = subformula
        shown = rendered if rendered is not None else repr(subformula)
        super().__init__(f"not reducible: common knowledge under a query in {shown}")
