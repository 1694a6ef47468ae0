"""Base interface for all axiom schemas."""

import logging
import random
from abc import ABC, abstractmethod
from typing import Tuple

from logic.syntax import Formula
from semantics.kripke import Model
from .generators import Signature, random_formula, random_group

logger = logging.getLogger(__name__)


class AxiomSchema(ABC):
    """Abstract base class for axiom schemas of the proof system."""

    # Fewest agents a model needs for an instance to exist
    min_agents: int = 1
    # Instances contain no query box
    static: bool = True
    # Valid only on models where agents know their own resources
    requires_awareness: bool = False

    def __init__(self, name: str, description: str):
        self.name = name
        self.description = description
        self.logger = logging.getLogger(f"{__name__}.{name}")

    @abstractmethod
    def instantiate(self, rng: random.Random, signature: Signature) -> Formula:
        """
        Fill the schema's metavariables at random.

        Args:
            rng: random source
            signature: agents and variables to draw from

        Returns:
            Formula: a well-formed instance of the schema
        """
        pass

    def applies_to(self, model: Model) -> bool:
        """
        Whether instances must be valid on ``model``.
        Override in subclasses with side conditions on the model.

        Args:
            model: a candidate model

        Returns:
            bool: True if the schema is sound for this model
        """
        if len(model.agents) < self.min_agents:
            return False
        return not self.requires_awareness or model.is_resource_aware()

    def _formula(self, rng: random.Random, signature: Signature, depth: int = 2) -> Formula:
        """A metavariable filler; static schemas get query-free fillers."""
        return random_formula(
            rng, signature.agents, signature.props, depth,
            max_queries=0 if self.static else 1,
            allow_queries=not self.static,
        )

    def _group(self, rng: random.Random, signature: Signature) -> Tuple[str, ...]:
        return random_group(rng, signature.agents)

    def __str__(self) -> str:
        return f"{self.name}: {self.description}"
