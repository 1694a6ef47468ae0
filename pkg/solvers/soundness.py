"""Soundness fuzzing: random instances of every axiom schema on random models."""

import logging
import random
from typing import Any, Dict, List, Optional, Sequence

from pydantic import BaseModel

from axioms import AxiomSchema, Signature, all_schemas, random_model
from logic.parser import print_formula
from semantics.evaluator import is_valid_on
from semantics.model_io import dump_model

logger = logging.getLogger(__name__)


class Counterexample(BaseModel):
    """An instance that fails somewhere on a generated model."""
    trial: int
    instance: str
    model: Dict[str, Any]


class SchemaResult(BaseModel):
    """Outcome of fuzzing one schema."""
    name: str
    trials: int
    failures: int = 0
    counterexamples: List[Counterexample] = []

    @property
    def ok(self) -> bool:
        return self.failures == 0


class FuzzReport(BaseModel):
    """Outcome of a whole fuzz run."""
    seed: int
    trials: int
    results: List[SchemaResult] = []

    @property
    def ok(self) -> bool:
        return all(result.ok for result in self.results)

    @property
    def failures(self) -> int:
        return sum(result.failures for result in self.results)

    def lines(self) -> List[str]:
        """One ``name trials failures`` line per schema."""
        return [f"{result.name} {result.trials} {result.failures}" for result in self.results]


def trial_rng(seed: int, name: str, trial: int) -> random.Random:
    """Per-trial random source; trials of a run are independent of each other."""
    return random.Random(f"{seed}:{name}:{trial}")


def fuzz_schema(schema: AxiomSchema, trials: int, seed: int) -> SchemaResult:
    """
    Instantiate ``schema`` ``trials`` times, each on a fresh random model.

    Awareness schemas draw only resource-aware models.
    """
    result = SchemaResult(name=schema.name, trials=trials)
    for trial in range(trials):
        rng = trial_rng(seed, schema.name, trial)
        model = random_model(rng, min_agents=schema.min_agents, aware=schema.requires_awareness)
        if not schema.applies_to(model):
            raise RuntimeError(f"generated a model outside the scope of schema {schema.name}")
        instance = schema.instantiate(rng, Signature.of(model))
        if is_valid_on(model, instance):
            continue
        result.failures += 1
        text = print_formula(instance)
        schema.logger.warning(f"Counterexample in trial {trial}: {text}")
        result.counterexamples.append(Counterexample(trial=trial, instance=text, model=dump_model(model)))
    return result


def fuzz_soundness(trials: int, seed: int, schemas: Optional[Sequence[AxiomSchema]] = None) -> FuzzReport:
    """
    Check random instances of every schema for validity on random models.

    Args:
        trials: instances per schema
        seed: master seed; per-trial seeds derive from it
        schemas: the schemas to fuzz; defaults to all of them

    Returns:
        FuzzReport: per-schema failure counts and counterexamples
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    chosen = list(schemas) if schemas is not None else all_schemas()
    report = FuzzReport(seed=seed, trials=trials)
    for schema in chosen:
        result = fuzz_schema(schema, trials, seed)
        logger.debug(f"{schema.name}: {result.failures} failures in {trials} trials")
        report.results.append(result)
    logger.info(f"Fuzzed {len(chosen)} schemas, {report.failures} failures")
    return report
