"""Tests for the axiom schemas and the soundness fuzzer."""

import random

import pytest

from axioms import (
    BudgetAwarenessSchema, InequalityReductionSchema, MemberKnowledgeSchema, Signature, TautologyCostSchema,
    all_schemas, random_model,
)
from config.settings import settings
from logic import Budget, Know, equals, has_query, implies
from semantics import Model, is_valid_on
from solvers import FuzzReport, SchemaResult, fuzz_schema, fuzz_soundness

FAST_TRIALS = 25


class TestSchemas:
    """Test cases for individual schemas."""

    def test_names_are_unique(self):
        """Test that every schema has its own name."""
        names = [schema.name for schema in all_schemas()]
        assert len(names) == len(set(names)) == 24

    @pytest.mark.parametrize("schema", all_schemas(), ids=lambda schema: schema.name)
    def test_schema_is_sound(self, schema):
        """Test random instances of every schema on random models."""
        result = fuzz_schema(schema, FAST_TRIALS, seed=7)
        assert result.failures == 0, result.counterexamples[:1]

    @pytest.mark.parametrize("schema", all_schemas(), ids=lambda schema: schema.name)
    def test_static_flag(self, schema):
        """Test that static schemas produce query-free instances."""
        rng = random.Random(3)
        instance = schema.instantiate(rng, Signature(("a", "b", "c")))
        if schema.static:
            assert not has_query(instance)
        else:
            assert has_query(instance)

    def test_tautology_cost(self):
        """Test c_i(true) = 0 on 200 random models."""
        result = fuzz_schema(TautologyCostSchema(), 200, seed=11)
        assert result.ok

    def test_inequality_reduction(self):
        """Test the substituted atom schema on 200 random models."""
        assert fuzz_schema(InequalityReductionSchema(), 200, seed=13).ok

    def test_member_knowledge_on_telescope(self, telescope):
        """Test member knowledge instances at every telescope state."""
        schema = MemberKnowledgeSchema()
        rng = random.Random(17)
        for _ in range(30):
            assert is_valid_on(telescope, schema.instantiate(rng, Signature.of(telescope, ("p",))))

    def test_awareness_needs_aware_models(self):
        """Test that budget awareness fails where an agent cannot see its own budget."""
        model = Model.build(
            ["w1", "w2"], ["i"], {"i": [["w1", "w2"]]},
            budgets={"i": {"w1": 1, "w2": 2}},
        )
        fact = equals([(2, Budget("i"))], 2)
        schema = BudgetAwarenessSchema()
        assert not schema.applies_to(model)
        assert not is_valid_on(model, implies(fact, Know("i", fact)))

    def test_aware_models_are_generated(self):
        """Test that the generator honours the awareness flag."""
        rng = random.Random(19)
        for _ in range(50):
            assert random_model(rng, aware=True).is_resource_aware()


class TestFuzzReport:
    """Test cases for the fuzz driver and its report."""

    def test_report_lines(self):
        """Test one name, trials, failures line per schema."""
        report = FuzzReport(seed=1, trials=3, results=[
            SchemaResult(name="T", trials=3),
            SchemaResult(name="I3", trials=3, failures=1),
        ])
        assert report.lines() == ["T 3 0", "I3 3 1"]
        assert not report.ok
        assert report.failures == 1

    def test_selected_schemas(self):
        """Test fuzzing a chosen subset."""
        schemas = [schema for schema in all_schemas() if schema.name in {"c-top", "I3", "r_K2"}]
        report = fuzz_soundness(10, 5, schemas)
        assert [result.name for result in report.results] == ["I3", "c-top", "r_K2"]
        assert report.ok
        assert all(result.trials == 10 for result in report.results)

    def test_seed_fixes_outcome(self):
        """Test that the same seed draws the same instances."""
        schema = all_schemas()[0]
        first = fuzz_schema(schema, 5, seed=99)
        second = fuzz_schema(schema, 5, seed=99)
        assert first == second

    def test_configured_run_is_sound(self):
        """Test every schema with the configured trial count and seed."""
        report = fuzz_soundness(settings.fuzz_trials, settings.fuzz_seed)
        assert report.ok, report.lines()
        assert len(report.results) == 24

    def test_rejects_zero_trials(self):
        """Test that at least one trial is required."""
        with pytest.raises(ValueError):
            fuzz_soundness(0, 1)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
