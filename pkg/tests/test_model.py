"""Tests for models, model documents, the update and the reference evaluator."""

import json
import random
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import pytest

from axioms.generators import random_formula, random_group, random_model, random_prop
from logic import (
    TOP, And, Budget, Common, Cost, EmptyModelError, Ineq, Know, ModelValidationError, Not, Prop, Query,
    UnknownAgentError, UnknownStateError, bcs_formula, class_key, disjoin, everybody, implies,
    parse_formula,
)
from semantics import (
    Model, bcs_holds, dump_model, dump_model_file, eval_prop, evaluate, extension, load_model,
    load_model_file, query_share, reach_group, term_value, update,
)

p, q = Prop("p"), Prop("q")

INVALID_FIXTURES = [
    ("overlapping_classes.json", "not a partition"),
    ("missing_state.json", "missing w2"),
    ("negative_cost.json", "negative cost"),
    ("negative_budget.json", "negative budget"),
    ("tautology_cost.json", "tautology-class cost nonzero"),
    ("similar_cost_conflict.json", "similarity-class conflict"),
    ("unknown_agent.json", "unknown agent"),
    ("unknown_state.json", "unknown state"),
]


@pytest.fixture
def updated(telescope):
    """The telescope model after n and m ask p."""
    return update(telescope, ("n", "m"), p)


class TestModel:
    """Test cases for model accessors."""

    def test_telescope_shape(self, telescope):
        """Test state, agent and partition layout."""
        assert telescope.states == ("w1", "w2", "w3", "w4")
        assert telescope.agents == ("l", "m", "n")
        assert telescope.partition("l") == [["w1", "w2", "w3", "w4"]]
        assert telescope.partition("m") == [["w1", "w2"], ["w3", "w4"]]

    def test_size(self, telescope):
        """Test |M| of the telescope model."""
        assert telescope.size() == 50

    def test_true_props(self, telescope):
        """Test P(w) at a p-state and a non-p-state."""
        assert telescope.true_props("w1") == {"p"}
        assert telescope.true_props("w2") == frozenset()

    def test_positive_cost_classes(self, telescope):
        """Test that only the class of p is priced."""
        assert telescope.positive_cost_classes("m", "w1") == {class_key(p)}

    def test_unknown_names(self, telescope):
        """Test errors for unknown states and agents."""
        with pytest.raises(UnknownStateError):
            telescope.index("w9")
        with pytest.raises(UnknownAgentError):
            telescope.budget("z", "w1")

    def test_resource_awareness(self, telescope, fixtures_dir):
        """Test that the telescope is aware but a model whose costs change inside a class is not."""
        assert telescope.is_resource_aware()
        assert not load_model_file(fixtures_dir / "chain.json").is_resource_aware()

    def test_build_rejects_negative_budget(self):
        """Test that construction validates budgets."""
        with pytest.raises(ModelValidationError):
            Model.build(["w"], ["i"], {"i": [["w"]]}, budgets={"i": {"w": Fraction(-1)}})


class TestStaticSemantics:
    """Test cases for propositional truth, terms and the budget constraint."""

    def test_eval_prop(self, telescope):
        """Test p at w1, ~p at w2 and excluded middle everywhere."""
        assert eval_prop(telescope, "w1", p)
        assert eval_prop(telescope, "w2", Not(p))
        for state in telescope.states:
            assert eval_prop(telescope, state, disjoin([p, Not(p)]))

    def test_unknown_variable_is_false(self, telescope):
        """Test that variables outside the valuation are false."""
        assert not eval_prop(telescope, "w1", Prop("zzz"))

    def test_term_values(self, telescope):
        """Test budgets and a cost looked up through its class."""
        assert term_value(telescope, "w1", Budget("n")) == 15
        assert term_value(telescope, "w3", Budget("m")) == 9
        assert term_value(telescope, "w1", Cost("m", And(p, p))) == 20
        assert term_value(telescope, "w1", Cost("m", Not(p))) == 20

    def test_bcs(self, telescope):
        """Test the budget constraint at w1 and w3 and for n alone."""
        assert query_share(telescope, "w1", ("n", "m"), p) == 10
        assert bcs_holds(telescope, "w1", ("n", "m"), p)
        assert not bcs_holds(telescope, "w3", ("n", "m"), p)
        assert not bcs_holds(telescope, "w1", ("n",), p)

    def test_bcs_formula_agrees(self):
        """Test that the budget constraint formula evaluates like the direct check on random models."""
        rng = random.Random(17)
        for _ in range(200):
            model = random_model(rng)
            group = random_group(rng, model.agents)
            question = random_prop(rng)
            formula = bcs_formula(group, question)
            for state in model.states:
                assert evaluate(model, state, formula) == bcs_holds(model, state, group, question)


class TestUpdate:
    """Test cases for the query update."""

    def test_telescope_update(self, updated):
        """Test survivors, relations and budgets after n and m ask p."""
        assert updated.states == ("w1", "w2")
        assert updated.partition("n") == [["w1"], ["w2"]]
        assert updated.partition("m") == [["w1"], ["w2"]]
        assert updated.partition("l") == [["w1", "w2"]]
        assert updated.budget("n", "w1") == 5
        assert updated.budget("m", "w1") == 0
        assert updated.budget("l", "w1") == 5
        assert updated.cost("n", "w1", p) == 30

    def test_free_tautology_question(self, telescope):
        """Test that asking true at no cost changes nothing."""
        assert update(telescope, ("l",), TOP) == telescope

    def test_second_update_empties(self, updated):
        """Test that m cannot pay for the same query twice."""
        assert update(updated, ("n", "m"), p).is_empty

    def test_reachability(self, telescope, updated):
        """Test reach for l, for n, and for n,m after the update."""
        assert reach_group(telescope, ("l",), "w1") == {"w1", "w2", "w3", "w4"}
        assert reach_group(telescope, ("n",), "w1") == {"w1", "w2"}
        assert reach_group(updated, ("n", "m"), "w1") == {"w1"}

    def test_update_safety(self):
        """Test survivors, non-negative budgets and untouched outsiders on random models."""
        rng = random.Random(23)
        for _ in range(200):
            model = random_model(rng)
            group = random_group(rng, model.agents)
            question = random_prop(rng)
            after = update(model, group, question)
            assert set(after.states) <= set(model.states)
            for state in after.states:
                assert bcs_holds(model, state, group, question)
                for agent in model.agents:
                    assert after.budget(agent, state) >= 0
                    if agent not in group:
                        assert after.budget(agent, state) == model.budget(agent, state)
                    assert after.costs[agent][after.index(state)] == model.costs[agent][model.index(state)]
                    block = after.block_of(agent, state)
                    assert block <= model.block_of(agent, state)

    def test_update_memoised_by_value(self, telescope, telescope_path):
        """Test that equal models share the updated model and are left as they were."""
        twin = load_model_file(telescope_path)
        assert twin is not telescope
        after = update(twin, ("m", "n"), p)
        assert update(telescope, ("n", "m"), p) is after
        assert twin == telescope
        assert twin.index("w4") == 3

    def test_concurrent_updates(self, telescope):
        """Test that updates and reachability from many threads agree with serial calls."""
        jobs = [(group, question) for group in (("n", "m"), ("l",), ("n",)) for question in (p, Not(p), TOP)] * 8

        def run(job):
            group, question = job
            return update(telescope, group, question), reach_group(telescope, group, "w1")

        with ThreadPoolExecutor(max_workers=8) as pool:
            results = list(pool.map(run, jobs))
        for (group, question), (after, reach) in zip(jobs, results):
            assert after == update(telescope, group, question)
            assert reach == reach_group(telescope, group, "w1")
        assert results[0][0].states == ("w1", "w2")


class TestModelDocuments:
    """Test cases for loading and dumping model documents."""

    def test_telescope_round_trip(self, telescope):
        """Test load(dump(M)) == M for the telescope."""
        assert load_model(dump_model(telescope)) == telescope

    def test_updated_round_trip(self, updated):
        """Test the round trip on the updated telescope."""
        assert load_model(dump_model(updated)) == updated

    def test_single_state_round_trip(self):
        """Test the round trip on a one-state model without agents."""
        model = Model.build(["w"], [], {})
        assert load_model(dump_model(model)) == model

    def test_per_state_values_round_trip(self, fixtures_dir):
        """Test that state-specific budgets and costs survive a round trip."""
        model = load_model_file(fixtures_dir / "chain.json")
        assert model.budget("a", "s3") == Fraction(1, 2)
        assert model.cost("b", "s3", parse_formula("q & p")) == 1
        assert load_model(dump_model(model)) == model

    def test_file_round_trip(self, telescope, tmp_path):
        """Test writing and reading a model file."""
        path = tmp_path / "model.json"
        dump_model_file(telescope, path)
        assert load_model_file(path) == telescope
        assert json.loads(path.read_text())["budgets"]["l"] == {"*": "5"}

    def test_empty_model_not_serialized(self, updated):
        """Test that an empty update result refuses to dump."""
        with pytest.raises(EmptyModelError):
            dump_model(update(updated, ("n", "m"), p))

    @pytest.mark.parametrize("name,message", INVALID_FIXTURES)
    def test_invalid_documents(self, fixtures_dir, name, message):
        """Test that every validation error is reported."""
        with pytest.raises(ModelValidationError) as info:
            load_model_file(fixtures_dir / name)
        assert any(message in error for error in info.value.errors)

    def test_schema_errors(self):
        """Test that structurally wrong documents are validation errors."""
        with pytest.raises(ModelValidationError):
            load_model({"agents": ["i"], "states": "w1"})


class TestEvaluator:
    """Test cases for the reference evaluator."""

    def test_common_knowledge_after_query(self, telescope):
        """Test that n and m commonly know p after asking at w1."""
        assert evaluate(telescope, "w1", parse_formula("[? n,m : p] C{n,m} p"))

    def test_outsider_knows_answer_is_common(self, telescope):
        """Test that l knows n and m share the answer."""
        assert evaluate(telescope, "w1", parse_formula("[? n,m : p] K{l} (C{n,m} p | C{n,m} ~p)"))

    def test_unaffordable_query_is_vacuous(self, telescope):
        """Test that a box over false holds when the query cannot be paid."""
        assert evaluate(telescope, "w1", parse_formula("[? l : p] false"))

    def test_extensions(self, telescope):
        """Test extensions of p, the budget constraint and true."""
        assert extension(telescope, p) == {"w1", "w3"}
        assert extension(telescope, bcs_formula(("n", "m"), p)) == {"w1", "w2"}
        assert extension(telescope, TOP) == set(telescope.states)

    def test_budget_knowledge(self, telescope):
        """Test that l knows m's budget is at least 9 everywhere."""
        assert extension(telescope, Know("l", Ineq(((1, Budget("m")),), 9))) == set(telescope.states)

    def test_query_uses_updated_budget(self, telescope):
        """Test that n's budget reads 5 after the query."""
        assert evaluate(telescope, "w1", Query(("m", "n"), p, parse_formula("(b[n] = 5)")))

    def test_common_knowledge_fixpoint(self):
        """Test C_G phi == E_G(phi & C_G phi) on random models."""
        rng = random.Random(29)
        for _ in range(100):
            model = random_model(rng)
            group = random_group(rng, model.agents)
            body = random_formula(rng, model.agents, depth=2, max_queries=1)
            common = Common(group, body)
            unfolded = everybody(group, And(body, common))
            assert extension(model, common) == extension(model, unfolded)

    def test_knowledge_is_s5(self):
        """Test instances of T, 4 and 5 at every state of random models."""
        rng = random.Random(31)
        for _ in range(100):
            model = random_model(rng)
            agent = rng.choice(model.agents)
            body = random_formula(rng, model.agents, depth=2, max_queries=1)
            known = Know(agent, body)
            for instance in (
                implies(known, body),
                implies(known, Know(agent, known)),
                implies(Not(known), Know(agent, Not(known))),
            ):
                assert extension(model, instance) == set(model.states)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
