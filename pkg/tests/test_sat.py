"""Tests for bounded satisfiability."""

import itertools
import random
from fractions import Fraction

import pytest

from axioms import Signature, all_schemas
from axioms.generators import random_model, random_static_formula
from linarith import fm_feasible
from logic import Budget, Ineq, Not, Prop, parse_formula
from semantics import evaluate, extension
from solvers import SatStatus, build_I, inequality_atoms, sat_bounded, sat_static, search_prestructure
from solvers import satisfiability
from solvers.satisfiability import (
    budget_variable, cost_classes, feasible_rows, partition_frames, restricted_growth_strings,
)

p = Prop("p")
STATIC_SCHEMAS = [schema for schema in all_schemas() if schema.static and not schema.requires_awareness]


class TestVerdicts:
    """Test cases for SAT, UNSAT and UNSUPPORTED verdicts."""

    def test_knowledge_contradiction(self):
        """Test that K_i p & ~p has no model."""
        result = sat_bounded(parse_formula("K{i} p & ~p"), 2)
        assert result.status is SatStatus.UNSAT_UP_TO
        assert result.max_states == 2
        assert result.theoretical_bound == f"2^{result.closure_size}"

    def test_negative_budget(self):
        """Test that budgets cannot be negative."""
        assert sat_bounded(parse_formula("(b[i] < 0)"), 2).status is SatStatus.UNSAT_UP_TO

    def test_similar_costs_agree(self):
        """Test that c_i(p) and c_i(~p) cannot differ."""
        formula = parse_formula("(c[i](p) >= 5) & (c[i](~p) < 5)")
        assert sat_bounded(formula, 2).status is SatStatus.UNSAT_UP_TO

    def test_tautology_is_free(self):
        """Test that c_i(true) > 0 has no model."""
        assert sat_bounded(parse_formula("(c[i](p | ~p) > 0)"), 1).status is SatStatus.UNSAT_UP_TO

    def test_budget_window(self):
        """Test a one-state witness whose budget lies in [3, 5)."""
        result = sat_bounded(parse_formula("(b[i] >= 3) & K{i} (b[i] < 5)"), 1)
        assert result.is_sat
        budget = result.witness.budget("i", result.state)
        assert Fraction(3) <= budget < Fraction(5)

    def test_query_formula(self):
        """Test that a query box is translated and its witness verified."""
        formula = parse_formula("[? i : p] K{i} p")
        result = sat_bounded(formula, 2)
        assert result.is_sat
        assert evaluate(result.witness, result.state, formula)

    def test_affordable_query_witness(self):
        """Test a witness where the query is paid and its answer known."""
        formula = parse_formula("(c[i](p) >= 2) & (b[i] - c[i](p) >= 0) & [? i : p] (K{i} p & (b[i] < 1))")
        result = sat_bounded(formula, 2)
        assert result.is_sat
        assert evaluate(result.witness, result.state, formula)

    def test_common_knowledge_under_query(self):
        """Test that the unsupported fragment is reported, not searched."""
        result = sat_bounded(parse_formula("[? n,m : p] C{n,m} p"))
        assert result.status is SatStatus.UNSUPPORTED
        assert result.reason == "common knowledge under query"

    def test_common_knowledge_static(self):
        """Test a satisfiable formula with common knowledge and two agents."""
        formula = parse_formula("C{a,b} p & ~K{a} q & K{b} q")
        result = sat_static(formula, 2)
        assert result.is_sat
        assert evaluate(result.witness, result.state, formula)

    def test_static_rejects_queries(self):
        """Test that sat_static needs a query-free formula."""
        with pytest.raises(ValueError):
            sat_static(parse_formula("[? i : p] q"), 1)

    def test_bound_must_be_positive(self):
        """Test that at least one state is searched."""
        with pytest.raises(ValueError):
            sat_bounded(p, 0)

    @pytest.mark.parametrize("text", [
        "K{i} p -> p",
        "(b[i] >= 0)",
        "C{i,j} p -> K{j} p",
        "~K{i} p -> K{i} ~K{i} p",
        "(c[i](true) = 0)",
        "(c[i](p & q) = c[i](~(p & q)))",
    ])
    def test_valid_formulas_have_unsatisfiable_negation(self, text):
        """Test that the negations of valid static formulas have no model with two states."""
        assert sat_static(Not(parse_formula(text)), 2).status is SatStatus.UNSAT_UP_TO

    @pytest.mark.parametrize("schema", STATIC_SCHEMAS, ids=lambda schema: schema.name)
    def test_static_schema_negations_unsatisfiable(self, schema):
        """Test that negated instances of every static schema have no model with two states."""
        rng = random.Random(f"negation:{schema.name}")
        signature = Signature(("a", "b")[:max(1, schema.min_agents)], ("p",))
        checked = 0
        for _ in range(50):
            instance = schema.instantiate(rng, signature)
            if len(inequality_atoms(instance)) > 4:
                continue
            assert sat_static(Not(instance), 2).status is SatStatus.UNSAT_UP_TO
            checked += 1
            if checked == 3:
                break
        assert checked > 0


class TestLinearSystems:
    """Test cases for the per-state linear system."""

    def test_true_atom(self):
        """Test that a true atom is imposed as written."""
        atom = Ineq(((1, Budget("i")),), 3)
        system = build_I("w1", {atom: True}, atom)
        assert system.satisfied_by({budget_variable("i", "w1"): Fraction(3)})
        assert not system.satisfied_by({budget_variable("i", "w1"): Fraction(2)})

    def test_false_atom_is_strict(self):
        """Test that a false atom becomes a strict inequality."""
        atom = Ineq(((1, Budget("i")),), 3)
        system = build_I("w1", {atom: False}, atom)
        assert not system.satisfied_by({budget_variable("i", "w1"): Fraction(3)})
        assert system.satisfied_by({budget_variable("i", "w1"): Fraction(5, 2)})

    def test_sign_constraints(self):
        """Test that budgets may not go below zero."""
        atom = Ineq(((1, Budget("i")),), -3)
        system = build_I("w1", {atom: True}, atom)
        assert not system.satisfied_by({budget_variable("i", "w1"): Fraction(-1)})

    def test_similar_costs_share_a_variable(self):
        """Test that c_i(p) and c_i(~p) use one variable."""
        formula = parse_formula("(c[i](p) >= 5) & (c[i](~p) >= 5)")
        assert len(cost_classes(formula)) == 1
        system = build_I("w1", {atom: True for atom in inequality_atoms(formula)}, formula)
        assert len([name for name in system.variables if name.startswith("c:")]) == 1

    def test_every_agent_gets_sign_facts(self):
        """Test sign facts for agents that only occur in modalities."""
        formula = parse_formula("K{j} (c[i](p) >= 1)")
        system = build_I("w1", {atom: True for atom in inequality_atoms(formula)}, formula)
        assert budget_variable("j", "w1") in system.variables
        assert any(name.startswith("c:j:") for name in system.variables)


class TestFeasibleRows:
    """Test cases for the realisable atom assignments."""

    def test_matches_full_enumeration(self):
        """Test the same rows, in the same order, as filtering every assignment."""
        formula = parse_formula("(b[i] >= 3) & (b[i] < 5) & (c[i](p) >= 1) & (b[i] - c[i](p) >= 0)")
        atoms = inequality_atoms(formula)
        expected = [
            row for row in itertools.product((True, False), repeat=len(atoms))
            if fm_feasible(build_I("w", dict(zip(atoms, row)), formula)).feasible
        ]
        assert feasible_rows(formula, atoms) == expected
        assert 0 < len(expected) < 2 ** len(atoms)

    def test_infeasible_prefixes_are_cut(self, monkeypatch):
        """Test that a false sign atom stops the search below it."""
        formula = parse_formula("(b[i] >= 0) & (b[j] >= 0) & (c[i](p) >= 0) & (c[j](q) >= 0)")
        atoms = inequality_atoms(formula)
        calls = []

        def counting(system):
            calls.append(system)
            return fm_feasible(system)

        monkeypatch.setattr(satisfiability, "fm_feasible", counting)
        assert feasible_rows(formula, atoms) == [(True,) * len(atoms)]
        assert len(calls) == 2 * len(atoms) + 1


class TestSearch:
    """Test cases for pre-structure enumeration and agreement with random models."""

    def test_partition_counts(self):
        """Test the Bell numbers 1, 2, 5, 15."""
        assert [len(list(restricted_growth_strings(n))) for n in range(1, 5)] == [1, 2, 5, 15]

    def test_frames_up_to_renaming(self):
        """Test that one agent over two states has two partitions up to renaming."""
        frames = list(partition_frames(["i"], 2))
        assert [rows for rows, _ in frames] == [((0, 0),), ((0, 1),)]

    def test_designated_state_satisfies(self):
        """Test that the designated state of a pre-structure is where the formula holds."""
        formula = parse_formula("p & M{i} ~p")
        found = search_prestructure(formula, 2)
        assert found is not None
        assert len(found.states) == 2
        assert "p" in found.valuation[found.designated]

    def test_agrees_with_random_models(self):
        """Test that every formula true somewhere in a small random model is found satisfiable."""
        rng = random.Random(61)
        props = ("p", "q")
        checked = 0
        while checked < 60:
            model = random_model(rng, max_states=2, max_agents=2, props=props)
            formula = random_static_formula(rng, model.agents, props, depth=2)
            if not extension(model, formula):
                continue
            checked += 1
            result = sat_static(formula, 2)
            assert result.is_sat
            assert evaluate(result.witness, result.state, formula)

    def test_unsat_means_no_small_model(self):
        """Test that an UNSAT verdict is never contradicted by a random model."""
        rng = random.Random(67)
        props = ("p", "q")
        for _ in range(60):
            formula = random_static_formula(rng, ("a",), props, depth=2)
            result = sat_static(formula, 2)
            if result.is_sat:
                continue
            for _ in range(5):
                model = random_model(rng, max_states=2, max_agents=1, props=props)
                assert not extension(model, formula)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
