"""Tests for the formula grammar, desugaring and the round-trip printer."""

import random

import pytest

from axioms.generators import random_formula
from logic import (
    And, Budget, Common, Cost, Ineq, Know, Not, ParseError, Prop, PropositionalPositionError, Query,
    desugar, diamond, iff, implies, parse_formula, parse_group, possible, print_formula,
)
from logic.parser import parse_surface

p, q, r = Prop("p"), Prop("q"), Prop("r")


class TestParseFormula:
    """Test cases for parsing into the core constructors."""

    def test_knowledge_of_budget(self):
        """Test K{n} (b[m] >= 10)."""
        assert parse_formula("K{n} (b[m] >= 10)") == Know("n", Ineq(((1, Budget("m")),), 10))

    def test_query_over_common_knowledge(self):
        """Test [? n,m : p] C{n,m} p."""
        expected = Query(("m", "n"), p, Common(("m", "n"), p))
        assert parse_formula("[? n,m : p] C{n,m} p") == expected

    def test_equality_atom(self):
        """Test that an equation becomes two >= atoms."""
        expected = And(
            Ineq(((2, Budget("j")), (-1, Budget("i"))), 0),
            Ineq(((-2, Budget("j")), (1, Budget("i"))), 0),
        )
        assert parse_formula("(2*b[j] = b[i])") == expected

    def test_rational_bound_is_cleared(self):
        """Test that t >= 1/2 becomes 2t >= 1."""
        assert parse_formula("(b[i] >= 1/2)") == Ineq(((2, Budget("i")),), 1)

    def test_strict_comparison(self):
        """Test that b < 3 is the negation of b >= 3."""
        assert parse_formula("(b[i] < 3)") == Not(Ineq(((1, Budget("i")),), 3))

    def test_less_or_equal(self):
        """Test that t <= z flips the signs."""
        assert parse_formula("(b[i] <= 3)") == Ineq(((-1, Budget("i")),), -3)

    def test_cost_term(self):
        """Test a cost term with a propositional argument."""
        expected = Ineq(((1, Cost("i", And(p, q))), (-1, Budget("j"))), 0)
        assert parse_formula("(c[i](p & q) >= b[j])") == expected

    def test_everybody_knows(self):
        """Test that E{n,m} p is K_m p & K_n p."""
        assert parse_formula("E{n,m} p") == And(Know("m", p), Know("n", p))

    def test_derived_operators(self):
        """Test M{}, the diamond query, <-> and right-associative ->."""
        assert parse_formula("M{n} p") == possible("n", p)
        assert parse_formula("<? n : p> q") == diamond(("n",), p, q)
        assert parse_formula("p <-> q") == iff(p, q)
        assert parse_formula("p -> q -> r") == implies(p, implies(q, r))

    def test_binding_order(self):
        """Test that & binds tighter than | and unary operators tighter than &."""
        assert parse_formula("K{n} p & q") == And(Know("n", p), q)
        assert parse_formula("~p & q") == And(Not(p), q)
        assert parse_formula("p | q & r") == parse_formula("p | (q & r)")

    def test_surface_keeps_sugar(self):
        """Test that surface parsing leaves abbreviations for desugar."""
        surface = parse_surface("p | q")
        assert desugar(surface) == parse_formula("p | q")


class TestParseErrors:
    """Test cases for rejected input."""

    def test_syntax_error_location(self):
        """Test that a stray operator is reported at its offset."""
        with pytest.raises(ParseError) as info:
            parse_formula("p & & q")
        assert info.value.offset == 4
        assert (info.value.line, info.value.column) == (1, 5)

    def test_error_on_second_line(self):
        """Test line and column counting across newlines."""
        with pytest.raises(ParseError) as info:
            parse_formula("p &\n& q")
        assert (info.value.line, info.value.column) == (2, 1)

    def test_modal_question(self):
        """Test that a modal question is a typed error."""
        with pytest.raises(PropositionalPositionError):
            parse_formula("[? n : K{n} p] q")

    def test_modal_cost_argument(self):
        """Test that a modal cost argument is a typed error."""
        with pytest.raises(PropositionalPositionError):
            parse_formula("(c[i](K{i} p) >= 1)")

    def test_constant_comparison(self):
        """Test that a comparison between numbers alone is refused."""
        with pytest.raises(ParseError):
            parse_formula("(1 >= 2)")

    def test_empty_input(self):
        """Test that empty text is a syntax error."""
        with pytest.raises(ParseError):
            parse_formula("")


class TestPrintFormula:
    """Test cases for printing and round trips."""

    def test_knowledge(self):
        """Test K_n p."""
        assert print_formula(Know("n", p)) == "K{n} p"

    def test_negated_atom(self):
        """Test the negation of a budget atom."""
        assert print_formula(Not(Ineq(((1, Budget("i")),), 3))) == "~(b[i] >= 3)"

    def test_query_text(self):
        """Test that a query prints in bracket syntax."""
        assert print_formula(Query(("m", "n"), p, Common(("m", "n"), p))) == "[? m,n : p] C{m,n} p"

    def test_random_round_trips(self):
        """Test parse(print(phi)) == phi on 1000 random formulas."""
        rng = random.Random(1)
        for _ in range(1000):
            formula = random_formula(rng, ("a", "b", "c"), depth=6, max_queries=3)
            assert parse_formula(print_formula(formula)) == formula


class TestParseGroup:
    """Test cases for agent lists."""

    def test_sorted_unique(self):
        """Test that groups are sorted and deduplicated."""
        assert parse_group("n, m,n") == ("m", "n")

    def test_empty(self):
        """Test that an empty list is refused."""
        with pytest.raises(ValueError):
            parse_group(" , ")


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
