"""Tests for exact rationals and Fourier-Motzkin feasibility."""

import itertools
import random
from fractions import Fraction

import pytest

from linarith import (
    LinConstraint, LinSystem, Relation, fm_feasible, format_rational, rational_div, rational_min, to_rational,
)


def _system(*constraints):
    return LinSystem.of(LinConstraint.build(dict(coefficients), relation, bound)
                        for coefficients, relation, bound in constraints)


def _random_constraint(rng, names, point=None):
    coefficients = {name: Fraction(rng.randint(-3, 3)) for name in rng.sample(names, rng.randint(1, len(names)))}
    relation = rng.choice(list(Relation))
    if point is None:
        return LinConstraint.build(coefficients, relation, rng.randint(-5, 5))
    value = sum((coefficients[name] * point[name] for name in coefficients), Fraction(0))
    if relation is Relation.EQ:
        bound = value
    elif relation is Relation.GE:
        bound = value - rng.randint(0, 3)
    else:
        bound = value - rng.randint(1, 3)
    return LinConstraint.build(coefficients, relation, bound)


class TestRationals:
    """Test cases for the rational helpers."""

    def test_exact_sum(self):
        """Test that 1/2 + 1/3 is exactly 5/6."""
        assert to_rational("1/2") + to_rational("1/3") == Fraction(5, 6)

    def test_minimum_cost(self):
        """Test the minimum over the telescope costs."""
        assert rational_min([Fraction(30), Fraction(20), Fraction(30)]) == 20

    def test_share_subtraction(self):
        """Test the budget left after paying half of 20."""
        assert Fraction(15) - rational_div(Fraction(20), 2) == 5

    def test_reduced_form(self):
        """Test that parsed rationals are stored reduced with a positive denominator."""
        value = to_rational("-6/4")
        assert (value.numerator, value.denominator) == (-3, 2)
        assert format_rational(to_rational("0/7")) == "0"

    def test_rejects_floats_and_bad_text(self):
        """Test that floats, booleans and malformed strings are refused."""
        for bad in (0.5, True, "1.5", "1/0", "x"):
            with pytest.raises(ValueError):
                to_rational(bad)

    def test_division_by_zero(self):
        """Test that exact division by zero raises."""
        with pytest.raises(ZeroDivisionError):
            rational_div(Fraction(1), 0)


class TestFourierMotzkin:
    """Test cases for feasibility and witnesses."""

    def test_contradictory_bounds(self):
        """Test that x >= 0 and -x >= 1 is infeasible."""
        result = fm_feasible(_system(({"x": 1}, Relation.GE, 0), ({"x": -1}, Relation.GE, 1)))
        assert not result.feasible
        assert result.witness is None

    def test_equality_with_witness(self):
        """Test x = 0, 2x + 3y >= 6 yields a witness with y >= 2."""
        system = _system(({"x": 1}, Relation.EQ, 0), ({"x": 2, "y": 3}, Relation.GE, 6))
        result = fm_feasible(system)
        assert result.feasible
        assert result.witness["x"] == 0
        assert result.witness["y"] >= 2
        assert system.satisfied_by(result.witness)

    def test_strict_interval(self):
        """Test that a strict open interval gets an interior witness."""
        system = _system(({"x": 1}, Relation.GT, 3), ({"x": -1}, Relation.GT, -4))
        result = fm_feasible(system)
        assert result.feasible
        assert 3 < result.witness["x"] < 4

    def test_strict_empty_interval(self):
        """Test that x > 3 and x < 3 cannot both hold."""
        system = _system(({"x": 1}, Relation.GT, 3), ({"x": -1}, Relation.GE, -3))
        assert not fm_feasible(system).feasible

    def test_ground_constraints(self):
        """Test that constraints whose coefficients cancel are judged on their bound."""
        assert fm_feasible(_system(({"x": 0}, Relation.GE, 0))).feasible
        assert not fm_feasible(_system(({"x": 0}, Relation.GT, 0))).feasible

    def test_extra_variables_are_assigned(self):
        """Test that the witness covers variables listed only as extras."""
        system = LinSystem.of([LinConstraint.build({"x": 1}, Relation.GE, 1)], ["unused"])
        result = fm_feasible(system)
        assert set(result.witness) == {"x", "unused"}

    def test_planted_systems(self):
        """Test 1000 systems made true at a planted point are feasible with exact witnesses."""
        rng = random.Random(5)
        for _ in range(1000):
            names = [f"x{k}" for k in range(rng.randint(1, 5))]
            point = {name: Fraction(rng.randint(-8, 8), rng.randint(1, 3)) for name in names}
            system = LinSystem.of(_random_constraint(rng, names, point) for _ in range(rng.randint(1, 6)))
            result = fm_feasible(system)
            assert result.feasible
            assert system.satisfied_by(result.witness)

    def test_grid_oracle(self):
        """Test agreement with a grid search over [-10, 10]^3 on 200 systems in up to three variables."""
        rng = random.Random(11)
        axis = [Fraction(k) for k in range(-10, 11, 2)]
        verdicts = set()
        for _ in range(200):
            names = [f"x{k}" for k in range(rng.randint(1, 3))]
            system = LinSystem.of(_random_constraint(rng, names) for _ in range(rng.randint(1, 4)))
            result = fm_feasible(system)
            verdicts.add((len(names), result.feasible))
            if result.feasible:
                assert system.satisfied_by(result.witness)
            found = any(
                system.satisfied_by(dict(zip(names, values)))
                for values in itertools.product(axis, repeat=len(names))
            )
            if found:
                assert result.feasible
        assert (3, True) in verdicts

    def test_scaling_keeps_verdict(self):
        """Test that scaling a constraint by a positive rational keeps the verdict."""
        rng = random.Random(3)
        for _ in range(100):
            names = ["x", "y"]
            constraints = [_random_constraint(rng, names) for _ in range(3)]
            scaled = [constraint.scaled(Fraction(rng.randint(1, 5), rng.randint(1, 5))) for constraint in constraints]
            assert fm_feasible(LinSystem.of(constraints)).feasible == fm_feasible(LinSystem.of(scaled)).feasible


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
