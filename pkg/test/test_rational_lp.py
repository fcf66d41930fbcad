from fractions import Fraction

import pytest

from conftest import random_matrix
from fank.linalg.rational_lp import FeasibilityProblem, find_point


def _satisfies(point, equalities=(), lower=(), upper=()):
    def value(coeffs):
        items = coeffs.items() if isinstance(coeffs, dict) else enumerate(coeffs)
        return sum(Fraction(a) * point[j] for j, a in items)
    return (all(value(c) == b for c, b in equalities)
            and all(value(c) >= b for c, b in lower)
            and all(value(c) <= b for c, b in upper))


def test_feasible_point_is_exact():
    equalities = [([1, 1], 2)]
    lower = [([1, 0], Fraction(3, 2)), ([0, 1], Fraction(1, 4))]
    point = find_point(equalities, lower, n_vars=2)
    assert point is not None
    assert all(isinstance(x, Fraction) for x in point)
    assert _satisfies(point, equalities, lower)


def test_infeasible_returns_none():
    problem = FeasibilityProblem(1)
    problem.add_lower_bound([1], 1)
    problem.add_upper_bound([1], 0)
    assert problem.solve() is None


def test_free_variables_go_negative():
    problem = FeasibilityProblem(2)
    problem.add_upper_bound({0: 1}, -3)
    problem.add_equality({0: 1, 1: 1}, -5)
    x, y = problem.solve()
    assert x <= -3 and x + y == -5


def test_no_constraints():
    assert FeasibilityProblem(3).solve() == (0, 0, 0)


def test_wrong_coefficient_count():
    with pytest.raises(ValueError):
        FeasibilityProblem(2).add_equality([1, 2, 3], 0)


def test_random_systems_with_known_solution(rng):
    for _ in range(100):
        n = int(rng.integers(1, 5))
        witness = [Fraction(int(x), int(d)) for x, d in zip(rng.integers(-5, 6, size=n), rng.integers(1, 4, size=n))]
        rows = random_matrix(rng, int(rng.integers(1, 6)), n, 4)
        problem = FeasibilityProblem(n)
        lower = []
        for k, row in enumerate(rows):
            value = sum(a * w for a, w in zip(row, witness))
            if k % 2:
                problem.add_equality(row, value)
            else:
                problem.add_lower_bound(row, value - 1)
                lower.append((row, value - 1))
        point = problem.solve()
        assert point is not None
        equalities = [(row, sum(a * w for a, w in zip(row, witness))) for k, row in enumerate(rows) if k % 2]
        assert _satisfies(point, equalities, lower)
