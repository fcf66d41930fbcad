"""Exact feasibility of rational linear systems (phase-I simplex, Bland's rule)."""
from __future__ import annotations

import logging
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

LOGGER = logging.getLogger(__name__)

Number = Union[int, Fraction]
Coefficients = Union[Sequence[Number], Mapping[int, Number]]


class FeasibilityProblem:
    """Constraints over free rational variables x_0, ..., x_{n-1}.

    Each constraint is ``sum_j a_j x_j (= | >= | <=) b``. ``solve`` returns a
    feasible point or None; no objective is optimized.
    """

    def __init__(self, n_vars: int) -> None:
        self.n_vars = n_vars
        self._rows: List[Tuple[Dict[int, Fraction], str, Fraction]] = []

    def _normalize(self, coefficients: Coefficients) -> Dict[int, Fraction]:
        if isinstance(coefficients, Mapping):
            items = coefficients.items()
        else:
            if len(coefficients) != self.n_vars:
                raise ValueError(f"expected {self.n_vars} coefficients, got {len(coefficients)}")
            items = enumerate(coefficients)
        return {int(j): Fraction(a) for j, a in items if a}

    def add_equality(self, coefficients: Coefficients, rhs: Number = 0) -> None:
        self._rows.append((self._normalize(coefficients), "=", Fraction(rhs)))

    def add_lower_bound(self, coefficients: Coefficients, rhs: Number) -> None:
        self._rows.append((self._normalize(coefficients), ">=", Fraction(rhs)))

    def add_upper_bound(self, coefficients: Coefficients, rhs: Number) -> None:
        self._rows.append((self._normalize(coefficients), "<=", Fraction(rhs)))

    def __len__(self) -> int:
        return len(self._rows)

    def solve(self) -> Optional[Tuple[Fraction, ...]]:
        # Columns: x_j = p_j - q_j (p, q >= 0), then one slack per inequality,
        # then one artificial per row.
        n = self.n_vars
        slack_rows = [i for i, (_, kind, _) in enumerate(self._rows) if kind != "="]
        slack_col = {row: 2 * n + k for k, row in enumerate(slack_rows)}
        n_struct = 2 * n + len(slack_rows)
        m = len(self._rows)
        if m == 0:
            return tuple(Fraction(0) for _ in range(n))
        width = n_struct + m
        table: List[List[Fraction]] = []
        rhs: List[Fraction] = []
        for i, (coeffs, kind, b) in enumerate(self._rows):
            row = [Fraction(0)] * width
            for j, a in coeffs.items():
                row[j] = a
                row[n + j] = -a
            if kind == ">=":
                row[slack_col[i]] = Fraction(-1)
            elif kind == "<=":
                row[slack_col[i]] = Fraction(1)
            if b < 0:
                row = [-x for x in row]
                b = -b
            row[n_struct + i] = Fraction(1)
            table.append(row)
            rhs.append(b)
        basis = [n_struct + i for i in range(m)]
        cost = [Fraction(0)] * width
        for j in range(n_struct):
            cost[j] = -sum((table[i][j] for i in range(m)), Fraction(0))

        pivots = 0
        while True:
            entering = next((j for j in range(width) if cost[j] < 0), None)
            if entering is None:
                break
            leaving = None
            best = None
            for i in range(m):
                a = table[i][entering]
                if a > 0:
                    ratio = rhs[i] / a
                    if best is None or ratio < best or (ratio == best and basis[i] < basis[leaving]):
                        best = ratio
                        leaving = i
            if leaving is None:
                # phase I is bounded below by zero
                break
            self._pivot(table, rhs, cost, leaving, entering)
            basis[leaving] = entering
            pivots += 1
        value = sum((rhs[i] for i in range(m) if basis[i] >= n_struct), Fraction(0))
        LOGGER.debug("phase I: %d rows, %d columns, %d pivots", m, width, pivots)
        if value != 0:
            return None
        point = [Fraction(0)] * width
        for i, j in enumerate(basis):
            point[j] = rhs[i]
        return tuple(point[j] - point[n + j] for j in range(n))

    @staticmethod
    def _pivot(table: List[List[Fraction]], rhs: List[Fraction], cost: List[Fraction],
               p: int, q: int) -> None:
        scale = table[p][q]
        if scale != 1:
            table[p] = [x / scale for x in table[p]]
            rhs[p] /= scale
        pivot_row = table[p]
        nonzero = [j for j, x in enumerate(pivot_row) if x]
        for i, row in enumerate(table):
            factor = row[q]
            if i != p and factor:
                for j in nonzero:
                    row[j] -= factor * pivot_row[j]
                rhs[i] -= factor * rhs[p]
        factor = cost[q]
        if factor:
            for j in nonzero:
                cost[j] -= factor * pivot_row[j]


def find_point(equalities: Sequence[Tuple[Coefficients, Number]] = (),
               lower_bounds: Sequence[Tuple[Coefficients, Number]] = (),
               upper_bounds: Sequence[Tuple[Coefficients, Number]] = (),
               n_vars: int = 0) -> Optional[Tuple[Fraction, ...]]:
    """One-shot wrapper around :class:`FeasibilityProblem`."""
    problem = FeasibilityProblem(n_vars)
    for coeffs, b in equalities:
        problem.add_equality(coeffs, b)
    for coeffs, b in lower_bounds:
        problem.add_lower_bound(coeffs, b)
    for coeffs, b in upper_bounds:
        problem.add_upper_bound(coeffs, b)
    return problem.solve()
