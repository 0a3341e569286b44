"""Exact Gaussian elimination over Fraction.

Pivot selection is "first nonzero entry": with exact arithmetic there is no
conditioning to manage, only zero tests.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

__all__ = [
    "SingularSystemError",
    "InconsistentSystemError",
    "solve_unique",
    "solve_any",
]


class SingularSystemError(ValueError):
    """The system does not determine every unknown (rank deficiency)."""


class InconsistentSystemError(ValueError):
    """The system has no solution."""


def _eliminate(matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]):
    """Row-reduce the augmented system; returns (rows, pivot_cols, consistent)."""
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    aug = [[Fraction(x) for x in matrix[r]] + [Fraction(rhs[r])] for r in range(m)]
    pivot_cols: list[int] = []
    row = 0
    for col in range(n):
        pivot = next((r for r in range(row, m) if aug[r][col] != 0), None)
        if pivot is None:
            continue
        aug[row], aug[pivot] = aug[pivot], aug[row]
        p = aug[row][col]
        for r in range(m):
            if r != row and aug[r][col] != 0:
                factor = aug[r][col] / p
                for c in range(col, n + 1):
                    aug[r][c] -= factor * aug[row][c]
        pivot_cols.append(col)
        row += 1
    consistent = all(aug[r][n] == 0 for r in range(row, m))
    return aug, pivot_cols, consistent


def _read_solution(aug, pivot_cols, n) -> list[Fraction]:
    # free variables (if any) are set to 0
    solution = [Fraction(0)] * n
    for i, col in enumerate(pivot_cols):
        solution[col] = aug[i][n] / aug[i][col]
    return solution


def solve_unique(matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> list[Fraction]:
    """Solve an m x n system that must have exactly one solution.

    Raises InconsistentSystemError when no solution exists and
    SingularSystemError when the solution is not unique.
    """
    n = len(matrix[0]) if matrix else 0
    aug, pivot_cols, consistent = _eliminate(matrix, rhs)
    if not consistent:
        raise InconsistentSystemError("system has no exact solution")
    if len(pivot_cols) < n:
        raise SingularSystemError(
            f"system determines only {len(pivot_cols)} of {n} unknowns"
        )
    return _read_solution(aug, pivot_cols, n)


def solve_any(matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> list[Fraction] | None:
    """One exact solution with free variables set to 0, or None if inconsistent."""
    n = len(matrix[0]) if matrix else 0
    aug, pivot_cols, consistent = _eliminate(matrix, rhs)
    if not consistent:
        return None
    return _read_solution(aug, pivot_cols, n)
