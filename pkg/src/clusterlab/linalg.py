"""Dense exact linear algebra over the rationals (Fraction entries).

Small helper used for basis expansions, cluster-monomial recognition and
linear-independence checks.  Matrices are lists of lists of Fractions;
sizes are desk scale, so plain Gaussian elimination is plenty.
"""

from __future__ import annotations

from fractions import Fraction


def _echelon(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Row-reduce in place; returns (reduced rows, pivot column indices)."""
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][c]
        rows[r] = [x / inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                factor = rows[i][c]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def matrix_rank(matrix: list[list[Fraction]]) -> int:
    rows = [[Fraction(x) for x in row] for row in matrix]
    _, pivots = _echelon(rows)
    return len(pivots)


def solve_unique(
    matrix: list[list[Fraction]], rhs: list[Fraction]
) -> list[Fraction] | None:
    """Solve A x = b.  Returns the solution when it exists and is unique,
    None when inconsistent, and raises ValueError when underdetermined."""
    nrows = len(matrix)
    ncols = len(matrix[0]) if nrows else 0
    aug = [
        [Fraction(x) for x in row] + [Fraction(rhs[i])] for i, row in enumerate(matrix)
    ]
    if not aug:
        if ncols == 0:
            return []
        raise ValueError("underdetermined system")
    rows, pivots = _echelon(aug)
    pivots = [c for c in pivots if c < ncols]
    for row in rows:
        if all(x == 0 for x in row[:ncols]) and row[ncols] != 0:
            return None
    if len(pivots) < ncols:
        raise ValueError("underdetermined system")
    solution = [Fraction(0)] * ncols
    for r, c in enumerate(pivots):
        solution[c] = rows[r][ncols]
    return solution
