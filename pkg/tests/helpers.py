"""Independent oracles and small utilities shared by the test modules.

Everything here recomputes expected values by a different route than the
package: determinants by full permutation expansion, ranks by Gaussian
elimination over fractions.
"""
from __future__ import annotations

import random
from fractions import Fraction
from itertools import permutations

from wsections.poly import Polynomial, SymbolicMatrix


def det_permutation_expansion(matrix: SymbolicMatrix) -> Polynomial:
    """Sum over all permutations of signed entry products."""
    m = matrix.size
    total = Polynomial.zero()
    for perm in permutations(range(m)):
        sign = _perm_sign(perm)
        product = Polynomial.const(sign)
        for r in range(m):
            cell = matrix.rows[r][perm[r]]
            if cell == 0:
                product = Polynomial.zero()
                break
            product = product * (cell if isinstance(cell, int) else Polynomial.variable(cell))
        total = total + product
    return total


def _perm_sign(perm) -> int:
    sign = 1
    for a in range(len(perm)):
        for b in range(a + 1, len(perm)):
            if perm[a] > perm[b]:
                sign = -sign
    return sign


def rank_fractions(rows) -> int:
    """Gaussian elimination over Fraction, an independent rank oracle."""
    work = [[Fraction(x) for x in row] for row in rows]
    rank = 0
    col = 0
    ncols = len(work[0]) if work else 0
    while rank < len(work) and col < ncols:
        pivot = None
        for r in range(rank, len(work)):
            if work[r][col]:
                pivot = r
                break
        if pivot is None:
            col += 1
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        inv = 1 / work[rank][col]
        work[rank] = [x * inv for x in work[rank]]
        for r in range(len(work)):
            if r != rank and work[r][col]:
                f = work[r][col]
                work[r] = [a - f * b for a, b in zip(work[r], work[rank])]
        rank += 1
        col += 1
    return rank


def random_symbolic_matrix(
    rng: random.Random, size: int, max_vars_per_row: int | None = None
) -> SymbolicMatrix:
    rows = []
    counter = 0
    for r in range(size):
        vars_left = size if max_vars_per_row is None else max_vars_per_row
        row = []
        for c in range(size):
            roll = rng.random()
            if roll < 0.35 and vars_left > 0:
                counter += 1
                row.append((rng.randint(1, 9), 10 + counter))
                vars_left -= 1
            elif roll < 0.6:
                row.append(0)
            else:
                row.append(rng.randint(-4, 4))
        rows.append(tuple(row))
    return SymbolicMatrix(tuple(rows))


def compositions_upto(n_max: int):
    from wsections.tableau import compositions

    for n in range(1, n_max + 1):
        yield from compositions(n)
