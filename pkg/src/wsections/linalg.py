"""Exact integer linear algebra: rank and triangular-minor witnesses."""
from __future__ import annotations

from math import gcd
from typing import Sequence

from .errors import InternalError


def rank_int(rows: Sequence[Sequence[int]]) -> int:
    """Rank over the rationals via fraction-free elimination on integers."""
    work = [list(map(int, row)) for row in rows if any(row)]
    if not work:
        return 0
    ncols = len(work[0])
    rank = 0
    col = 0
    while work and col < ncols:
        pivot_idx = None
        for idx, row in enumerate(work):
            if row[col] != 0:
                pivot_idx = idx
                break
        if pivot_idx is None:
            col += 1
            continue
        pivot_row = work.pop(pivot_idx)
        p = pivot_row[col]
        rank += 1
        reduced = []
        for row in work:
            if row[col] != 0:
                f = row[col]
                row = [p * a - f * b for a, b in zip(row, pivot_row)]
                g = 0
                for a in row:
                    g = gcd(g, a)
                if g > 1:
                    row = [a // g for a in row]
            if any(row):
                reduced.append(row)
        work = reduced
        col += 1
    return rank


def triangular_unimodular_witness(
    rows: Sequence[Sequence[int]],
) -> list[tuple[int, int]] | None:
    """Row/column pairing making a full-row-rank minor triangular with +-1 diagonal.

    Repeatedly peel a column whose support among the remaining rows is a
    single +-1 entry; backtrack over peeling choices when the greedy order
    stalls.  Returns the (row, column) diagonal in peeling order, or None.
    """
    nrows = len(rows)
    if nrows == 0:
        return []
    ncols = len(rows[0])

    def peel(alive_rows: frozenset[int], alive_cols: frozenset[int]):
        if not alive_rows:
            return []
        candidates = []
        for c in alive_cols:
            support = [r for r in alive_rows if rows[r][c] != 0]
            if len(support) == 1 and rows[support[0]][c] in (1, -1):
                candidates.append((support[0], c))
        for r, c in candidates:
            rest = peel(alive_rows - {r}, alive_cols - {c})
            if rest is not None:
                return [(r, c)] + rest
        return None

    return peel(frozenset(range(nrows)), frozenset(range(ncols)))


def solve_unit_differences(n: int, constraints: Sequence[tuple[int, int]]) -> tuple[int, ...]:
    """One integer solution of d_j - d_i = 1 for every constraint (i, j).

    Both endpoints are 1-based.  Each connected component is anchored at its
    smallest member, which gets 0.  Raises InternalError when the constraint
    graph is inconsistent.
    """
    adjacency: dict[int, list[tuple[int, int]]] = {k: [] for k in range(1, n + 1)}
    for i, j in constraints:
        adjacency[i].append((j, 1))
        adjacency[j].append((i, -1))
    values: dict[int, int] = {}
    for start in range(1, n + 1):
        if start in values:
            continue
        values[start] = 0
        queue = [start]
        while queue:
            k = queue.pop()
            for other, delta in adjacency[k]:
                target = values[k] + delta
                if other in values:
                    if values[other] != target:
                        raise InternalError("inconsistent unit-difference system")
                else:
                    values[other] = target
                    queue.append(other)
    return tuple(values[k] for k in range(1, n + 1))
