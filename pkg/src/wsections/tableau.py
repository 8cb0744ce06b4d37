"""Compositions, diagrams and numbered tableaux.

A composition (n1, ..., nr) of n is drawn as r columns of boxes, column v
holding n_v boxes.  The boxes are numbered 1..n going down each column,
columns left to right, so the box in row u of column v holds u + n1 + ... +
n_{v-1}.  Entries therefore increase with the column index, and a matrix
position x[i,j] lies in the nilradical of the block upper-triangular algebra
cut out by the composition exactly when the column of i is strictly left of
the column of j.  Everything downstream (lines, minors, weights) speaks in
box entries, so this module is the single source of truth for the
entry <-> (row, column) correspondence.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator

from .errors import InvalidInputError


@dataclass(frozen=True, order=True)
class MatrixUnit:
    """Off-diagonal matrix position (i, j), 1-based."""

    i: int
    j: int

    def __post_init__(self) -> None:
        if self.i < 1 or self.j < 1 or self.i == self.j:
            raise InvalidInputError(f"bad matrix unit ({self.i}, {self.j})")

    @property
    def key(self) -> tuple[int, int]:
        return (self.i, self.j)

    def __str__(self) -> str:
        return f"x[{self.i},{self.j}]"


@dataclass(frozen=True)
class Composition:
    """Ordered sequence of positive integers; order matters and is kept."""

    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.parts:
            raise InvalidInputError("composition must have at least one part")
        for p in self.parts:
            if not isinstance(p, int) or p < 1:
                raise InvalidInputError(f"composition parts must be positive integers, got {p!r}")
        object.__setattr__(self, "parts", tuple(self.parts))

    @classmethod
    def parse(cls, text: str) -> "Composition":
        """Parse comma-separated positive decimal integers, e.g. "2,1,1,2"."""
        try:
            parts = tuple(int(piece.strip()) for piece in text.split(","))
        except ValueError as exc:
            raise InvalidInputError(f"cannot parse composition from {text!r}") from exc
        return cls(parts)

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def r(self) -> int:
        return len(self.parts)

    def prefix(self, v: int) -> int:
        """Sum of the parts strictly left of column v (1-based)."""
        return sum(self.parts[: v - 1])

    def __str__(self) -> str:
        return ",".join(str(p) for p in self.parts)


@dataclass(frozen=True)
class Box:
    """One box of the diagram: 1-based row, column and its entry."""

    row: int
    col: int
    entry: int


@dataclass(frozen=True)
class NeighborPair:
    """Columns v < v' of common height s with no height-s column between."""

    v: int
    v_prime: int
    s: int


@dataclass(frozen=True)
class Tableau:
    """Numbered diagram of a composition."""

    composition: Composition

    @property
    def n(self) -> int:
        return self.composition.n

    @property
    def height(self) -> int:
        return max(self.composition.parts)

    @cached_property
    def columns(self) -> tuple[tuple[int, ...], ...]:
        """Entries of each column, top to bottom."""
        cols = []
        start = 1
        for h in self.composition.parts:
            cols.append(tuple(range(start, start + h)))
            start += h
        return tuple(cols)

    @cached_property
    def _position(self) -> dict[int, Box]:
        pos = {}
        for v, entries in enumerate(self.columns, start=1):
            for u, entry in enumerate(entries, start=1):
                pos[entry] = Box(row=u, col=v, entry=entry)
        return pos

    def box(self, entry: int) -> Box:
        try:
            return self._position[entry]
        except KeyError:
            raise InvalidInputError(f"entry {entry} outside [1, {self.n}]") from None

    def col_of(self, entry: int) -> int:
        return self.box(entry).col

    def row_of(self, entry: int) -> int:
        return self.box(entry).row

    def boxes(self) -> tuple[Box, ...]:
        return tuple(self._position[e] for e in range(1, self.n + 1))

    def row_entries(self, u: int) -> tuple[int, ...]:
        """Entries in row u, left to right."""
        return tuple(col[u - 1] for col in self.columns if len(col) >= u)

    def col_entries(self, v: int) -> tuple[int, ...]:
        return self.columns[v - 1]

    def col_height(self, v: int) -> int:
        return self.composition.parts[v - 1]

    def entry_at(self, u: int, v: int) -> int:
        """Entry of the box in row u, column v."""
        return u + self.composition.prefix(v)


def build_tableau(c: Composition) -> Tableau:
    """Number the diagram of c down the columns, left to right."""
    return Tableau(c)


def neighboring_pairs(t: Tableau) -> tuple[NeighborPair, ...]:
    """All pairs of equal-height columns with no column of that height between.

    Columns of other heights (taller ones included) may separate the members
    of a pair.  Ordered by (height, left column).
    """
    by_height: dict[int, list[int]] = {}
    for v, h in enumerate(t.composition.parts, start=1):
        by_height.setdefault(h, []).append(v)
    pairs = []
    for s, cols in sorted(by_height.items()):
        for v, v_prime in zip(cols, cols[1:]):
            pairs.append(NeighborPair(v, v_prime, s))
    return tuple(sorted(pairs, key=lambda p: (p.s, p.v)))


def is_neighboring(t: Tableau, p: NeighborPair) -> bool:
    parts = t.composition.parts
    if not (1 <= p.v < p.v_prime <= len(parts)):
        return False
    if parts[p.v - 1] != p.s or parts[p.v_prime - 1] != p.s:
        return False
    return all(parts[w - 1] != p.s for w in range(p.v + 1, p.v_prime))


def require_neighboring(t: Tableau, p: NeighborPair) -> None:
    if not is_neighboring(t, p):
        raise InvalidInputError(f"({p.v}, {p.v_prime}) is not a neighboring pair of height {p.s}")


def in_nilradical(t: Tableau, u: MatrixUnit) -> bool:
    """True iff the column of entry i is strictly left of the column of j."""
    return t.col_of(u.i) < t.col_of(u.j)


def nilradical_basis(t: Tableau) -> tuple[MatrixUnit, ...]:
    """All matrix units of the nilradical, ordered by (i, j)."""
    units = []
    for i in range(1, t.n + 1):
        ci = t.col_of(i)
        for j in range(1, t.n + 1):
            if ci < t.col_of(j):
                units.append(MatrixUnit(i, j))
    return tuple(units)


def bs_degree(t: Tableau, p: NeighborPair) -> int:
    """Degree of the top term of the translated block minor for the pair.

    Equals sum(min(s, n_i) for i in (v, v']); bounded by the minor size
    sum(n_i), with equality exactly when no column between the pair is
    taller than s.
    """
    require_neighboring(t, p)
    parts = t.composition.parts
    return sum(min(p.s, parts[i - 1]) for i in range(p.v + 1, p.v_prime + 1))


def compositions(n: int) -> Iterator[tuple[int, ...]]:
    """All 2^(n-1) compositions of n in lexicographic order."""
    if n < 0:
        raise InvalidInputError("n must be non-negative")
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in compositions(n - first):
            yield (first, *rest)
