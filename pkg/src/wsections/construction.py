"""Line systems on a numbered tableau: drawing, labelling, rerouting.

The pipeline has three steps.  Step 1 draws a horizontal line between every
pair of row-adjacent boxes.  Step 2 labels each line 1 except for one 0 per
neighboring pair of columns: under the rightmost convention the 0 sits on the
last horizontal segment of the row-s chain running from the left column of
the pair to the right one, under the leftmost convention on the first.

Step 3 repairs the pairs whose region contains 0-labelled lines of smaller
height.  Working down the rows, for each neighboring pair of height i it
gates the ungated 0-lines lying between the columns in rows < i, deletes the
row-i segments that bridge the gaps those lines occupy, and reroutes:

  * the box of row i delimiting a gap on the left is joined down to the
    right endpoint of the gap's first gated line,
  * consecutive gated lines are chained left-endpoint to next right-endpoint,
  * the last gated line of a gap is joined up to the row-i box delimiting it
    on the right,
  * and the final such join, when the last gap touches the right column,
    carries the pair's new 0; otherwise the old row-i 0-segment survives.

All joins carry 1 except that single 0.  Gated lines are never removed: they
stay visible to pairs of smaller height, which is recorded by the stage at
which each gate was applied.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from functools import cached_property

from .errors import (
    InternalError,
    InvalidInputError,
    InvalidStateError,
    P1UniquenessError,
    P1ViolationError,
)
from .tableau import (
    MatrixUnit,
    NeighborPair,
    Tableau,
    neighboring_pairs,
    require_neighboring,
)

RIGHTMOST = "rightmost"
LEFTMOST = "leftmost"


@dataclass(frozen=True)
class Line:
    """Directed line between two box entries, always strictly left to right."""

    i: int
    j: int
    label: int = 1
    gated: bool = False
    stage: int = 0  # 0 for step-1 horizontals, else the row stage that added it
    gate_stage: int | None = None

    def __post_init__(self) -> None:
        if self.label not in (0, 1):
            raise InternalError(f"line label must be 0 or 1, got {self.label}")
        if self.gated and self.label != 0:
            raise InternalError("only 0-labelled lines can be gated")

    @property
    def key(self) -> tuple[int, int]:
        return (self.i, self.j)

    @property
    def unit(self) -> MatrixUnit:
        return MatrixUnit(self.i, self.j)


@dataclass(frozen=True)
class LineSet:
    """Lines over a tableau together with the pipeline stage they reflect."""

    tableau: Tableau
    lines: tuple[Line, ...]
    step: int
    mode: str | None = None
    stage3_rows: int = 0

    def __post_init__(self) -> None:
        if len({ln.key for ln in self.lines}) != len(self.lines):
            raise InternalError("two lines join the same ordered pair of boxes")

    @cached_property
    def line_map(self) -> dict[tuple[int, int], Line]:
        return {ln.key: ln for ln in self.lines}

    def zero_lines(self) -> tuple[Line, ...]:
        return tuple(ln for ln in self.lines if ln.label == 0)

    def one_lines(self) -> tuple[Line, ...]:
        return tuple(ln for ln in self.lines if ln.label == 1)

    def ungated_zero_lines(self) -> tuple[Line, ...]:
        return tuple(ln for ln in self.lines if ln.label == 0 and not ln.gated)

    def describe_stage(self) -> str:
        if self.step == 1:
            return "step1"
        if self.step == 2:
            return f"step2/{self.mode}"
        suffix = "" if self.stage3_rows >= self.tableau.height else f"/stage{self.stage3_rows}"
        return f"step3/{self.mode}{suffix}"


@dataclass(frozen=True)
class Section:
    """The data e + V read off a labelled line set.

    e collects the matrix units of the 1-lines; V the units of every 0-line,
    gated ones included (gating hides a line from later composite families,
    it does not shrink V's coordinate set).
    """

    e: tuple[MatrixUnit, ...]
    v: tuple[MatrixUnit, ...]

    def __post_init__(self) -> None:
        if set(self.e) & set(self.v):
            raise InternalError("section with overlapping e and V")


@dataclass(frozen=True)
class CompositeFamily:
    """The unique disjoint composite-line cover between a neighboring pair."""

    sigma: tuple[int, ...]  # path starting in row k ends in row sigma[k-1]
    paths: tuple[tuple[int, ...], ...]  # box entries, ordered by starting row

    def edges(self) -> tuple[tuple[int, int], ...]:
        out = []
        for path in self.paths:
            out.extend(zip(path, path[1:]))
        return tuple(out)


def _sorted_lines(lines) -> tuple[Line, ...]:
    return tuple(sorted(lines, key=lambda ln: ln.key))


def step1(t: Tableau) -> LineSet:
    """Horizontal lines between row-adjacent boxes; count is sum(n_i) - max."""
    lines = []
    for u in range(1, t.height + 1):
        entries = t.row_entries(u)
        for a, b in zip(entries, entries[1:]):
            lines.append(Line(a, b))
    return LineSet(t, _sorted_lines(lines), step=1)


def _zero_line_for(t: Tableau, pair: NeighborPair, mode: str) -> tuple[int, int]:
    """The horizontal segment of the pair's row-s chain that carries the 0."""
    chain = [
        t.entry_at(pair.s, w)
        for w in range(pair.v, pair.v_prime + 1)
        if t.col_height(w) >= pair.s
    ]
    if mode == RIGHTMOST:
        return (chain[-2], chain[-1])
    return (chain[0], chain[1])


def step2(ls: LineSet, mode: str = RIGHTMOST) -> LineSet:
    """Label every horizontal line 1 except one 0 per neighboring pair."""
    if ls.step != 1:
        raise InvalidStateError("step2 expects a step-1 line set")
    if mode not in (RIGHTMOST, LEFTMOST):
        raise InvalidInputError(f"unknown labelling mode {mode!r}")
    t = ls.tableau
    zeros = set()
    for pair in neighboring_pairs(t):
        key = _zero_line_for(t, pair, mode)
        if key in zeros:
            raise InternalError(f"two pairs claim the zero line {key}")
        zeros.add(key)
    lines = [replace(ln, label=0 if ln.key in zeros else 1) for ln in ls.lines]
    return LineSet(t, _sorted_lines(lines), step=2, mode=mode)


def step3(ls: LineSet, last_stage: int | None = None) -> LineSet:
    """Apply the row stages 1..last_stage (default: full height)."""
    if ls.step != 2 or ls.mode != RIGHTMOST:
        raise InvalidStateError("step3 expects a rightmost step-2 line set")
    t = ls.tableau
    top = t.height if last_stage is None else last_stage
    if not 1 <= top <= t.height:
        raise InvalidStateError(f"stage cap {last_stage} outside [1, {t.height}]")
    lines = dict(ls.line_map)
    by_height: dict[int, list[NeighborPair]] = {}
    for pair in neighboring_pairs(t):
        by_height.setdefault(pair.s, []).append(pair)
    for i in range(1, top + 1):
        for pair in sorted(by_height.get(i, []), key=lambda p: p.v):
            _apply_stage(t, lines, pair, i)
    return LineSet(t, _sorted_lines(lines.values()), step=3, mode=ls.mode, stage3_rows=top)


def _apply_stage(t: Tableau, lines: dict[tuple[int, int], Line], pair: NeighborPair, i: int) -> None:
    v, vp = pair.v, pair.v_prime
    caught = [
        ln
        for ln in lines.values()
        if ln.label == 0
        and not ln.gated
        and t.row_of(ln.i) <= i - 1
        and t.row_of(ln.j) <= i - 1
        and v <= t.col_of(ln.i)
        and t.col_of(ln.j) <= vp
    ]
    if not caught:
        return
    caught.sort(key=lambda ln: t.col_of(ln.i))
    for a, b in zip(caught, caught[1:]):
        if not (t.col_of(a.i) < t.col_of(a.j) <= t.col_of(b.i)):
            raise InternalError("ungated zero lines lost strict non-overlap")

    chain = [t.entry_at(i, w) for w in range(v, vp + 1) if t.col_height(w) >= i]
    chain_cols = [t.col_of(e) for e in chain]
    q = len(chain) - 1

    groups: dict[int, list[Line]] = {}
    for ln in caught:
        lo = t.col_of(ln.i)
        gap = max(g for g in range(q) if chain_cols[g] <= lo)
        if not t.col_of(ln.j) <= chain_cols[gap + 1]:
            raise InternalError("zero line straddles a row chain box")
        groups.setdefault(gap, []).append(ln)
    gaps = sorted(groups)

    for ln in caught:
        lines[ln.key] = replace(ln, gated=True, gate_stage=i)

    for gap in gaps:
        seg = (chain[gap], chain[gap + 1])
        if seg not in lines:
            raise InternalError(f"missing row segment {seg}")
        del lines[seg]

    def add(a: int, b: int, label: int, gated_flag: bool = False) -> None:
        if (a, b) in lines:
            raise InternalError(f"duplicate line {(a, b)}")
        lines[(a, b)] = Line(a, b, label=label, stage=i)

    last_gap = gaps[-1]
    for idx, gap in enumerate(gaps):
        group = groups[gap]
        add(chain[gap], group[0].j, 1)
        for a, b in zip(group, group[1:]):
            add(a.i, b.j, 1)
        tail = group[-1].i
        if gap != last_gap:
            add(tail, chain[gap + 1], 1)
        elif gap == q - 1:
            add(tail, chain[q], 0)
        else:
            # No gated line sits between the last bridged gap and the right
            # column, so the old horizontal 0-segment stays the pair's 0.
            add(tail, chain[gap + 1], 1)


def _usable(ln: Line, s: int) -> bool:
    return not ln.gated or (ln.gate_stage is not None and ln.gate_stage > s)


def _count_covers(starts, targets_of, limit: int = 2) -> int:
    """Count ways to pick one target per start, all targets distinct."""
    order = sorted(starts, key=lambda b: (len(targets_of[b]), b))
    used: set[int] = set()
    count = 0

    def rec(k: int) -> None:
        nonlocal count
        if count >= limit:
            return
        if k == len(order):
            count += 1
            return
        b = order[k]
        for tgt in targets_of[b]:
            if tgt not in used:
                used.add(tgt)
                rec(k + 1)
                used.remove(tgt)
                if count >= limit:
                    return

    rec(0)
    return count


def verify_P1(ls: LineSet, pair: NeighborPair) -> CompositeFamily:
    """The unique family of s disjoint composite lines crossing the pair.

    The family must cover every box of rows 1..s between the two columns,
    moving strictly left to right from the left column to the right one.
    Lines gated at row stages <= s are excluded; a gate applied at a later
    stage still serves this pair.
    """
    t = ls.tableau
    require_neighboring(t, pair)
    v, vp, s = pair.v, pair.v_prime, pair.s
    region = {
        b.entry
        for b in t.boxes()
        if b.row <= s and v <= b.col <= vp
    }
    edges: dict[int, list[int]] = {e: [] for e in region}
    for ln in ls.lines:
        if ln.i in region and ln.j in region and _usable(ln, s):
            edges[ln.i].append(ln.j)
    for outs in edges.values():
        outs.sort()

    sinks = {e for e in region if t.col_of(e) == vp}
    sources = {e for e in region if t.col_of(e) == v}
    starts = sorted(region - sinks)
    targets_of = {b: edges[b] for b in starts}

    count = _count_covers(starts, targets_of)
    if count == 0:
        raise P1ViolationError(f"no composite family for pair ({v}, {vp})")
    if count > 1:
        raise P1UniquenessError(f"multiple composite families for pair ({v}, {vp})")

    successor = _extract_cover(starts, targets_of)
    paths = []
    for source in sorted(sources, key=t.row_of):
        path = [source]
        while path[-1] in successor:
            path.append(successor[path[-1]])
        if path[-1] not in sinks:
            raise InternalError("composite line did not reach the right column")
        paths.append(tuple(path))
    covered = {e for path in paths for e in path}
    if covered != region:
        raise InternalError("composite family misses boxes of the region")
    sigma = tuple(t.row_of(path[-1]) for path in paths)
    return CompositeFamily(sigma=sigma, paths=tuple(paths))


def _extract_cover(starts, targets_of) -> dict[int, int]:
    order = sorted(starts, key=lambda b: (len(targets_of[b]), b))
    used: set[int] = set()
    chosen: dict[int, int] = {}

    def rec(k: int) -> bool:
        if k == len(order):
            return True
        b = order[k]
        for tgt in targets_of[b]:
            if tgt not in used:
                used.add(tgt)
                chosen[b] = tgt
                if rec(k + 1):
                    return True
                used.remove(tgt)
                del chosen[b]
        return False

    if not rec(0):
        raise InternalError("cover extraction failed after counting succeeded")
    return chosen


def verify_P2(ls: LineSet, pair: NeighborPair) -> bool:
    """True iff the pair's composite family uses exactly one 0-labelled line."""
    family = verify_P1(ls, pair)
    zeros = sum(1 for a, b in family.edges() if ls.line_map[(a, b)].label == 0)
    return zeros == 1


def extract_section(ls: LineSet) -> Section:
    """Units of the 1-lines as e; units of all 0-lines (gated included) as V."""
    if ls.step < 2:
        raise InvalidStateError("labels are only assigned from step 2 on")
    t = ls.tableau
    for ln in ls.lines:
        if not t.col_of(ln.i) < t.col_of(ln.j):
            raise InternalError(f"line {ln.key} leaves the nilradical")
    e = tuple(ln.unit for ln in ls.one_lines())
    v = tuple(ln.unit for ln in ls.zero_lines())
    return Section(e=e, v=v)


def lineset_to_json(ls: LineSet) -> dict:
    """Stable JSON document for a line set: boxes by entry, lines by (from, to)."""
    t = ls.tableau
    doc = {
        "schema": "ws-lineset/1",
        "composition": list(t.composition.parts),
        "n": t.n,
        "stage": ls.describe_stage(),
        "boxes": [
            {"entry": b.entry, "row": b.row, "col": b.col} for b in t.boxes()
        ],
        "lines": [
            {
                "from": ln.i,
                "to": ln.j,
                "label": ln.label,
                "gated": ln.gated,
                "stage": ln.stage,
                "gate_stage": ln.gate_stage,
            }
            for ln in ls.lines
        ],
    }
    if ls.step >= 2:
        sec = extract_section(ls)
        doc["e"] = [[u.i, u.j] for u in sorted(sec.e)]
        doc["V"] = [[u.i, u.j] for u in sorted(sec.v)]
    return doc
