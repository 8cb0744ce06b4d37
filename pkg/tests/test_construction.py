import json

import pytest

from helpers import compositions_upto
from wsections.construction import (
    LEFTMOST,
    RIGHTMOST,
    Line,
    LineSet,
    extract_section,
    lineset_to_json,
    step1,
    step2,
    step3,
    verify_P1,
    verify_P2,
)
from wsections.errors import (
    InvalidStateError,
    P1UniquenessError,
    P1ViolationError,
)
from wsections.tableau import (
    Composition,
    MatrixUnit,
    NeighborPair,
    build_tableau,
    neighboring_pairs,
)


def T(*parts):
    return build_tableau(Composition(tuple(parts)))


def labelled(ls):
    return {ln.key: ln.label for ln in ls.lines}


def keys(lines):
    return sorted(ln.key for ln in lines)


class TestStep1:
    def test_golden_2112(self):
        assert keys(step1(T(2, 1, 1, 2)).lines) == [(1, 3), (2, 6), (3, 4), (4, 5)]

    def test_golden_321123(self):
        ls = step1(T(3, 2, 1, 1, 2, 3))
        assert len(ls.lines) == 12 - 3
        assert (3, 12) in ls.line_map

    def test_single_column(self):
        assert step1(T(6)).lines == ()

    def test_count_and_permutation_invariance(self):
        for parts in compositions_upto(10):
            assert len(step1(T(*parts)).lines) == sum(parts) - max(parts)

    def test_at_most_one_line_each_side(self):
        for parts in compositions_upto(8):
            ls = step1(T(*parts))
            lefts = [ln.i for ln in ls.lines]
            rights = [ln.j for ln in ls.lines]
            assert len(lefts) == len(set(lefts))
            assert len(rights) == len(set(rights))


class TestStep2:
    def test_golden_2112_rightmost(self):
        ls = step2(step1(T(2, 1, 1, 2)))
        assert labelled(ls) == {(1, 3): 1, (3, 4): 0, (4, 5): 1, (2, 6): 0}

    def test_golden_1221_rightmost(self):
        ls = step2(step1(T(1, 2, 2, 1)))
        assert keys(ls.zero_lines()) == [(3, 5), (4, 6)]

    def test_golden_321123_rightmost(self):
        ls = step2(step1(T(3, 2, 1, 1, 2, 3)))
        assert keys(ls.zero_lines()) == [(3, 12), (5, 9), (6, 7)]

    def test_borel_all_zero(self):
        for n in range(2, 8):
            ls = step2(step1(T(*([1] * n))))
            assert all(ln.label == 0 for ln in ls.lines)

    def test_modes_differ_when_chain_has_interior(self):
        t = T(2, 3, 2)
        right = step2(step1(t), RIGHTMOST)
        left = step2(step1(t), LEFTMOST)
        assert keys(right.zero_lines()) == [(4, 7)]
        assert keys(left.zero_lines()) == [(2, 4)]

    def test_zero_count_is_g(self):
        for parts in compositions_upto(9):
            t = T(*parts)
            for mode in (RIGHTMOST, LEFTMOST):
                ls = step2(step1(t), mode)
                assert len(ls.zero_lines()) == len(neighboring_pairs(t))

    def test_one_count_matches_gap_formula(self):
        for parts in compositions_upto(9):
            t = T(*parts)
            ls = step2(step1(t))
            heights = sorted(set(parts))
            gaps = heights[-1] - len(heights)
            assert len(ls.one_lines()) == (t.n - len(parts)) - gaps

    def test_top_row_lines_all_zero(self):
        for parts in compositions_upto(8):
            t = T(*parts)
            ls = step2(step1(t))
            top = t.height
            for ln in ls.lines:
                if t.row_of(ln.i) == top:
                    assert ln.label == 0

    def test_requires_step1(self):
        ls2 = step2(step1(T(2, 2)))
        with pytest.raises(InvalidStateError):
            step2(ls2)


class TestStep3:
    def test_golden_2112(self):
        ls = step3(step2(step1(T(2, 1, 1, 2))))
        assert (2, 6) not in ls.line_map
        assert ls.line_map[(2, 4)].label == 1
        assert ls.line_map[(3, 6)].label == 0 and not ls.line_map[(3, 6)].gated
        gate = ls.line_map[(3, 4)]
        assert gate.label == 0 and gate.gated and gate.gate_stage == 2

    def test_golden_321123_full_figure(self):
        ls = step3(step2(step1(T(3, 2, 1, 1, 2, 3))))
        assert keys(ls.one_lines()) == [
            (1, 4), (2, 5), (3, 9), (4, 6), (5, 7), (7, 8), (8, 10), (9, 11),
        ]
        assert keys(ls.ungated_zero_lines()) == [(6, 12)]
        gated = {ln.key: ln.gate_stage for ln in ls.zero_lines() if ln.gated}
        assert gated == {(6, 7): 2, (6, 9): 3}

    def test_golden_1221_unchanged(self):
        ls2 = step2(step1(T(1, 2, 2, 1)))
        ls3 = step3(ls2)
        assert labelled(ls3) == labelled(ls2)
        assert not any(ln.gated for ln in ls3.lines)

    def test_golden_21132_tall_after_gated_stretch(self):
        # The height-2 pair spans a taller column with no gated line after it,
        # so the old horizontal 0-segment must survive as the pair's 0-line.
        ls = step3(step2(step1(T(2, 1, 1, 3, 2))))
        assert (2, 6) not in ls.line_map
        assert ls.line_map[(2, 4)].label == 1
        assert ls.line_map[(3, 6)].label == 1
        assert ls.line_map[(3, 4)].gated and ls.line_map[(3, 4)].gate_stage == 2
        zero = ls.line_map[(6, 9)]
        assert zero.label == 0 and not zero.gated

    def test_golden_21112_shared_box_chains(self):
        ls = step3(step2(step1(T(2, 1, 1, 1, 2))))
        assert keys(ls.one_lines()) == [(1, 3), (2, 4), (3, 5), (5, 6)]
        assert keys(ls.ungated_zero_lines()) == [(4, 7)]
        assert {ln.key for ln in ls.zero_lines() if ln.gated} == {(3, 4), (4, 5)}

    def test_figure1_stage2(self):
        t = T(2, 3, 1, 1, 1, 3, 3, 1, 1, 1, 1, 3, 3, 3, 1, 1, 2)
        ls = step3(step2(step1(t)), last_stage=2)
        added = {(ln.i, ln.j, ln.label) for ln in ls.lines if ln.stage == 2}
        assert added == {
            (4, 7, 1), (6, 8, 1), (7, 10, 1),
            (13, 15, 1), (12, 16, 1), (15, 17, 1), (16, 18, 1), (17, 20, 1),
            (26, 28, 1), (25, 29, 1),
            (28, 31, 0),
        }
        assert keys(ln for ln in ls.lines if ln.gated) == [
            (6, 7), (7, 8), (12, 15), (15, 16), (16, 17), (17, 18), (25, 28), (28, 29),
        ]
        for seg in [(4, 10), (13, 20), (26, 31)]:
            assert seg not in ls.line_map

    def test_requires_rightmost_step2(self):
        with pytest.raises(InvalidStateError):
            step3(step1(T(2, 2)))
        with pytest.raises(InvalidStateError):
            step3(step2(step1(T(2, 3, 2)), LEFTMOST))

    def test_stage_cap_validation(self):
        ls2 = step2(step1(T(2, 2)))
        with pytest.raises(InvalidStateError):
            step3(ls2, last_stage=0)
        with pytest.raises(InvalidStateError):
            step3(ls2, last_stage=5)

    def test_zero_count_preserved(self):
        for parts in compositions_upto(8):
            t = T(*parts)
            ls3 = step3(step2(step1(t)))
            assert len(ls3.zero_lines()) == len(neighboring_pairs(t))

    def test_extremal_boxes_preserved(self):
        for parts in compositions_upto(8):
            t = T(*parts)
            ls1 = step1(t)
            ls3 = step3(step2(ls1))

            def profile(ls):
                lefts = {ln.j for ln in ls.lines}
                rights = {ln.i for ln in ls.lines}
                ent = range(1, t.n + 1)
                return (
                    {e for e in ent if e not in lefts},
                    {e for e in ent if e not in rights},
                )

            assert profile(ls1) == profile(ls3)


class TestP1P2:
    def test_families_2112_post_step3(self):
        t = T(2, 1, 1, 2)
        ls = step3(step2(step1(t)))
        fam = verify_P1(ls, NeighborPair(1, 4, 2))
        assert fam.paths == ((1, 3, 6), (2, 4, 5))
        assert fam.sigma == (2, 1)
        fam_inner = verify_P1(ls, NeighborPair(2, 3, 1))
        assert fam_inner.paths == ((3, 4),)
        assert fam_inner.sigma == (1,)

    def test_p1_holds_after_step2_but_p2_fails(self):
        t = T(2, 1, 1, 2)
        ls2 = step2(step1(t))
        pair = NeighborPair(1, 4, 2)
        fam = verify_P1(ls2, pair)
        assert fam.paths == ((1, 3, 4, 5), (2, 6))
        assert verify_P2(ls2, pair) is False

    def test_trivial_pair(self):
        t = T(1, 1)
        ls = step3(step2(step1(t)))
        fam = verify_P1(ls, NeighborPair(1, 2, 1))
        assert fam.paths == ((1, 2),) and fam.sigma == (1,)
        assert verify_P2(ls, NeighborPair(1, 2, 1))

    def test_p1_and_p2_hold_everywhere_after_step3(self):
        for parts in compositions_upto(8):
            t = T(*parts)
            ls = step3(step2(step1(t)))
            for pair in neighboring_pairs(t):
                assert verify_P2(ls, pair)

    def test_missing_line_raises_violation(self):
        t = T(1, 1)
        ls = LineSet(t, (), step=2, mode=RIGHTMOST)
        with pytest.raises(P1ViolationError):
            verify_P1(ls, NeighborPair(1, 2, 1))

    def test_two_families_raise_uniqueness(self):
        t = T(2, 2)
        lines = (
            Line(1, 3, 1), Line(2, 4, 0), Line(1, 4, 1), Line(2, 3, 1),
        )
        ls = LineSet(t, lines, step=2, mode=RIGHTMOST)
        with pytest.raises(P1UniquenessError):
            verify_P1(ls, NeighborPair(1, 2, 2))

    def test_gated_lines_serve_lower_pairs_only(self):
        t = T(2, 1, 1, 2)
        ls = step3(step2(step1(t)))
        fam = verify_P1(ls, NeighborPair(2, 3, 1))
        assert ls.line_map[(3, 4)].gated
        assert fam.edges() == ((3, 4),)


class TestSection:
    def test_golden_2112(self):
        sec = extract_section(step3(step2(step1(T(2, 1, 1, 2)))))
        assert sec.e == (MatrixUnit(1, 3), MatrixUnit(2, 4), MatrixUnit(4, 5))
        assert set(sec.v) == {MatrixUnit(3, 4), MatrixUnit(3, 6)}

    def test_golden_1221(self):
        sec = extract_section(step3(step2(step1(T(1, 2, 2, 1)))))
        assert sec.e == (MatrixUnit(1, 2), MatrixUnit(2, 4))
        assert set(sec.v) == {MatrixUnit(4, 6), MatrixUnit(3, 5)}

    def test_single_column(self):
        sec = extract_section(step2(step1(T(5))))
        assert sec.e == () and sec.v == ()

    def test_requires_labels(self):
        with pytest.raises(InvalidStateError):
            extract_section(step1(T(2, 2)))


class TestSerialization:
    def test_stable_json(self):
        ls = step3(step2(step1(T(2, 1, 1, 2))))
        doc = lineset_to_json(ls)
        assert doc["schema"] == "ws-lineset/1"
        assert [l["from"] for l in doc["lines"]] == sorted(l["from"] for l in doc["lines"])
        assert json.dumps(doc, sort_keys=True) == json.dumps(
            lineset_to_json(step3(step2(step1(T(2, 1, 1, 2))))), sort_keys=True
        )
        gated = [l for l in doc["lines"] if l["gated"]]
        assert gated == [
            {"from": 3, "to": 4, "label": 0, "gated": True, "stage": 0, "gate_stage": 2}
        ]
