import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from contactsurgery import fronts
from contactsurgery.errors import (
    EmptyWord,
    IndexOutOfRange,
    ParseError,
    SameComponent,
    UnbalancedCusps,
    UnrealizablePair,
)
from contactsurgery.fronts import FrontWord, OrientedFront

L, R, X = fronts.LCUSP, fronts.RCUSP, fronts.CROSS


def front(*events):
    return OrientedFront(FrontWord.from_events(events))


K0 = [(L, 1), (R, 1)]
KINK = [(L, 1), (X, 1), (R, 1)]
TWO_SPLIT = [(L, 1), (R, 1), (L, 1), (R, 1)]
NESTED = [(L, 1), (L, 2), (R, 2), (R, 1)]
# clasp: the second component's upper strand crosses the first component's
# lower strand twice
CLASP = [(L, 1), (L, 3), (X, 2), (X, 2), (R, 1), (R, 1)]


class TestValidate:
    @pytest.mark.parametrize(
        "events, count",
        [
            (K0, 1),
            ([(L, 1), (L, 1), (R, 1), (R, 1)], 2),
            (KINK, 1),
            (TWO_SPLIT, 2),
            (NESTED, 2),
            (CLASP, 2),
        ],
    )
    def test_component_counts(self, events, count):
        assert fronts.validate(FrontWord.from_events(events)) == count

    def test_empty_word(self):
        with pytest.raises(EmptyWord):
            fronts.validate(FrontWord.from_events([]))

    @pytest.mark.parametrize(
        "events",
        [
            [(L, 2)],  # no strands yet, position 2 invalid
            [(L, 1), (R, 2)],
            [(L, 1), (X, 2), (R, 1)],
            [(R, 1)],
            [(X, 1)],
        ],
    )
    def test_index_out_of_range(self, events):
        with pytest.raises(IndexOutOfRange):
            fronts.validate(FrontWord.from_events(events))

    @pytest.mark.parametrize("events", [[(L, 1)], [(L, 1), (L, 2), (R, 1)]])
    def test_unbalanced(self, events):
        with pytest.raises(UnbalancedCusps):
            fronts.validate(FrontWord.from_events(events))

    def test_cusp_events_balance(self):
        for events in (K0, KINK, NESTED, CLASP):
            kinds = [k for k, _ in events]
            assert kinds.count(L) == kinds.count(R)

    def test_bad_kind_rejected(self):
        with pytest.raises(ParseError):
            FrontWord.from_tokens(["Q", 1])

    def test_token_round_trip(self):
        word = FrontWord.from_tokens(["L", 1, "X", 1, "R", 1])
        assert word.to_tokens() == ["L", 1, "X", 1, "R", 1]
        assert word == FrontWord.from_events(KINK)


class TestInvariants:
    def test_standard_unknot(self):
        k0 = fronts.standard_unknot()
        assert fronts.validate(k0.word) == 1
        assert k0.tb() == -1
        assert k0.rot() == 0
        assert fronts.cusp_count(k0) == 2

    def test_crossing_free_tb_is_half_cusp_count(self):
        for rot in (-2, 0, 2):
            f = fronts.realize_unknot(-3, rot)
            assert fronts.writhe(f) == 0
            assert f.tb() == -fronts.cusp_count(f) // 2

    def test_kinked_unknot(self):
        f = front(*KINK)
        assert fronts.writhe(f) == -1
        assert f.tb() == -2
        assert f.rot() in (-1, 1)

    def test_zigzags_drop_tb(self):
        f = fronts.standard_unknot()
        for n in range(1, 5):
            f = fronts.stabilize(f, 0, "+")
            assert f.tb() == -n - 1

    def test_rotation_flips_under_reversal(self):
        f = fronts.realize_unknot(-4, 3)
        rev = f.reversed_component(0)
        assert fronts.rotation(rev, 0) == -3
        assert fronts.thurston_bennequin(rev, 0) == -4

    def test_component_index_checked(self):
        with pytest.raises(IndexOutOfRange):
            fronts.rotation(fronts.standard_unknot(), 1)


class TestStabilize:
    def test_spec_values(self):
        k0 = fronts.standard_unknot()
        s = fronts.stabilize(k0, 0, "+")
        assert (s.tb(), s.rot()) == (-2, 1)
        s2 = fronts.stabilize(s, 0, "-")
        assert (s2.tb(), s2.rot()) == (-3, 0)

    def test_locality(self):
        f = front(*TWO_SPLIT)
        before = (f.tb(1), f.rot(1))
        g = fronts.stabilize(f, 0, "-")
        assert (g.tb(1), g.rot(1)) == before
        assert g.tb(0) == f.tb(0) - 1

    def test_works_on_reversed_orientation(self):
        k0 = fronts.standard_unknot().reversed_component(0)
        s = fronts.stabilize(k0, 0, "+")
        assert (s.tb(), s.rot()) == (-2, 1)

    @given(st.lists(st.sampled_from("+-"), max_size=6))
    def test_sequences(self, signs):
        f = fronts.standard_unknot()
        for sign in signs:
            f = fronts.stabilize(f, 0, sign)
        assert f.tb() == -1 - len(signs)
        assert f.rot() == signs.count("+") - signs.count("-")
        assert fronts.validate(f.word) == 1

    @given(st.lists(st.sampled_from("+-"), min_size=2, max_size=6), st.randoms())
    def test_order_irrelevant(self, signs, rng):
        shuffled = list(signs)
        rng.shuffle(shuffled)
        f = g = fronts.standard_unknot()
        for a, b in zip(signs, shuffled):
            f = fronts.stabilize(f, 0, a)
            g = fronts.stabilize(g, 0, b)
        assert (f.tb(), f.rot()) == (g.tb(), g.rot())


class TestRealizeUnknot:
    def test_base_case(self):
        assert fronts.realize_unknot(-1, 0).word == fronts.standard_unknot().word

    @pytest.mark.parametrize("rot", [-2, 0, 2])
    def test_tb_minus_three_successes(self, rot):
        f = fronts.realize_unknot(-3, rot)
        assert (f.tb(), f.rot()) == (-3, rot)

    @pytest.mark.parametrize("rot", [-3, -1, 1, 3, 4])
    def test_tb_minus_three_failures(self, rot):
        with pytest.raises(UnrealizablePair):
            fronts.realize_unknot(-3, rot)

    def test_parity_failure(self):
        with pytest.raises(UnrealizablePair):
            fronts.realize_unknot(-2, 0)

    def test_bennequin_failure(self):
        with pytest.raises(UnrealizablePair):
            fronts.realize_unknot(-1, 2)
        with pytest.raises(UnrealizablePair):
            fronts.realize_unknot(0, 1)

    def test_outputs_reverify(self):
        f = fronts.realize_unknot(-3, 2)
        assert fronts.rotation(f, 0) == 2
        for n in range(0, 5):
            for rot in range(-n, n + 1, 2):
                g = fronts.realize_unknot(-n - 1, rot)
                assert (g.tb(), g.rot()) == (-n - 1, rot)
                assert g.tb() + abs(g.rot()) <= -1

    def test_deterministic_bytes(self):
        a = fronts.realize_unknot(-4, -1).word.to_tokens()
        b = fronts.realize_unknot(-4, -1).word.to_tokens()
        assert a == b


class TestLinking:
    def test_split_fronts_unlinked(self):
        f = front(*TWO_SPLIT)
        assert fronts.linking_number(f, 0, 1) == 0

    def test_nested_without_crossings_unlinked(self):
        f = front(*NESTED)
        assert fronts.linking_number(f, 0, 1) == 0

    def test_clasp(self):
        f = front(*CLASP)
        lk = fronts.linking_number(f, 0, 1)
        assert lk == -1
        assert fronts.linking_number(f, 1, 0) == lk
        assert fronts.linking_number(f.reversed_component(0), 0, 1) == -lk
        assert (
            fronts.linking_number(
                f.reversed_component(0).reversed_component(1), 0, 1
            )
            == lk
        )

    def test_clasp_component_invariants(self):
        f = front(*CLASP)
        for comp in (0, 1):
            assert f.tb(comp) == -1
            assert fronts.writhe(f, comp) == 0

    def test_same_component_rejected(self):
        with pytest.raises(SameComponent):
            fronts.linking_number(front(*TWO_SPLIT), 1, 1)


class TestOrientations:
    def test_flag_count_checked(self):
        with pytest.raises(ValueError):
            OrientedFront(FrontWord.from_events(K0), (True, False))

    def test_default_orientation_is_per_component(self):
        f = front(*TWO_SPLIT)
        assert f.orientations == (True, True)
        g = f.reversed_component(1)
        assert g.orientations == (True, False)
        assert g.rot(0) == f.rot(0)
