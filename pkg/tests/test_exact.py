from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from contactsurgery import exact
from contactsurgery.errors import (
    BadEntry,
    DivisionByZero,
    NonNegativeCoefficient,
    ParseError,
    SingularMatrix,
)
from contactsurgery.exact import INF, Curve, IntMat2


def eval_oracle(entries):
    """Independent continued-fraction evaluator over Fraction."""
    value = Fraction(entries[-1])
    for a in reversed(entries[:-1]):
        value = a - 1 / value
    return value


def mat_oracle(rs):
    """Multiply out (1 1; 0 1) * prod (-r 1; -1 0) with plain tuples."""
    m = (1, 1, 0, 1)
    for r in rs:
        a, b, c, d = m
        f = (-r, 1, -1, 0)
        m = (
            a * f[0] + b * f[2],
            a * f[1] + b * f[3],
            c * f[0] + d * f[2],
            c * f[1] + d * f[3],
        )
    return m


# expansion length grows with the denominator (e.g. -1/q expands to q
# entries), so keep magnitudes at desk scale
negative_rationals = st.builds(
    Fraction, st.integers(-3000, -1), st.integers(1, 3000)
)

chains = st.lists(st.integers(-30, -2), min_size=1, max_size=12)


class TestNegCfExpand:
    @pytest.mark.parametrize(
        "r, expected",
        [
            (Fraction(-1), [-1]),
            (Fraction(-5, 3), [-2, -3]),
            (Fraction(-7, 5), [-2, -2, -3]),
            (Fraction(-1, 3), [-1, -2, -2]),
            (Fraction(-4), [-4]),
        ],
    )
    def test_examples(self, r, expected):
        entries = exact.neg_cf_expand(r)
        assert entries == expected
        assert eval_oracle(entries) == r

    @given(negative_rationals)
    def test_round_trip_and_bounds(self, r):
        entries = exact.neg_cf_expand(r)
        assert entries[0] <= -1
        assert all(a <= -2 for a in entries[1:])
        assert exact.cf_eval(entries) == r
        assert eval_oracle(entries) == r

    @pytest.mark.parametrize("bad", [0, 1, Fraction(5, 7), INF])
    def test_rejects_nonnegative(self, bad):
        with pytest.raises(NonNegativeCoefficient):
            exact.neg_cf_expand(bad)

    def test_rejects_float(self):
        with pytest.raises(NonNegativeCoefficient):
            exact.neg_cf_expand(-1.5)


class TestCfEval:
    @pytest.mark.parametrize(
        "entries, expected",
        [
            ([-1], Fraction(-1)),
            ([-2, -2], Fraction(-3, 2)),
            ([-3, -2], Fraction(-5, 2)),
        ],
    )
    def test_examples(self, entries, expected):
        assert exact.cf_eval(entries) == expected

    def test_inner_zero_raises(self):
        # tail [1, 1] evaluates to 0 before the leading entry divides by it
        with pytest.raises(DivisionByZero):
            exact.cf_eval([5, 1, 1])

    def test_empty_rejected(self):
        with pytest.raises(BadEntry):
            exact.cf_eval([])

    def test_non_integer_rejected(self):
        with pytest.raises(BadEntry):
            exact.cf_eval([-2, -2.5])

    @given(st.lists(st.integers(-9, 9), min_size=1, max_size=10))
    def test_matches_oracle(self, entries):
        try:
            expected = eval_oracle(entries)
        except ZeroDivisionError:
            with pytest.raises(DivisionByZero):
                exact.cf_eval(entries)
            return
        assert exact.cf_eval(entries) == expected


class TestChainMatrix:
    def test_example_two_entries(self):
        assert exact.chain_matrix([-3, -3]) == IntMat2(5, 2, -3, -1)

    def test_example_single_minus_two(self):
        assert exact.chain_matrix([-2]) == IntMat2(1, 1, -1, 0)

    @pytest.mark.parametrize("r1", range(-9, -1))
    def test_single_entry_ratio(self, r1):
        m = exact.chain_matrix([r1])
        assert Fraction(m.a, m.c) == r1 + 1

    @pytest.mark.parametrize("bad", [[-1], [0], [-3, -1], [2]])
    def test_bad_entries(self, bad):
        with pytest.raises(BadEntry):
            exact.chain_matrix(bad)

    @given(chains)
    def test_det_and_ratio(self, rs):
        m = exact.chain_matrix(rs)
        assert m.rows() == [list(row) for row in
                            (mat_oracle(rs)[:2], mat_oracle(rs)[2:])]
        assert m.det() == 1
        assert Fraction(m.a, m.c) == exact.cf_eval([rs[0] + 1, *rs[1:]])


class TestBoundarySlope:
    @pytest.mark.parametrize("n", range(1, 9))
    def test_all_minus_two_gives_minus_one(self, n):
        assert exact.boundary_slope([-2] * n) == -1

    def test_example(self):
        # the linear system for [-3, -3] has the solution (x, y) = (-2, 5)
        assert exact.boundary_slope([-3, -3]) == Fraction(-5, 2)

    @pytest.mark.parametrize("r1", range(-9, -1))
    def test_single_entry(self, r1):
        assert exact.boundary_slope([r1]) == r1 + 1

    def test_frozen_three_entry_case(self):
        assert exact.boundary_slope([-3, -2, -3]) == Fraction(-7, 3)

    @given(chains)
    def test_solves_linear_system(self, rs):
        slope = exact.boundary_slope(rs)
        # re-derive (x, y) from the reversed continued fraction and
        # substitute into the product system
        m = (1, 0, 0, 1)
        for r in rs:
            a, b, c, d = m
            m = (-r * a - b, a, -r * c - d, c)
        a, b, c, d = m
        x, y = -d - b, c + a
        assert Fraction(y, x) == slope
        assert (a * x + b * y, c * x + d * y) == (-1, 1)

    @given(chains)
    def test_equals_reversed_cf(self, rs):
        assert exact.boundary_slope(rs) == exact.cf_eval(exact.boundary_cf(rs))

    @given(chains)
    def test_truncation_identity(self, rs):
        trunc = exact.truncated_boundary_cf(rs)
        if trunc is None:
            assert set(rs) == {-2}
            assert exact.boundary_slope(rs) == -1
        else:
            assert exact.cf_eval(trunc) == exact.boundary_slope(rs)


class TestTightCount:
    @pytest.mark.parametrize(
        "rs, expected",
        [([-2], 1), ([-3, -3], 4), ([-3, -2, -3], 4), ([-2, -2, -2], 1)],
    )
    def test_examples(self, rs, expected):
        assert exact.tight_count(rs) == expected

    @given(chains)
    def test_positive_and_one_iff_all_minus_two(self, rs):
        count = exact.tight_count(rs)
        assert count >= 1
        assert (count == 1) == all(r == -2 for r in rs)


def unimodular(draw):
    """Random product of the elementary shear generators."""
    word = draw(st.lists(st.sampled_from("stST"), max_size=8))
    gens = {
        "s": IntMat2(1, 1, 0, 1),
        "S": IntMat2(1, -1, 0, 1),
        "t": IntMat2(1, 0, 1, 1),
        "T": IntMat2(1, 0, -1, 1),
    }
    m = IntMat2.identity()
    for w in word:
        m = m @ gens[w]
    return m


class TestMobius:
    def test_identity_fixes_curves(self):
        c = Curve(3, 5)
        assert exact.mobius_curve(IntMat2.identity(), c) == c

    @pytest.mark.parametrize("r1", range(-9, -1))
    def test_chain_factor_on_dividing_curve(self, r1):
        # (-r1 1; -1 0) sends the contact longitude class (-1, 1) to (r1+1, 1)
        image = exact.mobius_curve(IntMat2(-r1, 1, -1, 0), Curve(-1, 1))
        assert image == Curve(r1 + 1, 1)

    @pytest.mark.parametrize("k", range(-4, 5))
    def test_twist_on_meridian(self, k):
        image = exact.mobius_curve(IntMat2(1, 0, k, 1), Curve(1, 0))
        assert image == Curve(1, k)

    def test_singular_rejected(self):
        with pytest.raises(SingularMatrix):
            exact.mobius_curve(IntMat2(2, 0, 0, 1), Curve(1, 0))

    @given(st.data())
    def test_preserves_primitivity_and_inverts(self, data):
        m = unimodular(data.draw)
        p = data.draw(st.integers(-20, 20))
        q = data.draw(st.integers(-20, 20))
        from math import gcd

        if (p, q) == (0, 0) or gcd(p, q) != 1:
            return
        c = Curve(p, q)
        image = exact.mobius_curve(m, c)
        assert exact.mobius_curve(m.inverse(), image) == c

    def test_curve_slopes(self):
        assert Curve(1, 0).slope == 0  # meridian
        assert Curve(0, 1).slope is INF  # longitude
        assert Curve(-2, 5).slope == Fraction(-5, 2)

    def test_curve_validation(self):
        with pytest.raises(ValueError):
            Curve(0, 0)
        with pytest.raises(ValueError):
            Curve(2, 4)


class TestRationalParsing:
    @pytest.mark.parametrize(
        "text, value",
        [("-5/3", Fraction(-5, 3)), ("7", Fraction(7)), ("inf", INF), ("0", Fraction(0))],
    )
    def test_round_trip(self, text, value):
        parsed = exact.parse_rational(text)
        assert parsed == value
        assert exact.parse_rational(exact.format_rational(parsed)) == value

    @pytest.mark.parametrize("bad", ["5/0", "1.5.2", "", "one"])
    def test_rejects(self, bad):
        with pytest.raises(ParseError):
            exact.parse_rational(bad)


class TestIntMat2:
    def test_matmul_and_inverse(self):
        m = IntMat2(2, 1, 1, 1)
        assert m.det() == 1
        assert m @ m.inverse() == IntMat2.identity()
        assert m.inverse() @ m == IntMat2.identity()

    def test_inverse_requires_unimodular(self):
        with pytest.raises(SingularMatrix):
            IntMat2(2, 0, 0, 2).inverse()
