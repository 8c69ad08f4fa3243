"""Differential tests between the compiled kernel and its pure twin."""

from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from contactsurgery import _cfcore_py as pure
from contactsurgery import exact

fast = pytest.importorskip(
    "contactsurgery._cfcore", reason="compiled kernel not built"
)

# values grow like the product of the entries; -9^12 stays inside int64
small_chains = st.lists(st.integers(-9, -2), min_size=1, max_size=12)
# these routinely overflow the compiled kernel, forcing the fallback
big_chains = st.lists(st.integers(-(10**5), -2), min_size=1, max_size=20)


def test_backend_reports_compiled():
    assert exact.kernel_backend() == "compiled"


# expansion length is linear in the denominator, so stay at desk scale
@given(st.integers(-3000, -1), st.integers(1, 3000))
def test_expand_agrees(p, q):
    g = gcd(p, q)
    p, q = p // g, q // g
    assert fast.neg_cf_expand(p, q) == pure.neg_cf_expand(p, q)


@given(small_chains)
def test_eval_agrees(entries):
    assert fast.cf_eval(entries) == pure.cf_eval(entries)


@given(small_chains)
def test_chain_product_agrees(rs):
    assert fast.chain_product(rs) == pure.chain_product(rs)


@given(small_chains)
def test_boundary_solve_agrees(rs):
    assert fast.boundary_solve(rs) == pure.boundary_solve(rs)


@given(big_chains)
def test_wrapper_matches_pure_on_any_chain(rs):
    m = exact.chain_matrix(rs)
    assert (m.a, m.b, m.c, m.d) == pure.chain_product(rs)
    x, y = pure.boundary_solve(rs)
    assert exact.boundary_slope(rs) == Fraction(y, x)


def test_fast_kernel_overflows_loudly():
    with pytest.raises(OverflowError):
        fast.neg_cf_expand(-3 * 2**80 - 1, 3)
    with pytest.raises(OverflowError):
        fast.chain_product([-(2**40)] * 4)


def test_wrapper_falls_back_on_overflow():
    # -2^80 - 1/3 has the short expansion [-2^80 - 1, -2, -2]
    r = Fraction(-3 * 2**80 - 1, 3)
    entries = exact.neg_cf_expand(r)
    assert entries == pure.neg_cf_expand(r.numerator, r.denominator)
    assert entries == [-(2**80) - 1, -2, -2]
    assert exact.cf_eval(entries) == r

    rs = [-(2**40)] * 4
    m = exact.chain_matrix(rs)
    assert (m.a, m.b, m.c, m.d) == pure.chain_product(rs)
    assert m.det() == 1


def test_zero_division_matches():
    with pytest.raises(ZeroDivisionError):
        fast.cf_eval([5, 1, 1])
    with pytest.raises(ZeroDivisionError):
        pure.cf_eval([5, 1, 1])
