import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from smult.closed_forms import (
    BoundParams,
    MonomialPair,
    Quadric,
    Regular,
    RegularPower,
    ToricQuadric3,
    UnsupportedRing,
    Veronese,
    best_lower_bound,
    candidate_ts,
    dim3_pivot_t,
    es_closed_form,
    es_parameter_power,
    es_quadric,
    es_regular_power,
    es_regular_power_limit,
    es_veronese,
    hs_closed_form,
    lower_bound_main,
    lower_bound_trace,
    phi,
    small_s_bound,
)
from smult.exact import sqrt_exact
from smult.frobenius import MonomialIdeal
from smult.hs import hs_shifted, hs_value

pos_s = st.fractions(min_value=Fraction(1, 64), max_value=6, max_denominator=64)
GRID = [Fraction(k, 32) for k in range(1, 129)]


@pytest.mark.parametrize("d,n,s,expected", [
    (3, 1, Fraction(5, 3), 1),
    (2, 2, 2, 3),
    (1, 2, 1, 2),
])
def test_regular_power_examples(d, n, s, expected):
    assert es_regular_power(d, n, s) == expected


def test_regular_power_limit_examples():
    assert es_regular_power_limit(1, 2) == 1
    assert es_regular_power_limit(2, Fraction(3, 2)) == Fraction(4, 7)
    assert es_regular_power_limit(3, 4) == Fraction(1, 6)
    with pytest.raises(ValueError):
        es_regular_power_limit(2, 1)


def test_parameter_power_examples():
    assert es_parameter_power(2, 1, Fraction(7, 3), 6) == 6
    assert es_parameter_power(2, 2, 2, 2) == 6
    assert es_parameter_power(1, 3, 1, 1) == 3


def test_limit_rate_is_exact():
    # for d=2, s=3/2 and even n the deviation from the limit is exactly (4/7)/n
    for n in range(4, 257, 4):
        dev = es_regular_power(2, n, Fraction(3, 2)) / n**2 - es_regular_power_limit(2, Fraction(3, 2))
        assert dev == Fraction(4, 7) / n


def test_quadric_examples():
    for s in (Fraction(1, 3), Fraction(1)):
        assert es_quadric(3, s) == 2
    assert es_quadric(2, Fraction(3, 2)) == Fraction(12, 7)
    assert es_quadric(3, 2) == Fraction(8, 5)
    with pytest.raises(UnsupportedRing):
        es_quadric(4, 1)
    with pytest.raises(UnsupportedRing):
        Quadric(4)


def test_breakpoint_continuity():
    s = Fraction(3, 2)
    assert 2 - 2 * hs_shifted(2, s) / hs_value(2, s) == Fraction(3, 2) / hs_value(2, s) == Fraction(12, 7)
    s = Fraction(2)
    assert 2 - 2 * hs_shifted(3, s) / hs_value(3, s) == Fraction(4, 3) / hs_value(3, s) == Fraction(8, 5)
    for e in range(2, 51):
        s = Fraction(e + 1, e)
        h = hs_value(2, s)
        left = (e * h - (e * e - e) * hs_shifted(2, s)) / h
        assert left == Fraction(e + 1, 2) / h == es_veronese(e, s)


def test_veronese_examples():
    for s in (Fraction(3, 2), 2, Fraction(9, 4), 5):
        assert es_veronese(2, s) == es_quadric(2, s)
    assert es_veronese(3, Fraction(1, 2)) == 3 == es_veronese(3, 1)


@pytest.mark.parametrize("d", [2, 3])
def test_phi_agrees_with_quadric(d):
    for s in GRID:
        assert phi(s, d) == es_quadric(d, s)


def test_phi4_tail_constant():
    for s in (3, Fraction(7, 2), 5):
        assert phi(s, 4) == Fraction(115, 96) / hs_value(4, s)


def test_quadric_tails_reach_hk_multiplicity():
    assert es_quadric(2, 2) == es_quadric(2, 7) == Fraction(3, 2)
    assert es_quadric(3, 3) == es_quadric(3, 9) == Fraction(4, 3)


@given(st.integers(1, 5), pos_s)
def test_constancy_for_regular(d, s):
    assert es_regular_power(d, 1, s) == 1
    assert es_closed_form(Regular(d), s) == 1


@given(st.integers(1, 4), st.integers(0, 20), pos_s, pos_s)
def test_main_bound_normalized_at_most_one(d, r, a, b):
    t, s = sorted((a + 1, b + 1))
    assert lower_bound_main(BoundParams(1, d, r, t, s)) <= 1


@given(st.integers(1, 3), st.integers(1, 8), pos_s, st.integers(1, 5))
def test_parameter_sandwich(d, n, s, e):
    # e(I)/d! <= e_s(I) <= e(I) with e(I) = e * n^d for I = J^n
    v = es_parameter_power(d, n, s, e)
    big_e = e * n**d
    assert Fraction(big_e, math.factorial(d)) <= v <= big_e


def test_lower_bound_main_examples():
    for s in (Fraction(3, 2), 2, Fraction(11, 4)):
        target = Fraction(3, 2) / hs_value(2, s)
        assert lower_bound_main(BoundParams(2, 2, 1, Fraction(3, 2), s)) == target
        assert lower_bound_main(BoundParams(3, 2, 2, 1, s)) == target
    for d in (1, 2, 5):
        assert lower_bound_main(BoundParams(7, d, 3, 1, 1)) == 7
    with pytest.raises(ValueError):
        lower_bound_main(BoundParams(2, 2, 1, 2, Fraction(3, 2)))
    with pytest.raises(ValueError):
        lower_bound_main(BoundParams(2, 2, 1, Fraction(1, 2), 2))


@pytest.mark.parametrize("e", [2, 3, 7, 14, 47, 200])
def test_lower_bound_at_quadratic_t(e):
    t = dim3_pivot_t(e)
    root = sqrt_exact(e + 2)
    for s in (Fraction(2), Fraction(5, 2), Fraction(3)):
        if t > s:
            continue
        got = lower_bound_main(BoundParams(e, 3, e - 1, t, s))
        assert got == Fraction(e * (e + 2), 6) / ((root - 1) * (root - 1)) / hs_value(3, s)


def test_small_s_examples():
    # predicate: (3/2)^2 >= 6 (1/2)^2; value is the R_2 profile at 3/2
    assert small_s_bound(2, 3, Fraction(3, 2)) == Fraction(12, 7) == es_quadric(2, Fraction(3, 2))
    for d in (1, 3, 6):
        assert small_s_bound(d, 9, Fraction(2, 3)) == 2
    assert small_s_bound(4, 10, 2) is not None
    assert small_s_bound(4, 11, 2) is not None  # 16 >= 16, boundary case
    assert small_s_bound(4, 12, 2) is None
    assert small_s_bound(2, 2, Fraction(5, 2)) is None


def test_best_lower_bound_examples():
    for s in (Fraction(1, 2), Fraction(3, 2), 4):
        assert best_lower_bound(2, 4, s) >= 2
        assert best_lower_bound(3, 12, s) >= 2
        assert best_lower_bound(1, 2, s) == 2


@given(st.integers(1, 5), st.integers(2, 30), pos_s)
def test_best_lower_bound_floor_and_trace(d, e, s):
    tr = lower_bound_trace(d, e, s)
    assert tr.value >= Fraction(e, math.factorial(d))
    assert tr.value == max(v for _, v in tr.candidates)
    for _, t in candidate_ts(d, e, s, e - 1):
        assert 1 <= t <= s


def test_closed_form_dispatch():
    assert es_closed_form(Quadric(1), 3) == 2
    assert es_closed_form(RegularPower(2, 2), 2) == 3
    assert es_closed_form(Veronese(3), 1) == 3
    with pytest.raises(UnsupportedRing):
        es_closed_form(ToricQuadric3(), 2)
    assert hs_closed_form(ToricQuadric3(), 2) == Fraction(4, 3)
    m2 = MonomialIdeal.max_power(2, 2)
    assert hs_closed_form(MonomialPair(2, m2, m2), 2) == 3
    par = MonomialIdeal(2, ((2, 0), (0, 3)))
    assert hs_closed_form(MonomialPair(2, par, par), 1) == 3
