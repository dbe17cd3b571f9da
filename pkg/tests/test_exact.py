import math
import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from smult.exact import (
    NoSignChange,
    PiecewisePoly,
    QuadraticNumber,
    UniPoly,
    format_scalar,
    parse_scalar,
    pw_combine,
    pw_eval,
    pw_integrate,
    pw_root_bracket,
    qnum,
    quad_sign,
    sqrt_exact,
)
from smult.hs import f_profile, hs_piecewise

fracs = st.fractions(min_value=-50, max_value=50, max_denominator=60)
nonneg = st.fractions(min_value=0, max_value=8, max_denominator=64)
polys = st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=12), max_size=5).map(
    lambda c: UniPoly(tuple(c)))


@st.composite
def piecewise(draw):
    cuts = draw(st.lists(st.fractions(min_value=Fraction(1, 8), max_value=6, max_denominator=8),
                         unique=True, max_size=4))
    bps = [Fraction(0)] + sorted(cuts)
    pieces = [draw(polys) for _ in bps]
    return PiecewisePoly(tuple(bps), tuple(pieces))


@st.composite
def quads(draw, n=None):
    n = draw(st.sampled_from([2, 3, 5, 6, 7])) if n is None else n
    return qnum(draw(fracs), draw(fracs), n)


# -- quad_sign ---------------------------------------------------------------


@pytest.mark.parametrize("a,b,n,expected", [(0, 0, 7, 0), (-1, 1, 2, 1), (3, -2, 3, -1)])
def test_quad_sign_examples(a, b, n, expected):
    assert quad_sign(QuadraticNumber(a, b, n)) == expected


def test_quad_sign_matches_interval_evaluation():
    rng = random.Random(20261018)
    mpmath.iv.prec = 200
    for _ in range(10_000):
        a = Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 10**4))
        b = Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 10**4))
        n = rng.randint(0, 10**4)
        if rng.random() < 0.1:
            # force near-cancellation: a close to -b*sqrt(n)
            n = rng.choice([2, 3, 5, 7, 11]) * rng.randint(1, 30) ** 2
            a = -b * Fraction(math.isqrt(n * 10**12), 10**6)
        x = QuadraticNumber(a, b, n)
        iv = mpmath.iv.mpf(a.numerator) / a.denominator + \
            mpmath.iv.mpf(b.numerator) / b.denominator * mpmath.iv.sqrt(n)
        if iv.a > 0:
            assert quad_sign(x) == 1
        elif iv.b < 0:
            assert quad_sign(x) == -1
        else:
            assert quad_sign(x) == 0 and a * a == b * b * n and a * b <= 0


def test_perfect_square_radicand_normalizes():
    assert qnum(1, 2, 9) == Fraction(7)
    assert isinstance(qnum(1, 2, 9), Fraction)
    assert isinstance(sqrt_exact(4) / (sqrt_exact(4) - 1), Fraction)
    x = qnum(0, 1, 8)
    assert (x.b, x.n) == (2, 2)


def test_mixed_radicands_rejected():
    with pytest.raises(ValueError):
        sqrt_exact(2) + sqrt_exact(3)


@given(quads(n=6), quads(n=6), quads(n=6))
def test_quadratic_field_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    if y != 0:
        assert (x / y) * y == x


@given(quads())
def test_quadratic_floor_is_exact(x):
    k = math.floor(x)
    assert k <= x < k + 1
    assert math.ceil(x) - 1 < x <= math.ceil(x)


@given(fracs, fracs)
def test_scalar_serialization_roundtrip(a, b):
    for x in (a, qnum(a, b, 7)):
        assert parse_scalar(format_scalar(x)) == x
    assert format_scalar(Fraction(3)) == "3"
    assert format_scalar(Fraction(-3, 4)) == "-3/4"
    assert format_scalar(QuadraticNumber(1, Fraction(1, 2), 3)) == "1+1/2*sqrt(3)"


# -- polynomials --------------------------------------------------------------


@given(polys, polys, polys)
def test_unipoly_ring_axioms(p, q, r):
    assert (p + q) * r == p * r + q * r
    assert (p * q) * r == p * (q * r)
    assert p - p == UniPoly()


@given(polys)
def test_antiderivative_then_derivative_is_identity(p):
    assert p.antiderivative().derivative() == p


@given(polys, fracs)
def test_shift_matches_evaluation(p, x):
    assert p.shift(1)(x) == p(x - 1)
    assert p.compose_affine(2, -3)(x) == p(2 - 3 * x)


# -- piecewise ----------------------------------------------------------------


def test_pw_eval_examples():
    assert pw_eval(hs_piecewise(1), Fraction(1, 2)) == Fraction(1, 2)
    assert pw_eval(hs_piecewise(2), Fraction(3, 2)) == Fraction(7, 8)
    assert pw_eval(PiecewisePoly.constant(1), 100) == 1
    with pytest.raises(ValueError):
        pw_eval(hs_piecewise(2), Fraction(-1, 3))


def test_pw_eval_at_quadratic_point():
    t = sqrt_exact(2)  # in [1, 2)
    assert pw_eval(hs_piecewise(2), t) == 1 - (2 - t) * (2 - t) / 2


def test_pw_combine_examples():
    h1, h2 = hs_piecewise(1), hs_piecewise(2)
    assert pw_combine("shift", h1)(Fraction(3, 2)) == Fraction(1, 2)
    zero = pw_combine("subtract", h2, h2)
    assert zero.pieces == (UniPoly(),) and zero.breakpoints == (0,)
    f11 = pw_combine("subtract", h1, pw_combine("shift", h1))
    assert f11(Fraction(3, 2)) == Fraction(1, 2)


@given(piecewise(), piecewise(), nonneg)
def test_pw_combine_pointwise(f, g, s):
    assert (f + g)(s) == f(s) + g(s)
    assert (f - g)(s) == f(s) - g(s)
    assert (f * g)(s) == f(s) * g(s)
    assert (f * Fraction(3, 7))(s) == f(s) * Fraction(3, 7)
    shifted = pw_combine("shift", f)(s)
    assert shifted == (f(s - 1) if s >= 1 else 0)


@given(piecewise())
def test_canonical_form_is_idempotent(f):
    g = PiecewisePoly(f.breakpoints, f.pieces)
    assert g == f
    assert all(p != q for p, q in zip(f.pieces, f.pieces[1:]))


def test_pw_integrate_examples():
    assert pw_integrate(PiecewisePoly.constant(0), 0, 5) == 0
    assert pw_integrate(hs_piecewise(1), 0, 1) == Fraction(1, 2)
    s = Fraction(3, 2)
    sq = PiecewisePoly((Fraction(0),), (UniPoly((-(2 - s), 1)) ** 2,))
    assert pw_integrate(sq, 2 - s, 1) == Fraction(1, 24) == (s - 1) ** 3 / 3


@given(piecewise(), nonneg, nonneg, nonneg)
def test_integral_is_additive(f, a, b, c):
    lo, mid, hi = sorted((a, b, c))
    assert pw_integrate(f, lo, hi) == pw_integrate(f, lo, mid) + pw_integrate(f, mid, hi)


def test_root_bracket_examples():
    lo, hi = pw_root_bracket(UniPoly((Fraction(-1, 2), 1)), 0, 1, Fraction(1, 16))
    assert lo <= Fraction(1, 2) <= hi and hi - lo <= Fraction(1, 16)
    d21 = f_profile(2, 1).profile.derivative()
    lo, hi = pw_root_bracket(d21, 1, 3, Fraction(1, 2**20))
    assert lo <= Fraction(3, 2) <= hi


def test_root_bracket_on_f32_derivative_certified_by_signs():
    d32 = f_profile(3, 2).profile.derivative()
    tol = Fraction(1, 2**20)
    lo, hi = pw_root_bracket(d32, 1, 4, tol)
    assert hi - lo <= tol
    assert lo == hi and d32(lo) == 0 or quad_sign(d32(lo)) > 0 > quad_sign(d32(hi))


def test_root_bracket_reports_missing_sign_change():
    with pytest.raises(NoSignChange):
        pw_root_bracket(UniPoly((1, 1)), 0, 1, Fraction(1, 8))
