from fractions import Fraction

import pytest

from smult.closed_forms import best_lower_bound, es_quadric, es_veronese, lower_bound_trace, phi
from smult.exact import UniPoly
from smult.hs import hs_value
from smult.verify import (
    default_grid,
    dim3_pivot_value,
    explore_phi,
    polynomial_identity_in_e,
    verify_phi4,
    verify_veronese,
    verify_wy,
)

SMALL_GRID = default_grid(8, 32)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_wy_small_grid_passes(d):
    rep = verify_wy(d, range(2, 25), SMALL_GRID)
    assert rep.passed, rep.failures[:3]
    assert len(rep.points) == 23 * len(SMALL_GRID)


def test_wy_dim3_quadratic_pivot():
    assert best_lower_bound(3, 2, 2) >= es_quadric(3, 2) == Fraction(8, 5)
    for e in (2, 5, 40, 200):
        assert dim3_pivot_value(e) >= Fraction(4, 3)


def test_wy_dim1_uses_multiplicity():
    for e in (2, 3, 9):
        for s in SMALL_GRID:
            assert best_lower_bound(1, e, s) == e


def test_wy_rejects_bad_inputs():
    with pytest.raises(ValueError):
        verify_wy(4, [2], SMALL_GRID)
    with pytest.raises(ValueError):
        verify_wy(2, [1], SMALL_GRID)


def test_phi4_examples():
    H = lambda s: hs_value(4, s)  # noqa: E731
    assert best_lower_bound(4, 10, 3) >= Fraction(30, 24) / H(3) >= phi(3, 4)
    assert best_lower_bound(4, 29, 4) >= Fraction(29, 24) / H(4) >= phi(4, 4)
    assert best_lower_bound(4, 2, Fraction(5, 2)) >= phi(Fraction(5, 2), 4)
    rep = verify_phi4(range(2, 40), SMALL_GRID)
    assert rep.passed, rep.failures[:3]


def test_phi4_polynomial_identities():
    e = UniPoly.x()
    assert polynomial_identity_in_e(Fraction(2), Fraction(1)) == (e * 13 - e * e) * Fraction(1, 24)
    assert polynomial_identity_in_e(Fraction(3, 2), Fraction(1, 2)) == (e * 78 - e * e) * Fraction(1, 384)
    assert polynomial_identity_in_e(Fraction(1), Fraction(0)) == e * Fraction(1, 24)


def test_veronese_examples():
    for e, s in ((3, Fraction(5, 4)), (2, Fraction(3, 2))):
        strict = lower_bound_trace(2, e, s, "non_f_rational").value
        assert strict > es_veronese(e, s)
    rep = verify_veronese(range(2, 20), [1 + Fraction(k, 8) for k in range(1, 17)])
    assert rep.passed, rep.failures[:3]
    with pytest.raises(ValueError):
        verify_veronese([3], [Fraction(1)])


def test_report_is_deterministic_and_exact():
    a = verify_wy(2, range(2, 6), SMALL_GRID)
    b = verify_wy(2, reversed(range(2, 6)), list(reversed(SMALL_GRID)))
    assert a.to_dict()["points"] == b.to_dict()["points"]
    assert verify_wy(2, range(2, 6), SMALL_GRID).to_json() == a.to_json()
    # exact strings only, never floats
    for rec in a.to_dict()["points"]:
        assert "." not in rec["bound"] and "." not in rec["target"]


def test_failing_point_flips_overall_flag():
    rep = verify_wy(2, [2], [Fraction(1)])
    assert rep.passed
    rep.points[0].passed = False
    assert not rep.passed and rep.to_dict()["n_failed"] == 1


def test_explore_phi_has_no_verdict():
    rows = explore_phi(5, range(2, 4), default_grid(4, 8))
    assert rows and all("pass" not in r for r in rows)
    assert {"d", "e", "s", "bound_used", "margin"} == set(rows[0])
