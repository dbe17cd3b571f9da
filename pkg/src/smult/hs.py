"""The normalizing function H_s(d) and the difference profiles f_{d,r}.

``H_s(d)`` is the volume of ``{x in [0,1]^d : x_1 + ... + x_d < s}``:

    H_s(d) = sum_{i=0}^{floor(s)} (-1)^i / d! * C(d, i) * (s - i)^d

and ``f_{d,r}(s) = H_s(d) - r*H_{s-1}(d)`` (with ``H`` of a negative
argument taken as 0).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exact import (
    ExactScalar,
    PiecewisePoly,
    QuadraticNumber,
    UniPoly,
    as_fraction,
    format_scalar,
    pw_root_bracket,
    pw_shift,
)


def _check_dim(d: int) -> int:
    if int(d) != d or d < 1:
        raise ValueError(f"dimension must be an integer >= 1, got {d!r}")
    return int(d)


def _exact(s) -> ExactScalar:
    return s if isinstance(s, QuadraticNumber) else as_fraction(s)


@lru_cache(maxsize=65536)
def _hs_cached(d: int, s: ExactScalar) -> ExactScalar:
    if s == 0:
        return Fraction(0)
    if s >= d:
        return Fraction(1)
    top = math.floor(s)
    total: ExactScalar = Fraction(0)
    for i in range(top + 1):
        term = (s - i) ** d * math.comb(d, i)
        total = total - term if i % 2 else total + term
    return total / math.factorial(d)


def hs_value(d: int, s) -> ExactScalar:
    """Exact ``H_s(d)`` for rational or quadratic ``s >= 0``."""
    d = _check_dim(d)
    s = _exact(s)
    if s < 0:
        raise ValueError(f"H_s(d) needs s >= 0, got {format_scalar(s)}")
    return _hs_cached(d, s)


def hs_shifted(d: int, s) -> ExactScalar:
    """``H_{s-1}(d)``, zero when ``s <= 1``."""
    s = _exact(s)
    return hs_value(d, s - 1) if s > 1 else Fraction(0)


@lru_cache(maxsize=None)
def hs_piecewise(d: int) -> PiecewisePoly:
    """``s -> H_s(d)`` with breakpoints 0, 1, ..., d and constant 1 from d on."""
    d = _check_dim(d)
    fact = math.factorial(d)
    pieces = []
    acc = UniPoly()
    for k in range(d):
        term = UniPoly.x().shift(k) ** d * Fraction((-1) ** k * math.comb(d, k), fact)
        acc = acc + term
        pieces.append(acc)
    pieces.append(UniPoly.const(1))
    return PiecewisePoly(tuple(Fraction(k) for k in range(d + 1)), tuple(pieces))


@dataclass(frozen=True)
class DifferenceProfile:
    d: int
    r: int
    profile: PiecewisePoly

    def __call__(self, s):
        return self.profile(s)


@lru_cache(maxsize=None)
def f_profile(d: int, r: int) -> DifferenceProfile:
    """``f_{d,r}(s) = H_s(d) - r*H_{s-1}(d)`` as an exact piecewise polynomial."""
    d = _check_dim(d)
    if r < 0:
        raise ValueError("r must be nonnegative")
    h = hs_piecewise(d)
    return DifferenceProfile(d, r, h - pw_shift(h, 1) * r)


@lru_cache(maxsize=4096)
def find_peak(d: int, r: int, tol=Fraction(1, 2**20)) -> tuple[Fraction, Fraction]:
    """Bracket ``[l, h]`` of width <= tol around the maximizer of f_{d,r} on (0, d+1).

    Bisects the sign change of the derivative ``f'_{d,r}``, which is
    positive at 1/2 and negative at d + 1/2.
    """
    if r < 1:
        raise ValueError("find_peak needs r >= 1")
    deriv = f_profile(d, r).profile.derivative()
    return pw_root_bracket(deriv, Fraction(1, 2), Fraction(2 * d + 1, 2), as_fraction(tol))


def _sum_distribution(d: int, q: int) -> list[int]:
    """counts[m] = #{a in {0..q-1}^d : sum(a) = m}."""
    dist = [1]
    for _ in range(d):
        prefix = [0]
        for c in dist:
            prefix.append(prefix[-1] + c)
        n = len(dist) + q - 1
        dist = [prefix[min(m + 1, len(dist))] - prefix[max(m - q + 1, 0)] for m in range(n)]
    return dist


def hs_lattice_count(d: int, s, q: int) -> int:
    """#{a in {0,...,q-1}^d : a_1 + ... + a_d <= ceil(s*q) - 1}.

    This is the colength of ``m^ceil(sq) + m^[q]`` in a d-variable power
    series ring.  Counted slice by slice through the distribution of
    coordinate sums rather than point by point.
    """
    d = _check_dim(d)
    if q < 1:
        raise ValueError("q must be >= 1")
    s = as_fraction(s)
    if s < 0:
        raise ValueError("s must be nonnegative")
    top = math.ceil(s * q) - 1
    if top < 0:
        return 0
    return sum(_sum_distribution(d, q)[: top + 1])
