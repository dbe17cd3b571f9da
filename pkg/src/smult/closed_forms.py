"""Closed-form s-multiplicity profiles and lower bounds.

Every function is exact: inputs may be rationals or quadratic numbers and
outputs are ``Fraction`` or ``QuadraticNumber``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .exact import ExactScalar, QuadraticNumber, as_fraction, format_scalar, sqrt_exact
from .hs import find_peak, hs_shifted, hs_value


class UnsupportedRing(ValueError):
    """No closed form is available for the requested ring."""


# ---------------------------------------------------------------------------
# ring descriptions


@dataclass(frozen=True)
class Regular:
    d: int

    @property
    def dim(self) -> int:
        return self.d


@dataclass(frozen=True)
class RegularPower:
    d: int
    n: int

    @property
    def dim(self) -> int:
        return self.d


@dataclass(frozen=True)
class Quadric:
    d: int

    def __post_init__(self):
        if self.d not in (1, 2, 3):
            raise UnsupportedRing(f"quadric R_{self.d}: only d <= 3 is supported")

    @property
    def dim(self) -> int:
        return self.d


@dataclass(frozen=True)
class Veronese:
    e: int

    def __post_init__(self):
        if self.e < 2:
            raise ValueError("Veronese degree must be >= 2")

    @property
    def dim(self) -> int:
        return 2


@dataclass(frozen=True)
class MonomialPair:
    d: int
    I: object  # frobenius.MonomialIdeal; typed loosely to avoid a cycle
    J: object

    @property
    def dim(self) -> int:
        return self.d


@dataclass(frozen=True)
class ToricQuadric3:
    @property
    def dim(self) -> int:
        return 3


RingSpec = Union[Regular, RegularPower, Quadric, Veronese, MonomialPair, ToricQuadric3]


def _exact(s) -> ExactScalar:
    return s if isinstance(s, QuadraticNumber) else as_fraction(s)


def _positive(s) -> ExactScalar:
    s = _exact(s)
    if s <= 0:
        raise ValueError(f"s must be positive, got {format_scalar(s)}")
    return s


# ---------------------------------------------------------------------------
# profiles


def es_regular_power(d: int, n: int, s) -> ExactScalar:
    """e_s of the n-th power of the maximal ideal of a d-dimensional regular ring."""
    if n < 1:
        raise ValueError("n must be >= 1")
    s = _positive(s)
    # terms with sn - a < 0 vanish (empty region)
    num = sum((math.comb(a + d - 1, d - 1) * hs_value(d, s * n - a) for a in range(n) if s * n - a > 0),
              Fraction(0))
    return num / hs_value(d, s)


def es_regular_power_limit(d: int, s) -> ExactScalar:
    """lim_n e_s(m^n)/n^d = 1/(d! H_s(d)), stated for s > 1."""
    s = _exact(s)
    if s <= 1:
        raise ValueError("the limit is only available for s > 1")
    return 1 / (math.factorial(d) * hs_value(d, s))


def es_parameter_power(d: int, n: int, s, e_mult: int) -> ExactScalar:
    """e_s(J^n) for a parameter ideal J with e(J) = e_mult."""
    return es_regular_power(d, n, s) * e_mult


def es_quadric(d: int, s) -> ExactScalar:
    """e_s(R_d) for the quadric hypersurface R_d, d in {2, 3}."""
    if d not in (2, 3):
        raise UnsupportedRing(f"no closed form for e_s(R_{d}); only d = 2, 3")
    s = _positive(s)
    h = hs_value(d, s)
    if s <= Fraction(d + 1, 2):
        return 2 - 2 * hs_shifted(d, s) / h
    return Fraction(d + 1, d) / h


def es_veronese(e: int, s) -> ExactScalar:
    """e_s of the e-th Veronese subring of k[[x, y]]."""
    if e < 2:
        raise ValueError("Veronese degree must be >= 2")
    s = _positive(s)
    h = hs_value(2, s)
    if s <= Fraction(e + 1, e):
        return (e * h - (e * e - e) * hs_shifted(2, s)) / h
    return Fraction(e + 1, 2) / h


def phi(s, d: int) -> ExactScalar:
    """Conjectural quadric profile: equals e_s(R_d) for d = 2, 3."""
    s = _positive(s)
    h = hs_value(d, s)
    mid = Fraction(d + 1, 2)
    if s <= mid:
        return 2 - 2 * hs_shifted(d, s) / h
    return (2 * hs_value(d, mid) - 2 * hs_shifted(d, mid)) / h


# ---------------------------------------------------------------------------
# bounds


@dataclass(frozen=True)
class BoundParams:
    e_mult: int
    d: int
    r: int
    t: ExactScalar
    s: ExactScalar


def lower_bound_main(p: BoundParams) -> ExactScalar:
    """``(H_t(d) - r*H_{t-1}(d)) / H_s(d) * e`` for 1 <= t <= s; may be negative."""
    t, s = _exact(p.t), _exact(p.s)
    if t < 1 or t > s:
        raise ValueError(f"need 1 <= t <= s, got t={format_scalar(t)}, s={format_scalar(s)}")
    if p.r < 0:
        raise ValueError("r must be nonnegative")
    return (hs_value(p.d, t) - p.r * hs_shifted(p.d, t)) / hs_value(p.d, s) * p.e_mult


def small_s_applies(d: int, e_mult: int, s) -> bool:
    """s <= 2 and (s <= 1 or s^d >= (d+e+1)(s-1)^d): the radical threshold, exactly."""
    s = _exact(s)
    if s > 2:
        return False
    return s <= 1 or s**d >= (d + e_mult + 1) * (s - 1) ** d


def small_s_bound(d: int, e_mult: int, s) -> Optional[ExactScalar]:
    s = _positive(s)
    if not small_s_applies(d, e_mult, s):
        return None
    return 2 - 2 * hs_shifted(d, s) / hs_value(d, s)


def dim3_pivot_t(e_mult: int) -> ExactScalar:
    """sqrt(e+2) / (sqrt(e+2) - 1)."""
    root = sqrt_exact(e_mult + 2)
    return root / (root - 1)


def resolve_r(e_mult: int, r_mode: Union[str, int]) -> int:
    if r_mode == "f_rational":
        return max(e_mult - 1, 0)
    if r_mode == "non_f_rational":
        return max(e_mult - 2, 0)
    if isinstance(r_mode, int) and r_mode >= 0:
        return r_mode
    raise ValueError(f"bad r_mode {r_mode!r}")


def candidate_ts(d: int, e_mult: int, s, r: int) -> list[tuple[str, ExactScalar]]:
    """Labelled choices of t, each already capped at s; those below 1 dropped."""
    s = _exact(s)
    raw: list[tuple[str, ExactScalar]] = [("t=(d+1)/2", Fraction(d + 1, 2)), ("t=1", Fraction(1))]
    if r >= 1:
        lo, hi = find_peak(d, r)
        raw.append(("t=peak", (lo + hi) / 2))
    if d == 2:
        raw += [("t=3/2", Fraction(3, 2)), ("t=(e+1)/e", Fraction(e_mult + 1, e_mult))]
    elif d == 3:
        raw.append(("t=sqrt(e+2)/(sqrt(e+2)-1)", dim3_pivot_t(e_mult)))
    elif d == 4:
        raw += [(f"t={format_scalar(v)}", v) for v in (Fraction(3, 2), Fraction(2), Fraction(5, 2))]
    out, seen = [], set()
    for label, t in raw:
        if t > s:
            label, t = f"{label} capped to s", s
        if t < 1 or t in seen:
            continue
        seen.add(t)
        out.append((label, t))
    return out


@dataclass
class BoundTrace:
    value: ExactScalar
    label: str
    candidates: list[tuple[str, ExactScalar]] = field(default_factory=list)


def lower_bound_trace(d: int, e_mult: int, s, r_mode: Union[str, int] = "f_rational") -> BoundTrace:
    """Best available lower bound together with every candidate considered."""
    s = _positive(s)
    r = resolve_r(e_mult, r_mode)
    cands: list[tuple[str, ExactScalar]] = [("e/d!", Fraction(e_mult, math.factorial(d)))]
    small = small_s_bound(d, e_mult, s)
    if small is not None:
        cands.append(("small-s", small))
    for label, t in candidate_ts(d, e_mult, s, r):
        cands.append((f"main[{label}, r={r}]", lower_bound_main(BoundParams(e_mult, d, r, t, s))))
    label, value = cands[0]
    for lab, v in cands[1:]:
        if v > value:
            label, value = lab, v
    return BoundTrace(value, label, cands)


def best_lower_bound(d: int, e_mult: int, s, r_mode: Union[str, int] = "f_rational") -> ExactScalar:
    return lower_bound_trace(d, e_mult, s, r_mode).value


def es_closed_form(ring: RingSpec, s) -> ExactScalar:
    """e_s for rings with a closed form; raises ``UnsupportedRing`` otherwise."""
    if isinstance(ring, Regular):
        _positive(s)
        return Fraction(1)
    if isinstance(ring, RegularPower):
        return es_regular_power(ring.d, ring.n, s)
    if isinstance(ring, Quadric):
        if ring.d == 1:
            _positive(s)
            return Fraction(2)
        return es_quadric(ring.d, s)
    if isinstance(ring, Veronese):
        return es_veronese(ring.e, s)
    raise UnsupportedRing(f"no closed form for {type(ring).__name__}; use the 'converge' command")


def hs_closed_form(ring: RingSpec, s) -> Optional[ExactScalar]:
    """Closed-form h_s = e_s * H_s(d) where one is known, else None."""
    s = _positive(s)
    if isinstance(ring, ToricQuadric3):
        return es_quadric(3, s) * hs_value(3, s)
    if isinstance(ring, MonomialPair):
        I, J = ring.I, ring.J
        if I == J and all(sum(1 for x in g if x) == 1 for g in I.gens) and len(I.gens) == ring.d:
            # parameter monomial ideal: e_s = e = product of pure-power degrees
            return hs_value(ring.d, s) * math.prod(max(g) for g in I.gens)
        if I == J and I.is_power_of_max():
            return es_regular_power(ring.d, I.max_power_exponent(), s) * hs_value(ring.d, s)
        return None
    try:
        return es_closed_form(ring, s) * hs_value(ring.dim, s)
    except UnsupportedRing:
        return None
