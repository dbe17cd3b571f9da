"""Finite-q colengths lambda(R / (I^ceil(sq) + J^[q])) by direct enumeration.

Two families are supported: monomial ideal pairs in a power series ring and
the toric quadric ``k[[X,Y,Z,W]]/(XY - ZW)`` with ``I = J = m``.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Optional, Sequence

import numpy as np

from .closed_forms import (
    MonomialPair,
    Quadric,
    Regular,
    RegularPower,
    RingSpec,
    ToricQuadric3,
    UnsupportedRing,
    hs_closed_form,
)
from .exact import as_fraction, format_scalar
from .hs import hs_lattice_count, hs_value

MAX_EMAX_TORIC = 8
MAX_EMAX_REGULAR = 10
DEFAULT_MAX_POINTS = 10**8


class CapExceeded(ValueError):
    """An enumeration would exceed the configured size cap."""


class NotMPrimary(ValueError):
    pass


def max_points() -> int:
    return int(os.environ.get("SMULT_MAX_POINTS", DEFAULT_MAX_POINTS))


def _check_points(n: int) -> None:
    cap = max_points()
    if n > cap:
        raise CapExceeded(f"enumeration of {n} membership tests exceeds SMULT_MAX_POINTS={cap}")


# ---------------------------------------------------------------------------
# monomial ideals


def _minimalize(gens) -> tuple[tuple[int, ...], ...]:
    gens = sorted(set(tuple(int(x) for x in g) for g in gens), key=lambda g: (sum(g), g))
    keep: list[tuple[int, ...]] = []
    for g in gens:
        if not any(all(h_i <= g_i for h_i, g_i in zip(h, g)) for h in keep):
            keep.append(g)
    return tuple(sorted(keep))


@dataclass(frozen=True)
class MonomialIdeal:
    """Monomial ideal in ``nvars`` variables, stored by minimal generators."""

    nvars: int
    gens: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.nvars < 1:
            raise ValueError("need at least one variable")
        if any(len(g) != self.nvars or min(g) < 0 for g in self.gens):
            raise ValueError("generators must be nonnegative vectors of length nvars")
        if not self.gens:
            raise ValueError("the zero ideal is not supported")
        object.__setattr__(self, "gens", _minimalize(self.gens))

    @classmethod
    def maximal(cls, d: int) -> MonomialIdeal:
        return cls(d, tuple(tuple(int(i == j) for j in range(d)) for i in range(d)))

    @classmethod
    def max_power(cls, d: int, n: int) -> MonomialIdeal:
        gens = []
        for combo in combinations_with_replacement(range(d), n):
            g = [0] * d
            for i in combo:
                g[i] += 1
            gens.append(tuple(g))
        return cls(d, tuple(gens))

    @classmethod
    def from_json(cls, obj: dict) -> MonomialIdeal:
        return cls(int(obj["vars"]), tuple(tuple(g) for g in obj["gens"]))

    def to_json(self) -> dict:
        return {"vars": self.nvars, "gens": [list(g) for g in self.gens]}

    def pure_power(self, i: int) -> Optional[int]:
        """Least b with x_i^b in the ideal, or None."""
        best = None
        for g in self.gens:
            if all(x == 0 for j, x in enumerate(g) if j != i) and g[i] > 0:
                best = g[i] if best is None else min(best, g[i])
        return best

    @property
    def is_m_primary(self) -> bool:
        return all(self.pure_power(i) is not None for i in range(self.nvars))

    def is_power_of_max(self) -> bool:
        degs = {sum(g) for g in self.gens}
        if len(degs) != 1:
            return False
        return self == MonomialIdeal.max_power(self.nvars, degs.pop())

    def max_power_exponent(self) -> int:
        return sum(self.gens[0])

    def contains(self, a: Sequence[int]) -> bool:
        return any(all(g_i <= a_i for g_i, a_i in zip(g, a)) for g in self.gens)

    def contains_ideal(self, other: MonomialIdeal) -> bool:
        return all(self.contains(g) for g in other.gens)

    def box(self) -> tuple[int, ...]:
        if not self.is_m_primary:
            raise NotMPrimary(f"ideal {self.to_json()} is not m-primary")
        return tuple(self.pure_power(i) for i in range(self.nvars))


def _require_same_vars(*ideals: MonomialIdeal) -> int:
    d = {i.nvars for i in ideals}
    if len(d) != 1:
        raise ValueError("ideals live in different numbers of variables")
    return d.pop()


def member_power(I: MonomialIdeal, N: int, a: Sequence[int]) -> bool:
    """Whether x^a lies in I^N: some N generators (with repetition) sum to <= a."""
    a = tuple(int(x) for x in a)
    gens = I.gens

    @lru_cache(maxsize=None)
    def search(i: int, left: int, rest: tuple[int, ...]) -> bool:
        if left == 0:
            return True
        if i == len(gens):
            return False
        g = gens[i]
        cur = rest
        for used in range(left + 1):
            if search(i + 1, left - used, cur):
                return True
            if not all(gj <= cj for gj, cj in zip(g, cur)):
                return False
            cur = tuple(cj - gj for gj, cj in zip(g, cur))
        return False

    return N <= 0 or search(0, N, a)


def member_frobenius(J: MonomialIdeal, q: int, a: Sequence[int]) -> bool:
    """Whether x^a lies in J^[q]."""
    if q < 1:
        raise ValueError("q must be >= 1")
    return any(all(q * g_i <= a_i for g_i, a_i in zip(g, a)) for g in J.gens)


# ---------------------------------------------------------------------------
# box-wide order table


def _order_1d(g: int, base: np.ndarray) -> np.ndarray:
    # F[a] = max(base[a], F[a-g] + 1) solved per residue class by a running max
    out = np.empty_like(base)
    for r in range(min(g, base.shape[0])):
        x = base[r::g]
        k = np.arange(x.shape[0], dtype=base.dtype)
        out[r::g] = np.maximum.accumulate(x - k) + k
    return out


def _order_dp(gens: list[tuple[int, ...]], base: np.ndarray) -> np.ndarray:
    """F(a) = max(base(a), max_{g <= a} F(a - g) + 1) over the whole array."""
    if not gens:
        return base
    if base.ndim == 1:
        return _order_1d(gens[0][0], base)
    last = base.shape[-1]
    step = [g for g in gens if g[-1] > 0]
    flat = [g[:-1] for g in gens if g[-1] == 0]
    out = np.empty_like(base)
    for k in range(last):
        cur = base[..., k].copy()
        for g in step:
            if g[-1] > k:
                continue
            src = out[..., k - g[-1]]
            lead = tuple(slice(gi, None) for gi in g[:-1])
            tail = tuple(slice(0, src.shape[i] - gi) for i, gi in enumerate(g[:-1]))
            if any(gi >= src.shape[i] for i, gi in enumerate(g[:-1])):
                continue
            np.maximum(cur[lead], src[tail] + 1, out=cur[lead])
        out[..., k] = _order_dp(flat, cur)
    return out


def order_table(I: MonomialIdeal, shape: Sequence[int]) -> np.ndarray:
    """ord[a] = max{N : x^a in I^N} for every a in the box ``prod [0, shape_i)``."""
    return _order_dp(list(I.gens), np.zeros(tuple(shape), dtype=np.int32))


def frobenius_mask(J: MonomialIdeal, q: int, shape: Sequence[int]) -> np.ndarray:
    mask = np.zeros(tuple(shape), dtype=bool)
    axes = [np.arange(n) for n in shape]
    for g in J.gens:
        m = np.ones(tuple(shape), dtype=bool)
        for i, n in enumerate(shape):
            view = [1] * len(shape)
            view[i] = n
            m &= (axes[i] >= q * g[i]).reshape(view)
        mask |= m
    return mask


# ---------------------------------------------------------------------------
# colengths


@dataclass(frozen=True)
class ColengthResult:
    count: int
    q: int
    d: int

    @property
    def normalized(self) -> Fraction:
        return Fraction(self.count, self.q**self.d)

    def to_dict(self) -> dict:
        return {"count": self.count, "q": self.q, "normalized": format_scalar(self.normalized)}


def colength_pair(I: MonomialIdeal, J: MonomialIdeal, s, q: int) -> ColengthResult:
    """lambda(R / (I^ceil(sq) + J^[q])) in R = k[[x_1..x_d]]."""
    d = _require_same_vars(I, J)
    if not I.is_m_primary or not J.is_m_primary:
        raise NotMPrimary("colength needs m-primary ideals")
    if q < 1:
        raise ValueError("q must be >= 1")
    s = as_fraction(s)
    N = math.ceil(s * q)
    shape = tuple(q * b for b in J.box())
    _check_points(math.prod(shape))
    outside = ~frobenius_mask(J, q, shape)
    if N > 0:
        outside &= order_table(I, shape) < N
    else:
        outside[...] = False
    return ColengthResult(int(outside.sum()), q, d)


def standard_monomial_count(I: MonomialIdeal) -> int:
    """lambda(R/I): monomials outside I."""
    shape = I.box()
    _check_points(math.prod(shape))
    return int((~frobenius_mask(I, 1, shape)).sum())


def _slice_range(z: int, q: int, M: int) -> tuple[int, int]:
    # for z >= 0 the cones already remove x >= q and y >= q
    return max(0, -z), (min(M, q) if z >= 0 else M)


def _quadric3_slice(z: int, N: int, q: int, M: int) -> int:
    lo, hi = _slice_range(z, q, M)
    if lo >= hi:
        return 0
    x = np.arange(lo, hi).reshape(-1, 1)
    y = np.arange(lo, hi).reshape(1, -1)
    ok = x + y + z <= N - 1
    ok &= ~((x >= q) & (x + z >= q))
    ok &= ~((y >= q) & (y + z >= q))
    ok &= ~((x + z >= q) & (y + z >= q))
    ok &= ~((x >= q) & (y >= q))
    return int(ok.sum())


def colength_quadric3(s, q: int, workers: int = 1) -> ColengthResult:
    """Colength of m^ceil(sq) + m^[q] in k[[X,Y,Z,W]]/(XY - ZW) by lattice points.

    Semigroup points (x, y, z) satisfy x, y, x+z, y+z >= 0 with degree
    x + y + z; the four shifted cones are the generators' multiples.
    """
    if q < 1:
        raise ValueError("q must be >= 1")
    s = as_fraction(s)
    N = math.ceil(s * q)
    if N <= 0:
        return ColengthResult(0, q, 3)
    # outside the cones min(x, y) < q and x, y < 2q, -2q < z < q
    M = min(N, 2 * q)
    zs = range(-M + 1, min(N, q))
    _check_points(sum(max(0, hi - lo) ** 2 for lo, hi in (_slice_range(z, q, M) for z in zs)))
    if workers <= 1:
        total = sum(_quadric3_slice(z, N, q, M) for z in zs)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            total = sum(pool.map(lambda z: _quadric3_slice(z, N, q, M), zs))
    return ColengthResult(total, q, 3)


def monomial_pair_for(ring: RingSpec) -> tuple[MonomialIdeal, MonomialIdeal]:
    if isinstance(ring, MonomialPair):
        return ring.I, ring.J
    if isinstance(ring, Regular):
        m = MonomialIdeal.maximal(ring.d)
        return m, m
    if isinstance(ring, RegularPower):
        p = MonomialIdeal.max_power(ring.d, ring.n)
        return p, p
    raise UnsupportedRing(f"{type(ring).__name__} is not a monomial pair")


def colength(ring: RingSpec, s, q: int, workers: int = 1) -> ColengthResult:
    """Dispatch a finite-q colength query for any ring the oracle supports."""
    if isinstance(ring, ToricQuadric3) or (isinstance(ring, Quadric) and ring.d == 3):
        return colength_quadric3(s, q, workers)
    if isinstance(ring, Regular):
        return ColengthResult(hs_lattice_count(ring.d, s, q), q, ring.d)
    if isinstance(ring, (MonomialPair, RegularPower)):
        I, J = monomial_pair_for(ring)
        return colength_pair(I, J, s, q)
    raise UnsupportedRing(f"no lattice oracle for {type(ring).__name__}")


# ---------------------------------------------------------------------------
# convergence tables


@dataclass
class ConvergenceTable:
    s: Fraction
    d: int
    rows: list[ColengthResult]
    reference: Optional[Fraction]
    extrapolated: Fraction

    @property
    def es_estimate(self) -> Fraction:
        """Extrapolated h_s divided by H_s(d)."""
        return self.extrapolated / hs_value(self.d, self.s)

    def to_csv(self) -> str:
        lines = ["q,count,normalized,reference,abs_error"]
        ref = "" if self.reference is None else format_scalar(self.reference)
        for r in self.rows:
            err = "" if self.reference is None else format_scalar(abs(r.normalized - self.reference))
            lines.append(f"{r.q},{r.count},{format_scalar(r.normalized)},{ref},{err}")
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {
            "s": format_scalar(self.s),
            "d": self.d,
            "rows": [r.to_dict() for r in self.rows],
            "reference": None if self.reference is None else format_scalar(self.reference),
            "extrapolated": format_scalar(self.extrapolated),
            "extrapolated_float": float(self.extrapolated),
            "es_estimate": format_scalar(self.es_estimate),
        }


def extrapolate(rows: Sequence[ColengthResult]) -> Fraction:
    """Fit c0 + c1/q through the last two rows and return c0."""
    if len(rows) == 1:
        return rows[0].normalized
    a, b = rows[-2], rows[-1]
    return (b.q * b.normalized - a.q * a.normalized) / (b.q - a.q)


def converge_table(ring: RingSpec, s, emax: int, base: int = 2, workers: int = 1) -> ConvergenceTable:
    """Normalized colengths at q = base^1 .. base^emax, with a first-order extrapolation."""
    toric = isinstance(ring, (ToricQuadric3, Quadric))
    cap = MAX_EMAX_TORIC if toric else MAX_EMAX_REGULAR
    if emax < 1 or emax > cap:
        raise CapExceeded(f"emax must lie in 1..{cap} for this ring")
    if base < 2:
        raise ValueError("base must be >= 2")
    s = as_fraction(s)
    rows = [colength(ring, s, base**k, workers) for k in range(1, emax + 1)]
    return ConvergenceTable(s, ring.dim, rows, hs_closed_form(ring, s), extrapolate(rows))


# ---------------------------------------------------------------------------
# enlargement inequality probe


@dataclass
class EnlargementReport:
    s: Fraction
    q: int
    length_J_over_I: int
    es_I: Fraction
    es_J: Fraction
    es_I_m: Fraction
    slack: Fraction
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {k: format_scalar(v) for k, v in
               (("s", self.s), ("es_I", self.es_I), ("es_J", self.es_J),
                ("es_I_m", self.es_I_m), ("slack", self.slack))}
        out.update(q=self.q, length_J_over_I=self.length_J_over_I)
        return out


def probe_enlargement_inequality(I: MonomialIdeal, J: MonomialIdeal, s, q: int) -> EnlargementReport:
    """Finite-q slack of e_s(J) + lambda(J/I) e_s(I, m) - e_s(I).

    ``J`` must contain ``I``; that ``J`` lies in the integral closure of
    ``I`` is the caller's responsibility.
    """
    d = _require_same_vars(I, J)
    if not J.contains_ideal(I):
        raise ValueError("I must be contained in J")
    s = as_fraction(s)
    m = MonomialIdeal.maximal(d)
    h = hs_value(d, s)
    es_I = colength_pair(I, I, s, q).normalized / h
    es_J = colength_pair(J, J, s, q).normalized / h
    es_Im = colength_pair(I, m, s, q).normalized / h
    length = standard_monomial_count(I) - standard_monomial_count(J)
    slack = es_J + length * es_Im - es_I
    return EnlargementReport(s, q, length, es_I, es_J, es_Im, slack)
