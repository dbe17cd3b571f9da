"""Volume of the region U in the dual cone of k[[X,Y,Z,W]]/(XY - ZW).

For 1 <= s <= 2, U is the set of (x, y, z) with

    x, y, x+z, y+z >= 0,   x + y + z <= s,
    (x < 1 and y+z < 1) or (y < 1 and x+z < 1).

Its volume is h_s of the quadric and is computed exactly by integrating
slice areas in z, or estimated by seeded Monte Carlo sampling.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .exact import PiecewisePoly, UniPoly, as_fraction, format_scalar, pw_integrate
from .hs import hs_piecewise, hs_value

BOX_VOLUME = 16
_DENOM = 2**53


@dataclass(frozen=True)
class Point3:
    x: Fraction
    y: Fraction
    z: Fraction


@dataclass(frozen=True)
class RegionU:
    s: Fraction

    def __post_init__(self):
        s = as_fraction(self.s)
        if not 1 <= s <= 2:
            raise ValueError(f"region U is defined for 1 <= s <= 2, got {s}")
        object.__setattr__(self, "s", s)

    def __contains__(self, p: Point3) -> bool:
        return in_U(self, p)


def in_U(region: RegionU, p: Point3) -> bool:
    x, y, z = (as_fraction(c) for c in (p.x, p.y, p.z))
    if min(x, y, x + z, y + z) < 0 or x + y + z > region.s:
        return False
    return (x < 1 and y + z < 1) or (y < 1 and x + z < 1)


def _check_s(s) -> Fraction:
    s = as_fraction(s)
    if not 1 <= s <= 2:
        raise ValueError(f"s must lie in [1, 2], got {s}")
    return s


def slice_area(s, z) -> Fraction:
    """Area of the z-slice of U for 0 <= z <= 1: H_{s-z}(2) minus the corner triangle."""
    s, z = _check_s(s), as_fraction(z)
    if not 0 <= z <= 1:
        raise ValueError("slice_area needs 0 <= z <= 1")
    corner = Fraction(0)
    if z > 2 - s:
        corner = z * z * hs_value(2, 1 - (2 - s) / z)
    return hs_value(2, s - z) - corner


def slice_integrand(s) -> PiecewisePoly:
    """z -> slice_area(s, z) on [0, 1] as an exact piecewise polynomial (0 beyond 1)."""
    s = _check_s(s)
    h2 = hs_piecewise(2)
    corner = UniPoly((-(2 - s), 1)) ** 2 * Fraction(1, 2)
    cuts = sorted({Fraction(0), s - 1, 2 - s} - {Fraction(1)})
    pieces = []
    for a, b in zip(cuts, cuts[1:] + [Fraction(1)]):
        mid = (a + b) / 2
        # s - z runs over [s-1, s]; pick the H_.(2) piece active at the midpoint
        poly = h2.piece_at(s - mid).compose_affine(s, -1)
        if mid > 2 - s:
            poly = poly - corner
        pieces.append(poly)
    return PiecewisePoly(tuple(cuts) + (Fraction(1),), tuple(pieces) + (UniPoly(),))


def vol_U_exact(s) -> Fraction:
    """Exact vol(U) = 2 * int_0^1 slice_area(s, z) dz."""
    return 2 * pw_integrate(slice_integrand(s), 0, 1)


@dataclass(frozen=True)
class MCEstimate:
    s: Fraction
    samples: int
    hits: int
    estimate: float
    stderr: float

    def to_dict(self, exact: Optional[Fraction] = None) -> dict:
        out = {"s": format_scalar(self.s), "mc": self.estimate, "stderr": self.stderr}
        if exact is not None:
            out["exact"] = format_scalar(exact)
        return out


def sample_block(seed: int, start: int, count: int) -> np.ndarray:
    """Samples start .. start+count-1 as integers in [0, 2^53) per coordinate.

    Sample i is drawn from Philox counter block i under key ``seed``, so any
    split of the index range reproduces the same points.
    """
    bg = np.random.Philox(key=seed & (2**64 - 1))
    if start:
        bg.advance(start)
    raw = bg.random_raw(4 * count).reshape(count, 4)[:, :3]
    return (raw >> np.uint64(11)).astype(np.int64)


def _count_hits(s: float, seed: int, start: int, count: int, z_sign: int) -> int:
    u = sample_block(seed, start, count).astype(np.float64) / _DENOM
    x, y, z = 2 * u[:, 0], 2 * u[:, 1], 4 * u[:, 2] - 2
    ok = (x + z >= 0) & (y + z >= 0) & (x + y + z <= s)
    ok &= ((x < 1) & (y + z < 1)) | ((y < 1) & (x + z < 1))
    if z_sign > 0:
        ok &= z > 0
    elif z_sign < 0:
        ok &= z < 0
    return int(ok.sum())


def vol_U_mc(s, samples: int, seed: int, workers: int = 1, z_sign: int = 0,
             chunk: int = 1 << 18) -> MCEstimate:
    """Monte Carlo vol(U) from uniform samples in [0,2] x [0,2] x [-2,2].

    ``z_sign`` restricts the count to z > 0 (+1) or z < 0 (-1).
    """
    s = _check_s(s)
    if samples < 1:
        raise ValueError("samples must be >= 1")
    sf = float(s)
    spans = [(a, min(chunk, samples - a)) for a in range(0, samples, chunk)]
    if workers <= 1:
        hits = sum(_count_hits(sf, seed, a, n, z_sign) for a, n in spans)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            hits = sum(pool.map(lambda span: _count_hits(sf, seed, *span, z_sign), spans))
    p = hits / samples
    return MCEstimate(s, samples, hits, BOX_VOLUME * p, BOX_VOLUME * math.sqrt(p * (1 - p) / samples))
