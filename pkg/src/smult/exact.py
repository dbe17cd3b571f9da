"""Exact scalars, univariate polynomials and piecewise polynomials.

Rationals are plain :class:`fractions.Fraction`.  Real quadratic numbers
``a + b*sqrt(n)`` are :class:`QuadraticNumber`; any arithmetic whose result
has a zero irrational part collapses back to a ``Fraction``.
"""

from __future__ import annotations

import bisect
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Callable, Iterable, Union

ExactScalar = Union[Fraction, "QuadraticNumber"]


class NoSignChange(ValueError):
    """Raised when a bracket does not straddle a root."""


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


def _squarefree_split(n: int) -> tuple[int, int]:
    """Return (k, m) with n = k*k*m and m squarefree."""
    k, m = 1, n
    r = math.isqrt(m)
    if r * r == m:
        return r, 1
    p = 2
    while p * p <= m:
        while m % (p * p) == 0:
            m //= p * p
            k *= p
        p += 1 if p == 2 else 2
    return k, m


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def quad_sign(x) -> int:
    """Exact sign of a rational or of ``a + b*sqrt(n)``."""
    if not isinstance(x, QuadraticNumber):
        return _sign(as_fraction(x))
    sa, sb = _sign(x.a), _sign(x.b)
    if x.n == 0 or sb == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb
    lhs, rhs = x.a * x.a, x.b * x.b * x.n
    if lhs > rhs:
        return sa
    if lhs < rhs:
        return sb
    return 0


class QuadraticNumber:
    """The real number ``a + b*sqrt(n)`` with rational a, b and integer n >= 0.

    Only values sharing a radicand combine; mixing radicands raises
    ``ValueError``.  Use :func:`qnum` to build normalized values.
    """

    __slots__ = ("a", "b", "n")

    def __init__(self, a, b, n: int):
        if n < 0:
            raise ValueError("radicand must be nonnegative")
        self.a = as_fraction(a)
        self.b = as_fraction(b)
        self.n = int(n)

    # -- helpers -------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, QuadraticNumber):
            if other.n != self.n:
                raise ValueError(f"mixed radicands sqrt({self.n}) and sqrt({other.n})")
            return other.a, other.b
        if isinstance(other, (int, Rational)):
            return Fraction(other), Fraction(0)
        return None

    def conjugate(self) -> QuadraticNumber:
        return QuadraticNumber(self.a, -self.b, self.n)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.n

    # -- arithmetic ----------------------------------------------------
    def __add__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return qnum(self.a + c[0], self.b + c[1], self.n)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticNumber(-self.a, -self.b, self.n)

    def __pos__(self):
        return self

    def __sub__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return qnum(self.a - c[0], self.b - c[1], self.n)

    def __rsub__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return qnum(c[0] - self.a, c[1] - self.b, self.n)

    def __mul__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        a, b = c
        return qnum(self.a * a + self.b * b * self.n, self.a * b + self.b * a, self.n)

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        a, b = c
        den = a * a - b * b * self.n
        if den == 0:
            raise ZeroDivisionError("division by zero quadratic number")
        # (x)(a - b r) / (a^2 - b^2 n)
        num_a = self.a * a - self.b * b * self.n
        num_b = self.b * a - self.a * b
        return qnum(num_a / den, num_b / den, self.n)

    def __rtruediv__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return QuadraticNumber(c[0], c[1], self.n) / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return 1 / (self ** -k)
        result: ExactScalar = Fraction(1)
        base: ExactScalar = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison ----------------------------------------------------
    def _cmp(self, other):
        c = self._coerce(other)
        if c is None:
            return None
        return quad_sign(QuadraticNumber(self.a - c[0], self.b - c[1], self.n))

    def __eq__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c == 0

    def __lt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c >= 0

    def __hash__(self):
        if self.b == 0 or self.n == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.n))

    def __floor__(self) -> int:
        # integer estimate from isqrt, then exact correction
        b = self.b
        m = b.numerator * b.numerator * self.n
        root = math.isqrt(m // (b.denominator * b.denominator))
        k = math.floor(self.a) + (root if b >= 0 else -root - 1)
        while self < k:
            k -= 1
        while self >= k + 1:
            k += 1
        return k

    def __ceil__(self) -> int:
        k = math.floor(self)
        return k if self == k else k + 1

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * math.sqrt(self.n)

    def __repr__(self):
        return f"QuadraticNumber({self.a}, {self.b}, {self.n})"

    def __str__(self):
        return format_scalar(self)


def qnum(a, b, n: int) -> ExactScalar:
    """Normalized ``a + b*sqrt(n)``: a Fraction whenever the value is rational."""
    a, b = as_fraction(a), as_fraction(b)
    if b == 0 or n == 0:
        return a
    k, m = _squarefree_split(n)
    if m == 1:
        return a + b * k
    return QuadraticNumber(a, b * k, m)


def sqrt_exact(n: int) -> ExactScalar:
    return qnum(0, 1, n)


_QUAD_RE = re.compile(r"^\s*([^*]+?)\s*\+\s*([^*]+?)\s*\*\s*sqrt\(\s*(\d+)\s*\)\s*$")


def format_scalar(x) -> str:
    """``"p/q"`` (``"p"`` when q = 1) or ``"a+b*sqrt(n)"``."""
    if isinstance(x, QuadraticNumber):
        return f"{x.a}+{x.b}*sqrt({x.n})"
    return str(as_fraction(x))


def parse_scalar(text: str) -> ExactScalar:
    m = _QUAD_RE.match(text)
    if m:
        return qnum(Fraction(m.group(1)), Fraction(m.group(2)), int(m.group(3)))
    return Fraction(text.strip())


# ---------------------------------------------------------------------------
# univariate polynomials


@dataclass(frozen=True)
class UniPoly:
    """Dense polynomial with rational coefficients, constant term first."""

    coeffs: tuple[Fraction, ...] = ()

    def __post_init__(self):
        c = [as_fraction(x) for x in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def const(cls, c) -> UniPoly:
        return cls((c,))

    @classmethod
    def x(cls) -> UniPoly:
        return cls((0, 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x):
        acc: ExactScalar = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: UniPoly) -> UniPoly:
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return UniPoly(tuple(x + y for x, y in zip(a, b)))

    def __neg__(self) -> UniPoly:
        return UniPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: UniPoly) -> UniPoly:
        return self + (-other)

    def __mul__(self, other) -> UniPoly:
        if not isinstance(other, UniPoly):
            k = as_fraction(other)
            return UniPoly(tuple(c * k for c in self.coeffs))
        if self.is_zero() or other.is_zero():
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> UniPoly:
        out = UniPoly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def compose_affine(self, c0, c1) -> UniPoly:
        """The polynomial ``x -> self(c0 + c1*x)``."""
        lin = UniPoly((c0, c1))
        acc = UniPoly()
        for c in reversed(self.coeffs):
            acc = acc * lin + UniPoly.const(c)
        return acc

    def shift(self, h) -> UniPoly:
        """``x -> self(x - h)``."""
        return self.compose_affine(-as_fraction(h), 1)

    def derivative(self) -> UniPoly:
        return UniPoly(tuple(i * c for i, c in enumerate(self.coeffs) if i))

    def antiderivative(self) -> UniPoly:
        return UniPoly((Fraction(0),) + tuple(c / (i + 1) for i, c in enumerate(self.coeffs)))


# ---------------------------------------------------------------------------
# piecewise polynomials on [0, oo)


@dataclass(frozen=True)
class PiecewisePoly:
    """Right-continuous piecewise polynomial on ``[0, oo)``.

    ``pieces[i]`` is in force on ``[breakpoints[i], breakpoints[i+1])`` and
    the last piece on ``[breakpoints[-1], oo)``.
    """

    breakpoints: tuple[Fraction, ...]
    pieces: tuple[UniPoly, ...]

    def __post_init__(self):
        bps = tuple(as_fraction(b) for b in self.breakpoints)
        if not bps or bps[0] != 0:
            raise ValueError("breakpoints must start at 0")
        if any(x >= y for x, y in zip(bps, bps[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        if len(self.pieces) != len(bps):
            raise ValueError("need one piece per breakpoint")
        # canonical form: merge neighbours with identical polynomials
        keep_b, keep_p = [bps[0]], [self.pieces[0]]
        for b, p in zip(bps[1:], self.pieces[1:]):
            if p != keep_p[-1]:
                keep_b.append(b)
                keep_p.append(p)
        object.__setattr__(self, "breakpoints", tuple(keep_b))
        object.__setattr__(self, "pieces", tuple(keep_p))

    @classmethod
    def constant(cls, c) -> PiecewisePoly:
        return cls((Fraction(0),), (UniPoly.const(c),))

    def piece_index(self, s) -> int:
        if s < 0:
            raise ValueError(f"argument must be nonnegative, got {format_scalar(s)}")
        return bisect.bisect_right(self.breakpoints, s) - 1

    def piece_at(self, s) -> UniPoly:
        return self.pieces[self.piece_index(s)]

    def __call__(self, s):
        return pw_eval(self, s)

    def refine(self, points: Iterable[Fraction]) -> list[tuple[Fraction, UniPoly]]:
        """(start, piece) pairs over the union of own breakpoints and ``points``."""
        grid = sorted(set(self.breakpoints) | {as_fraction(p) for p in points if p >= 0})
        return [(b, self.piece_at(b)) for b in grid]

    def derivative(self) -> PiecewisePoly:
        return PiecewisePoly(self.breakpoints, tuple(p.derivative() for p in self.pieces))

    def __add__(self, other):
        return pw_combine("add", self, other)

    def __sub__(self, other):
        return pw_combine("subtract", self, other)

    def __mul__(self, other):
        if isinstance(other, PiecewisePoly):
            return pw_combine("multiply", self, other)
        return pw_combine("scale", self, other)

    __rmul__ = __mul__

    def __neg__(self):
        return pw_combine("scale", self, -1)


def pw_eval(f: PiecewisePoly, s):
    """Value of ``f`` at an exact nonnegative ``s`` (rational or quadratic)."""
    if not isinstance(s, QuadraticNumber):
        s = as_fraction(s)
    return f.piece_at(s)(s)


def _merge_binary(f: PiecewisePoly, g: PiecewisePoly, op: Callable[[UniPoly, UniPoly], UniPoly]):
    grid = sorted(set(f.breakpoints) | set(g.breakpoints))
    return PiecewisePoly(tuple(grid), tuple(op(f.piece_at(b), g.piece_at(b)) for b in grid))


def pw_shift(f: PiecewisePoly, h=1) -> PiecewisePoly:
    """``s -> f(s - h)`` for ``s >= h`` and ``0`` on ``[0, h)``."""
    h = as_fraction(h)
    if h < 0:
        raise ValueError("shift must be nonnegative")
    if h == 0:
        return f
    bps = (Fraction(0),) + tuple(b + h for b in f.breakpoints)
    pieces = (UniPoly(),) + tuple(p.shift(h) for p in f.pieces)
    return PiecewisePoly(bps, pieces)


def pw_combine(op: str, f: PiecewisePoly, g=None) -> PiecewisePoly:
    """Combine piecewise polynomials.

    ``op`` is one of ``add``, ``subtract``, ``multiply`` (``g`` a piecewise
    polynomial), ``scale`` (``g`` a rational) or ``shift`` (``g`` an optional
    nonnegative shift, default 1; zero-padded on ``[0, g)``).
    """
    if op == "add":
        return _merge_binary(f, g, lambda p, r: p + r)
    if op == "subtract":
        return _merge_binary(f, g, lambda p, r: p - r)
    if op == "multiply":
        return _merge_binary(f, g, lambda p, r: p * r)
    if op == "scale":
        k = as_fraction(g)
        return PiecewisePoly(f.breakpoints, tuple(p * k for p in f.pieces))
    if op == "shift":
        return pw_shift(f, 1 if g is None else g)
    raise ValueError(f"unknown op {op!r}")


def pw_integrate(f: PiecewisePoly, lo, hi) -> Fraction:
    lo, hi = as_fraction(lo), as_fraction(hi)
    if lo > hi:
        raise ValueError("need lo <= hi")
    if lo < 0:
        raise ValueError("integration bounds must be nonnegative")
    total = Fraction(0)
    i = f.piece_index(lo)
    a = lo
    while a < hi:
        end = f.breakpoints[i + 1] if i + 1 < len(f.breakpoints) else hi
        b = min(end, hi)
        F = f.pieces[i].antiderivative()
        total += F(b) - F(a)
        a = b
        i += 1
    return total


def pw_root_bracket(f: Callable, lo, hi, tol) -> tuple[Fraction, Fraction]:
    """Bisection with exact sign evaluation.

    ``f`` is any callable returning exact values (a PiecewisePoly works).
    Returns ``(l, h)`` with ``h - l <= tol`` and either ``l == h`` an exact
    root or ``sign(f(l)) != sign(f(h))`` with ``f(l) != 0``.
    """
    lo, hi, tol = as_fraction(lo), as_fraction(hi), as_fraction(tol)
    if tol <= 0 or lo > hi:
        raise ValueError("need tol > 0 and lo <= hi")
    s_lo = quad_sign(f(lo))
    if s_lo == 0:
        return lo, lo
    if quad_sign(f(hi)) == s_lo:
        raise NoSignChange(f"no sign change on [{lo}, {hi}]")
    while hi - lo > tol:
        mid = (lo + hi) / 2
        s_mid = quad_sign(f(mid))
        if s_mid == 0:
            return mid, mid
        if s_mid == s_lo:
            lo = mid
        else:
            hi = mid
    return lo, hi

