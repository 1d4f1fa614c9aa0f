"""Certified real-interval arithmetic with exact rational endpoints.

The working representation is a closed interval [lo, hi] whose endpoints are
`fractions.Fraction` values, so every ring operation (+, -, *, integer
powers, division by an interval excluding zero) is carried out exactly with
no rounding step at all.  Irrational leaves -- pi, cos, sin, exp, log, k-th
roots -- are obtained from mpmath's interval context at a configurable
binary precision and converted to exact dyadic endpoints, which keeps the
enclosure property end to end.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath.libmp import (
    from_rational,
    round_ceiling,
    round_floor,
    to_rational,
)

from .errors import PrecisionError

MIN_BITS = 53


@dataclass(frozen=True)
class PrecisionConfig:
    """Working binary precision and the certified-radius target.

    `bits` is the mantissa size handed to mpmath for irrational leaves.
    A computation that cannot reach relative radius 2**-64 is retried once
    at doubled bits before PrecisionError is raised.
    """

    bits: int = 128

    def __post_init__(self):
        if self.bits < MIN_BITS:
            raise ValueError(f"precision must be at least {MIN_BITS} bits")

    def doubled(self) -> "PrecisionConfig":
        return PrecisionConfig(bits=self.bits * 2)


DEFAULT_PRECISION = PrecisionConfig()

REL_RADIUS = Fraction(1, 2**64)


@functools.lru_cache(maxsize=None)
def _ctx(bits: int):
    ctx = mpmath.ctx_iv.MPIntervalContext()
    ctx.prec = bits
    return ctx


def _fraction_from_mpf_raw(raw) -> Fraction:
    p, q = to_rational(raw)
    # int() strips gmpy2.mpz when mpmath runs on the gmpy backend; mpz-backed
    # Fractions break mixed arithmetic elsewhere
    return Fraction(int(p), int(q))


def _iv_from_fractions(lo: Fraction, hi: Fraction, ctx):
    a = mpmath.make_mpf(from_rational(lo.numerator, lo.denominator, ctx.prec, round_floor))
    b = mpmath.make_mpf(from_rational(hi.numerator, hi.denominator, ctx.prec, round_ceiling))
    return ctx.mpf([a, b])


@dataclass(frozen=True)
class RealInterval:
    """Closed interval with exact rational endpoints, lo <= hi."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval: [{self.lo}, {self.hi}]")

    @staticmethod
    def point(x) -> "RealInterval":
        f = Fraction(x)
        return RealInterval(f, f)

    @staticmethod
    def from_mpiv(x) -> "RealInterval":
        a, b = x._mpi_
        return RealInterval(_fraction_from_mpf_raw(a), _fraction_from_mpf_raw(b))

    @staticmethod
    def hull(items) -> "RealInterval":
        items = list(items)
        return RealInterval(min(i.lo for i in items), max(i.hi for i in items))

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, x) -> bool:
        f = Fraction(x)
        return self.lo <= f <= self.hi

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def overlaps(self, other: "RealInterval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def __add__(self, other):
        other = _coerce(other)
        return RealInterval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __neg__(self):
        return RealInterval(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        c = (
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        )
        return RealInterval(min(c), max(c))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other.contains_zero():
            raise ZeroDivisionError("interval division by an interval containing zero")
        inv = RealInterval(1 / other.hi, 1 / other.lo)
        return self * inv

    def __rtruediv__(self, other):
        return _coerce(other) / self

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers are exact")
        out = RealInterval.point(1)
        base = self
        e = n
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        # even powers of sign-straddling intervals clamp at 0
        if n % 2 == 0 and out.lo < 0:
            out = RealInterval(Fraction(0), out.hi)
        return out

    def __abs__(self):
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return RealInterval(Fraction(0), max(-self.lo, self.hi))

    def is_positive(self) -> bool:
        return self.lo > 0

    def is_negative(self) -> bool:
        return self.hi < 0

    def less_than(self, x) -> bool:
        """Certified strict comparison against an exact rational."""
        return self.hi < Fraction(x)

    def greater_than(self, x) -> bool:
        return self.lo > Fraction(x)

    def relative_radius(self) -> Fraction:
        scale = max(Fraction(1), abs(self.lo), abs(self.hi))
        return self.width / (2 * scale)

    def __repr__(self):
        return f"RealInterval({decimal_str(self.lo, 12, 'floor')}, {decimal_str(self.hi, 12, 'ceil')})"


def _coerce(x) -> RealInterval:
    if isinstance(x, RealInterval):
        return x
    return RealInterval.point(x)


ZERO = RealInterval.point(0)
ONE = RealInterval.point(1)


def interval_sum(items) -> RealInterval:
    lo = Fraction(0)
    hi = Fraction(0)
    for it in items:
        it = _coerce(it)
        lo += it.lo
        hi += it.hi
    return RealInterval(lo, hi)


def interval_prod(items) -> RealInterval:
    out = ONE
    for it in items:
        out = out * _coerce(it)
    return out


def interval_max(items) -> RealInterval:
    """Enclosure of max(x_1, ..., x_m) for intervals x_i."""
    items = [_coerce(i) for i in items]
    return RealInterval(max(i.lo for i in items), max(i.hi for i in items))


def interval_min(items) -> RealInterval:
    items = [_coerce(i) for i in items]
    return RealInterval(min(i.lo for i in items), min(i.hi for i in items))


# ---------------------------------------------------------------------------
# irrational leaves via mpmath interval contexts


def cos2pi(num: int, den: int, bits: int) -> RealInterval:
    """Enclosure of cos(2*pi*num/den)."""
    ctx = _ctx(bits)
    val = ctx.cos(2 * ctx.pi * ctx.mpf(num) / den)
    return RealInterval.from_mpiv(val)


def sin2pi(num: int, den: int, bits: int) -> RealInterval:
    ctx = _ctx(bits)
    val = ctx.sin(2 * ctx.pi * ctx.mpf(num) / den)
    return RealInterval.from_mpiv(val)


def pi_interval(bits: int) -> RealInterval:
    return RealInterval.from_mpiv(_ctx(bits).pi)


def exp_interval(x, bits: int) -> RealInterval:
    x = _coerce(x)
    ctx = _ctx(bits)
    return RealInterval.from_mpiv(ctx.exp(_iv_from_fractions(x.lo, x.hi, ctx)))


def log_interval(x, bits: int) -> RealInterval:
    x = _coerce(x)
    if x.lo <= 0:
        raise ValueError("log of an interval touching (-inf, 0]")
    ctx = _ctx(bits)
    return RealInterval.from_mpiv(ctx.log(_iv_from_fractions(x.lo, x.hi, ctx)))


def root_interval(x, k: int, bits: int) -> RealInterval:
    """Enclosure of x**(1/k) for a positive interval x."""
    if k == 1:
        return _coerce(x)
    x = _coerce(x)
    if x.lo <= 0:
        raise ValueError("root of an interval touching (-inf, 0]")
    log = log_interval(x, bits)
    return exp_interval(RealInterval(log.lo / k, log.hi / k), bits)


# ---------------------------------------------------------------------------
# directed decimal serialization


def decimal_str(x: Fraction, digits: int, mode: str) -> str:
    """Decimal string of x rounded toward -inf ('floor') or +inf ('ceil').

    The result always parses back to a rational on the correct side of x,
    so round-tripping a serialized interval keeps the enclosure.
    """
    x = Fraction(x)
    scaled = x * 10**digits
    n = scaled.numerator // scaled.denominator
    if mode == "ceil" and n * scaled.denominator != scaled.numerator:
        n += 1
    elif mode not in ("floor", "ceil"):
        raise ValueError(f"unknown rounding mode {mode!r}")
    sign = "-" if n < 0 else ""
    whole, frac = divmod(abs(n), 10**digits)
    text = f"{whole}.{frac:0{digits}d}".rstrip("0").rstrip(".")
    return sign + text if text != "0" else "0"


def interval_json(x: RealInterval, digits: int = 40) -> dict:
    return {
        "lo": decimal_str(x.lo, digits, "floor"),
        "hi": decimal_str(x.hi, digits, "ceil"),
    }


# ---------------------------------------------------------------------------
# interval linear algebra (small, dense, exact endpoints)


def det_cofactor(m: list[list[RealInterval]]) -> RealInterval:
    """Determinant by cofactor expansion; exact on Fraction endpoints.

    Never divides, so it tolerates any singular or zero-straddling input.
    Intended for the small orders used here (k <= 6).
    """
    n = len(m)
    if n == 0:
        return ONE
    if n == 1:
        return _coerce(m[0][0])
    if n == 2:
        return _coerce(m[0][0]) * m[1][1] - _coerce(m[0][1]) * m[1][0]
    total = ZERO
    rest = m[1:]
    for j in range(n):
        minor = [[row[c] for c in range(n) if c != j] for row in rest]
        term = _coerce(m[0][j]) * det_cofactor(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def det_elimination(m: list[list[RealInterval]]) -> RealInterval:
    """Determinant by interval Gaussian elimination with pivot search.

    Raises PrecisionError when no pivot column excludes zero; callers fall
    back to det_cofactor, which is always defined.
    """
    n = len(m)
    a = [[_coerce(x) for x in row] for row in m]
    det = ONE
    sign = 1
    for col in range(n):
        pivot_row = None
        best = Fraction(-1)
        for r in range(col, n):
            cand = a[r][col]
            if not cand.contains_zero():
                score = min(abs(cand.lo), abs(cand.hi))
                if score > best:
                    best = score
                    pivot_row = r
        if pivot_row is None:
            raise PrecisionError("no interval pivot excludes zero during elimination")
        if pivot_row != col:
            a[col], a[pivot_row] = a[pivot_row], a[col]
            sign = -sign
        pivot = a[col][col]
        det = det * pivot
        for r in range(col + 1, n):
            factor = a[r][col] / pivot
            for c in range(col, n):
                a[r][c] = a[r][c] - factor * a[col][c]
    return det if sign == 1 else -det


def det_interval(m: list[list[RealInterval]]) -> RealInterval:
    """Tightest available determinant enclosure (elimination ∩ cofactor)."""
    cof = det_cofactor(m)
    try:
        elim = det_elimination(m)
    except PrecisionError:
        return cof
    lo = max(cof.lo, elim.lo)
    hi = min(cof.hi, elim.hi)
    if lo > hi:
        raise PrecisionError("determinant enclosures are disjoint")
    return RealInterval(lo, hi)


def solve_cramer(m: list[list[RealInterval]], rhs: list[RealInterval]) -> list[RealInterval]:
    """Solve m x = rhs by Cramer's rule; m's determinant must exclude zero."""
    n = len(m)
    d = det_interval(m)
    if d.contains_zero():
        raise PrecisionError("Cramer solve: determinant interval contains zero")
    out = []
    for j in range(n):
        mj = [[rhs[i] if c == j else m[i][c] for c in range(n)] for i in range(n)]
        out.append(det_interval(mj) / d)
    return out
