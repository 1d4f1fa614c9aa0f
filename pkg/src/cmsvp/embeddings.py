"""Certified evaluation of the real embedding map Sigma.

For a CM field F = Q(zeta_n) with maximal real subfield K of degree k, the
map sends alpha to (sigma_1(alpha*conj(alpha)), ..., sigma_k(alpha*conj(alpha))),
a vector of totally positive reals.  Embeddings are ordered by the
representative exponents m in 1..n/2 coprime to n, ascending, i.e. by
increasing argument of zeta^m in (0, pi).

Since beta = alpha*conj(alpha) is fixed by conjugation, sigma_m(beta) is real
and equals sum_j beta_j cos(2*pi*j*m/n) exactly; that sum is evaluated in
interval arithmetic from a cached cosine table.
"""

from __future__ import annotations

import functools
import math
from fractions import Fraction

from .errors import PrecisionError
from .field import CMField, FieldElement
from .interval import (
    DEFAULT_PRECISION,
    REL_RADIUS,
    PrecisionConfig,
    RealInterval,
    cos2pi,
    interval_sum,
    log_interval,
)


@functools.lru_cache(maxsize=None)
def representatives(n: int) -> tuple[int, ...]:
    """Exponent representatives of the k conjugate pairs, ascending."""
    return tuple(m for m in range(1, n // 2 + 1) if math.gcd(m, n) == 1)


@functools.lru_cache(maxsize=None)
def _cos_table(n: int, bits: int) -> tuple[RealInterval, ...]:
    return tuple(cos2pi(r, n, bits) for r in range(n))


def _sigma_at_bits(field: CMField, a: FieldElement, bits: int) -> list[RealInterval]:
    n = field.conductor
    beta = a * a.conj()
    table = _cos_table(n, bits)
    out = []
    for m in representatives(n):
        terms = []
        for j, c in enumerate(beta.coords):
            if c:
                terms.append(c * table[(j * m) % n])
        out.append(interval_sum(terms) if terms else RealInterval.point(0))
    return out


def _radius_ok(vals: list[RealInterval]) -> bool:
    return all(v.relative_radius() <= REL_RADIUS for v in vals)


def sigma(
    field: CMField, a: FieldElement, prec: PrecisionConfig = DEFAULT_PRECISION
) -> tuple[RealInterval, ...]:
    """Certified enclosures of (sigma_1(a*abar), ..., sigma_k(a*abar)).

    Retries once at doubled precision if any enclosure misses the relative
    radius target, then raises PrecisionError.
    """
    if a.is_zero():
        return tuple(RealInterval.point(0) for _ in range(field.k))
    vals = _sigma_at_bits(field, a, prec.bits)
    if _radius_ok(vals):
        return tuple(vals)
    vals = _sigma_at_bits(field, a, prec.doubled().bits)
    if _radius_ok(vals):
        return tuple(vals)
    raise PrecisionError("sigma evaluation exceeded the radius target after retry")


def weighted_norm(
    field: CMField,
    a: FieldElement,
    weights,
    prec: PrecisionConfig = DEFAULT_PRECISION,
) -> RealInterval:
    """Enclosure of the weighted norm sum_j x_j sigma_j(a*abar)."""
    w = normalize_weights(field, weights)
    if a.is_zero():
        return RealInterval.point(0)
    vals = sigma(field, a, prec)
    return interval_sum(x * v for x, v in zip(w, vals))


def sigma_real(
    field: CMField, x: FieldElement, prec: PrecisionConfig = DEFAULT_PRECISION
) -> tuple[RealInterval, ...]:
    """Enclosures of sigma_m(x) for a conjugation-fixed element x."""
    if x != x.conj():
        raise ValueError("sigma_real needs a conjugation-fixed element")
    n = field.conductor
    out = []
    for bits in (prec.bits, prec.doubled().bits):
        table = _cos_table(n, bits)
        out = []
        for m in representatives(n):
            terms = [c * table[(j * m) % n] for j, c in enumerate(x.coords) if c]
            out.append(interval_sum(terms) if terms else RealInterval.point(0))
        if _radius_ok([v for v in out if not (v.lo == 0 and v.hi == 0)]):
            return tuple(out)
    return tuple(out)


def log_sigma(
    field: CMField, a: FieldElement, prec: PrecisionConfig = DEFAULT_PRECISION
) -> tuple[RealInterval, ...]:
    """Enclosures of log sigma_j(a*abar); requires a != 0."""
    for bits in (prec.bits, prec.doubled().bits):
        vals = _sigma_at_bits(field, a, bits)
        if all(v.lo > 0 for v in vals):
            return tuple(log_interval(v, bits) for v in vals)
    raise PrecisionError("sigma enclosure not certifiably positive after retry")


def normalize_weights(field: CMField, weights) -> tuple:
    """Validate and coerce a weight vector: k positive entries.

    Entries may be exact rationals or RealIntervals (for irrational weights
    such as sigma images of an ideal generator); positivity must be
    certified either way.
    """
    from .errors import InputError

    if weights is None:
        return tuple(Fraction(1) for _ in range(field.k))
    out = []
    for w in weights:
        if isinstance(w, RealInterval):
            if not w.is_positive():
                raise InputError("weights must be certifiably positive")
            out.append(w)
        else:
            f = Fraction(w)
            if f <= 0:
                raise InputError("weights must be positive")
            out.append(f)
    if len(out) != field.k:
        raise InputError(f"expected {field.k} weights, got {len(out)}")
    return tuple(out)


def weights_are_equal_rational(weights) -> bool:
    return (
        all(isinstance(w, Fraction) for w in weights)
        and len(set(weights)) == 1
    )


def weights_are_rational(weights) -> bool:
    return all(isinstance(w, Fraction) for w in weights)
