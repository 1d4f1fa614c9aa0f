"""Certified Sigma-map values against exact traces and a floating-point
embedding oracle."""

import cmath
import random
from fractions import Fraction

import pytest

from cmsvp.embeddings import (
    log_sigma,
    normalize_weights,
    representatives,
    sigma,
    sigma_real,
    weighted_norm,
    weights_are_equal_rational,
)
from cmsvp.errors import InputError
from cmsvp.field import trace
from cmsvp.interval import DEFAULT_PRECISION, RealInterval, exp_interval


def _random_element(field, rng, span=4):
    return field.element([rng.randint(-span, span) for _ in range(field.degree)])


def _float_sigma(field, a):
    """|a|^2 at one embedding per conjugate pair, in floating point."""
    n = field.conductor
    out = []
    for rep in representatives(n):
        z = cmath.exp(2j * cmath.pi * rep / n)
        val = sum(c * z**m for m, c in enumerate(a.coords))
        out.append(abs(val) ** 2)
    return out


def test_representatives():
    assert representatives(5) == (1, 2)
    assert representatives(7) == (1, 2, 3)
    assert len(representatives(11)) == 5


def test_sigma_contains_float_oracle(f5, f7):
    rng = random.Random(23)
    for field in (f5, f7):
        for _ in range(10):
            a = _random_element(field, rng)
            if a.is_zero():
                continue
            vals = sigma(field, a)
            floats = _float_sigma(field, a)
            for iv, x in zip(vals, floats):
                assert float(iv.lo) - 1e-8 <= x <= float(iv.hi) + 1e-8


def test_sigma_sums_to_trace(f5, f7):
    """Sum of the Sigma coordinates is exactly Tr(a conj(a)) / 2."""
    rng = random.Random(29)
    for field in (f5, f7):
        for _ in range(10):
            a = _random_element(field, rng)
            vals = sigma(field, a)
            total = sum(vals[1:], vals[0])
            assert total.contains(Fraction(trace(a * a.conj()), 2))


def test_weighted_norm_equal_weights_is_half_trace(f5):
    rng = random.Random(31)
    for _ in range(10):
        a = _random_element(f5, rng)
        q = weighted_norm(f5, a, normalize_weights(f5, None))
        assert q.contains(Fraction(trace(a * a.conj()), 2))


def test_weighted_norm_respects_weights(f5):
    a = f5.one() - f5.zeta(1)
    w = (Fraction(3), Fraction(1))
    q = weighted_norm(f5, a, normalize_weights(f5, w))
    s = sigma(f5, a)
    direct = s[0] * 3 + s[1]
    assert q.overlaps(direct)


def test_units_sit_on_the_hyperboloid(f5, f7):
    """A unit's Sigma coordinates multiply to exactly 1."""
    for field in (f5, f7):
        u = field.zeta(1) + field.one()  # 1 + zeta is a cyclotomic unit here
        vals = sigma(field, u)
        prod = vals[0]
        for v in vals[1:]:
            prod = prod * v
        assert prod.contains(1)


def test_log_sigma_exponentiates_back(f5):
    a = f5.one() + f5.zeta(1)
    logs = log_sigma(f5, a)
    vals = sigma(f5, a)
    for lg, v in zip(logs, vals):
        assert exp_interval(lg, DEFAULT_PRECISION.bits).overlaps(v)


def test_sigma_real_needs_conjugation_fixed_input(f5):
    a = f5.one() + f5.zeta(2)
    fixed = a * a.conj()
    vals = sigma_real(f5, fixed)
    refs = sigma(f5, a)
    for v, r in zip(vals, refs):
        assert v.overlaps(r)
    with pytest.raises(ValueError):
        sigma_real(f5, f5.zeta(1))


def test_normalize_weights(f5):
    equal = normalize_weights(f5, None)
    assert equal == (Fraction(1), Fraction(1))
    assert weights_are_equal_rational(equal)
    assert not weights_are_equal_rational(normalize_weights(f5, (1, 2)))
    with pytest.raises(InputError):
        normalize_weights(f5, (1, 2, 3))
    with pytest.raises(InputError):
        normalize_weights(f5, (0, 1))
    with pytest.raises(InputError):
        normalize_weights(f5, (RealInterval(Fraction(-1), Fraction(1)), Fraction(1)))
