"""Exact cyclotomic integer arithmetic against ring axioms and a complex
floating-point embedding oracle."""

import cmath
import random
from fractions import Fraction

import pytest

from cmsvp.errors import InputError
from cmsvp.field import (
    CMField,
    exact_divide,
    field_norm,
    is_prime,
    is_unit,
    trace,
)


def _random_element(field, rng, span=5):
    return field.element([rng.randint(-span, span) for _ in range(field.degree)])


def _embed(a, j):
    """a evaluated at the j-th primitive root of unity, in floating point."""
    n = a.field.conductor
    z = cmath.exp(2j * cmath.pi * j / n)
    return sum(c * z**m for m, c in enumerate(a.coords))


def test_is_prime():
    assert [p for p in range(2, 30) if is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_field_shape(f5, f7):
    assert (f5.degree, f5.k) == (4, 2)
    assert (f7.degree, f7.k) == (6, 3)
    assert f5.torsion_order() == 10
    assert CMField(11).degree == 10


def test_element_validation(f5):
    with pytest.raises(InputError):
        f5.element([1, 2, 3])
    with pytest.raises(InputError):
        f5.parse("1,2,x,4")
    assert f5.parse("1,0,0,0") == f5.one()


def test_zeta_relations(f5, f7):
    for field in (f5, f7):
        n = field.conductor
        z = field.zeta(1)
        power = field.one()
        for j in range(1, n + 1):
            power = power * z
            assert power == field.zeta(j)
        assert field.zeta(n) == field.one()
        assert z * field.zeta(n - 1) == field.one()


def test_ring_axioms(f5, f7):
    rng = random.Random(5)
    for field in (f5, f7):
        for _ in range(25):
            a, b, c = (_random_element(field, rng) for _ in range(3))
            assert a * b == b * a
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c
            assert a + (-a) == field.zero()


def test_conjugation_is_ring_involution(f5, f7):
    rng = random.Random(7)
    for field in (f5, f7):
        assert field.zeta(1).conj() == field.zeta(-1)
        for _ in range(15):
            a, b = _random_element(field, rng), _random_element(field, rng)
            assert a.conj().conj() == a
            assert (a * b).conj() == a.conj() * b.conj()
            assert (a + b).conj() == a.conj() + b.conj()


def test_trace_and_norm_basics(f5, f7):
    for field in (f5, f7):
        assert trace(field.one()) == field.degree
        assert trace(field.zeta(1)) == -1
        assert field_norm(field.one()) == 1
        assert field_norm(field.zeta(3)) == 1
        assert field_norm(field.one() - field.zeta(1)) == field.conductor


def test_norm_is_multiplicative(f5, f7):
    rng = random.Random(11)
    for field in (f5, f7):
        for _ in range(15):
            a, b = _random_element(field, rng), _random_element(field, rng)
            assert field_norm(a * b) == field_norm(a) * field_norm(b)


def test_trace_is_linear_and_conjugation_invariant(f5):
    rng = random.Random(13)
    for _ in range(15):
        a, b = _random_element(f5, rng), _random_element(f5, rng)
        assert trace(a + b) == trace(a) + trace(b)
        assert trace(a.conj()) == trace(a)
        assert trace(a * a.conj()) >= 0


def test_norm_matches_embedding_product(f5, f7):
    """N(a) is the product of a over all primitive-root embeddings."""
    rng = random.Random(17)
    for field in (f5, f7):
        n = field.conductor
        for _ in range(10):
            a = _random_element(field, rng, span=3)
            prod = 1.0 + 0j
            for j in range(1, n):
                prod *= _embed(a, j)
            assert abs(prod.real - field_norm(a)) < 1e-6 * max(1.0, abs(prod.real))
            assert abs(prod.imag) < 1e-6 * max(1.0, abs(prod.real))


def test_units_and_exact_division(f5):
    z = f5.zeta(1)
    assert is_unit(z)
    assert is_unit(-f5.one())
    assert not is_unit(f5.one() - z)
    assert not is_unit(f5.zero())
    rng = random.Random(19)
    for _ in range(10):
        a = _random_element(f5, rng)
        b = _random_element(f5, rng)
        if b.is_zero():
            continue
        assert exact_divide(a * b, b) == a
    with pytest.raises(InputError):
        exact_divide(f5.one(), f5.one() - z)  # norm 5 cannot divide norm 1
    with pytest.raises(InputError):
        exact_divide(f5.one(), f5.zero())


def test_torsion_units(f5):
    torsion = f5.torsion_units()
    assert len(torsion) == 10
    assert all(is_unit(u) for u in torsion)
    assert len(set(torsion)) == 10
