"""Exact lattice algorithms: LDL, LLL, enumeration, theta counting."""

import random
from fractions import Fraction

import pytest

from cmsvp.errors import BudgetExceededError, NotPositiveDefiniteError
from cmsvp.lattice import (
    enumerate_short,
    is_positive_definite,
    ldl,
    lll_reduce,
    minimum_shell,
    theta_counts,
)

from conftest import box_short_vectors, int_det, random_int_gram


def _frac(g):
    return [[Fraction(x) for x in row] for row in g]


def test_ldl_reconstructs():
    rng = random.Random(41)
    for _ in range(10):
        dim = rng.randint(2, 5)
        g = _frac(random_int_gram(rng, dim))
        l, d = ldl(g)
        n = len(g)
        for i in range(n):
            for j in range(n):
                val = sum(l[i][t] * d[t] * l[j][t] for t in range(n))
                assert val == g[i][j]
        assert all(p > 0 for p in d)


def test_ldl_rejects_indefinite():
    with pytest.raises(NotPositiveDefiniteError):
        ldl(_frac([[1, 2], [2, 1]]))
    with pytest.raises(NotPositiveDefiniteError):
        ldl(_frac([[0, 0], [0, 1]]))
    assert not is_positive_definite(_frac([[1, 2], [2, 1]]))


def test_lll_unimodular_and_det_preserving():
    rng = random.Random(43)
    for _ in range(10):
        dim = rng.randint(2, 6)
        g = _frac(random_int_gram(rng, dim, entry=3, max_diag=40))
        reduced, u = lll_reduce(g)
        assert abs(int_det(u)) == 1
        assert int_det(reduced) == int_det(g)
        assert is_positive_definite(reduced)
        # the quadratic form's minimum is basis-invariant
        assert minimum_shell(g)[0] == minimum_shell(reduced)[0]


def test_enumerate_z2():
    found, nodes = enumerate_short(_frac([[1, 0], [0, 1]]), Fraction(4))
    by_norm = {}
    for v, q in found:
        by_norm.setdefault(q, set()).add(v)
    assert {q: len(s) for q, s in by_norm.items()} == {1: 4, 2: 4, 4: 4}
    assert nodes > 0
    # vectors come in +/- pairs
    vectors = {v for v, _ in found}
    assert all(tuple(-c for c in v) in vectors for v in vectors)


def test_enumerate_include_zero():
    with_zero, _ = enumerate_short(_frac([[2]]), Fraction(2), include_zero=True)
    assert ((0,), Fraction(0)) in with_zero
    without, _ = enumerate_short(_frac([[2]]), Fraction(2))
    assert ((0,), Fraction(0)) not in without


def test_enumerate_matches_box_oracle():
    rng = random.Random(47)
    for _ in range(8):
        dim = rng.randint(2, 5)
        g = random_int_gram(rng, dim)
        radius = Fraction(rng.randint(2, 10))
        found, _ = enumerate_short(_frac(g), radius)
        assert {tuple(v) for v, _ in found} == box_short_vectors(g, radius)


def test_enumerate_budget():
    g = _frac([[2, -1, 0, 0], [-1, 2, -1, 0], [0, -1, 2, -1], [0, 0, -1, 2]])
    with pytest.raises(BudgetExceededError):
        enumerate_short(g, Fraction(6), budget=3)


def test_minimum_shell():
    mu, mins, _, _ = minimum_shell(_frac([[1, 0, 0], [0, 1, 0], [0, 0, 1]]))
    assert mu == 1
    assert len(mins) == 6
    mu, mins, _, _ = minimum_shell(_frac([[2, 1], [1, 2]]))
    assert mu == 2
    assert len(mins) == 6  # hexagonal lattice kissing number


def test_theta_counts_z4():
    counts = theta_counts(_frac([[1 if i == j else 0 for j in range(4)] for i in range(4)]), Fraction(4))
    assert counts == [
        (Fraction(0), 1),
        (Fraction(1), 8),
        (Fraction(2), 24),
        (Fraction(3), 32),
        (Fraction(4), 24),
    ]


def test_theta_counts_fractional_grid():
    counts = theta_counts(_frac([[Fraction(1, 2)]]), Fraction(2))
    assert counts == [(Fraction(0), 1), (Fraction(1, 2), 2), (Fraction(2), 2)]
