"""Theta tables, truncated psi sums with certified tails, cusp readout.

High-precision reference values below were produced by direct mpmath
summation (50 digits) over independently enumerated norm shells.
"""

from fractions import Fraction

import mpmath
import numpy as np
import pytest

from cmsvp.embeddings import representatives, sigma
from cmsvp.errors import InputError
from cmsvp.field import CMField
from cmsvp.svp import craig_circulant, gram_matrix, minimal_vectors
from cmsvp.theta import (
    cusp_extract,
    psi_truncated,
    same_counts,
    theta_prefix,
    theta_sum,
)

PSI5_T2 = Fraction("1.0000350036722590365260564947061390719773289969898")
PSI5_T4 = Fraction("1.0000000001216164153243296975053644337075200684559")
THETA_IDEAL5_T2 = Fraction("1.0000000000004542202136648342414360426770426075049")


def test_theta_prefix_z5():
    tp = theta_prefix(craig_circulant(4, 0), 3)
    assert tp.scale == 1
    assert tp.coefficients == ((0, 1), (1, 10), (2, 40), (3, 80))


def test_theta_prefix_ring_of_integers(f5):
    tp = theta_prefix(gram_matrix(f5, None), 8)
    assert tp.scale == Fraction(1, 2)
    assert tp.norm_counts() == {
        Fraction(0): 1,
        Fraction(2): 10,
        Fraction(3): 20,
        Fraction(5): 20,
        Fraction(7): 60,
        Fraction(8): 50,
    }
    assert set(tp.to_json()) == {"scale", "coefficients"}


def test_theta_prefix_validation(f5):
    with pytest.raises(InputError):
        theta_prefix(gram_matrix(f5, (Fraction(3), Fraction(1))), 4)
    with pytest.raises(InputError):
        theta_prefix(craig_circulant(4, 0), -1)


def test_same_counts_scale_independent(f5):
    kappa = f5.one() - f5.zeta(1)
    ideal = gram_matrix(f5, None, kappa * kappa).scaled(Fraction(2, 5))
    assert same_counts(theta_prefix(craig_circulant(4, 2), 10), theta_prefix(ideal, 10))
    assert not same_counts(
        theta_prefix(craig_circulant(4, 1), 8), theta_prefix(craig_circulant(4, 2), 8)
    )


def test_psi_equal_weights_pins(f5):
    for t, pin in ((2, PSI5_T2), (4, PSI5_T4)):
        sample = psi_truncated(f5, None, t)
        enc = sample.enclosure()
        assert enc.lo <= pin <= enc.hi
        assert sample.tail.lo >= 0
        assert enc.width < Fraction(1, 10**12)


def test_psi_monotone_in_t(f5):
    values = [psi_truncated(f5, None, t).enclosure() for t in (1, 2, 4)]
    assert values[0].lo > values[1].hi
    assert values[1].lo > values[2].hi
    assert values[2].lo > 1


def test_psi_leading_term(f5):
    """psi(t) - 1 approaches (count) e^(-pi t mu) as t grows."""
    sample = psi_truncated(f5, None, 10).enclosure()
    with mpmath.workdps(50):
        lead = 10 * mpmath.exp(-20 * mpmath.pi)
        rel = abs((sample.mid - 1) / Fraction(str(lead)) - 1)
    assert rel < Fraction(1, 10**6)


def test_psi_validation(f5):
    with pytest.raises(InputError):
        psi_truncated(f5, None, 0)
    with pytest.raises(InputError):
        psi_truncated(f5, None, Fraction(-1, 2))


def test_psi_interval_weights_against_float_oracle(f5):
    """Skew-weight psi agrees with a brute-force complex-embedding sum."""
    w = (Fraction(3), Fraction(1))
    sample = psi_truncated(f5, w, 2)
    enc = sample.enclosure()
    reps = representatives(5)
    box = 3
    axes = [np.arange(-box, box + 1)] * 4
    grids = np.meshgrid(*axes, indexing="ij")
    pts = np.stack([g.ravel() for g in grids], axis=1)
    q = np.zeros(len(pts))
    for wt, rep in zip(w, reps):
        z = np.exp(2j * np.pi * rep / 5)
        emb = pts.astype(complex) @ z ** np.arange(4)
        q += float(wt) * np.abs(emb) ** 2
    oracle = float(np.exp(-2 * np.pi * q).sum())
    assert abs(float(enc.mid) - oracle) < 1e-12


def test_psi_ideal_identity(f5):
    """psi at the sigma weights of kappa conj(kappa) is the ideal theta sum."""
    kappa = f5.one() - f5.zeta(1)
    weights = sigma(f5, kappa)
    lhs = psi_truncated(f5, weights, 2).enclosure()
    rhs = theta_sum(gram_matrix(f5, None, kappa), 2).enclosure()
    assert lhs.overlaps(rhs)
    assert lhs.lo <= THETA_IDEAL5_T2 <= lhs.hi
    assert rhs.lo <= THETA_IDEAL5_T2 <= rhs.hi


def test_psi_sample_json(f5):
    out = psi_truncated(f5, None, 2).to_json()
    assert set(out) == {"t", "value", "tail", "weights"}
    assert out["t"] == "2"
    assert Fraction(out["value"]["lo"]) <= Fraction(out["value"]["hi"])


def test_cusp_extract_equal_weights(f5, f7):
    mu5, count5 = cusp_extract(f5, None)
    assert mu5.contains(2)
    assert count5 == 10
    mu7, count7 = cusp_extract(f7, None)
    assert mu7.contains(3)
    assert count7 == 14


def test_cusp_extract_skew_weights(f5):
    mu, count = cusp_extract(f5, (Fraction(3), Fraction(1)))
    ground = minimal_vectors(f5, (Fraction(3), Fraction(1)))
    assert count == ground.count
    assert mu.overlaps(ground.mu)
