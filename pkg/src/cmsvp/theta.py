"""Theta-series counting and the truncated psi function with certified tails.

The psi function is evaluated on the purely imaginary diagonal ray: with
positive weights x and parameter t > 0 it is the sum of exp(-pi t q(alpha))
over all alpha in O_F, q the weighted norm.  Truncation at radius R leaves a
tail that is bounded by a geometric comparison: the number of lattice points
with q <= s is at most (2 sqrt(s/delta) + 1)^d for the smallest LDL pivot
delta of a reduced Gram, and for R >= delta with R + 1 >= d/(pi t) the slab
sums telescope into

    tail(R) <= 3^d ((R+1)/delta)^(d/2) e^(-pi t R) / (1 - e^(-pi t / 2)).

Every reported figure is an enclosure of the true infinite sum.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from . import lattice
from .embeddings import normalize_weights, weighted_norm, weights_are_equal_rational
from .errors import BudgetExceededError, InputError, SelfTestError
from .field import CMField
from .interval import (
    DEFAULT_PRECISION,
    PrecisionConfig,
    RealInterval,
    exp_interval,
    interval_json,
    interval_sum,
    log_interval,
    pi_interval,
    root_interval,
)
from .svp import GramMatrix, _basis_element, _floor_form, gram_matrix, minimal_vectors

TAIL_REL = Fraction(1, 2**40)
MAX_RADIUS_STEPS = 200


@dataclass(frozen=True)
class ThetaPrefix:
    """Exact vector counts by norm, reported on an integer grid.

    A coefficient entry (m, count) stands for norm value m * scale; scale is
    the reciprocal of the least common denominator of the Gram entries.
    """

    scale: Fraction
    coefficients: tuple[tuple[int, int], ...]
    max_norm: Fraction

    def norm_counts(self) -> dict:
        return {self.scale * m: c for m, c in self.coefficients}

    def to_json(self) -> dict:
        return {
            "scale": str(self.scale),
            "coefficients": [[m, c] for m, c in self.coefficients],
        }


@dataclass(frozen=True)
class PsiSample:
    """One truncated psi (or theta-sum) evaluation with a certified tail."""

    weights: tuple | None
    t: Fraction
    radius: Fraction
    value: RealInterval
    tail: RealInterval

    def enclosure(self) -> RealInterval:
        return RealInterval(self.value.lo, self.value.hi + self.tail.hi)

    def to_json(self) -> dict:
        out = {
            "t": str(self.t),
            "value": interval_json(self.value),
            "tail": interval_json(self.tail),
        }
        if self.weights is not None:
            out["weights"] = [
                interval_json(w) if isinstance(w, RealInterval) else str(w)
                for w in self.weights
            ]
        return out


def theta_prefix(
    g: GramMatrix, max_norm, budget: int = lattice.DEFAULT_BUDGET
) -> ThetaPrefix:
    """Exact (norm, count) table of a rational Gram up to max_norm."""
    if not g.exact:
        raise InputError("theta counting needs an exact-rational Gram")
    max_norm = Fraction(max_norm)
    if max_norm < 0:
        raise InputError("max_norm must be nonnegative")
    denom = lcm(*(e.denominator for row in g.entries for e in row))
    counts = lattice.theta_counts(g.rows(), max_norm, budget)
    coeff = tuple((int(q * denom), c) for q, c in counts)
    return ThetaPrefix(Fraction(1, denom), coeff, max_norm)


def same_counts(a: ThetaPrefix, b: ThetaPrefix) -> bool:
    """Scale-independent equality of two theta tables."""
    return a.norm_counts() == b.norm_counts()


def _pow_half(x: RealInterval, d: int, bits: int) -> RealInterval:
    if d % 2 == 0:
        return x ** (d // 2)
    return root_interval(x**d, 2, bits)


def _tail_bound(
    dim: int, delta: Fraction, radius: Fraction, t: Fraction, bits: int
) -> RealInterval:
    """Upper bound on the sum of exp(-pi t q) over q > radius; requires
    radius >= delta and (radius + 1) pi t >= dim."""
    pi = pi_interval(bits)
    if radius < delta:
        raise InputError("tail radius below the pivot floor")
    if Fraction(radius + 1) * t * pi.lo < dim:
        raise InputError("tail radius too small for the slab comparison")
    poly = _pow_half(RealInterval.point(Fraction(radius + 1) / delta), dim, bits)
    e_main = exp_interval(-(pi * t * radius), bits)
    e_half = exp_interval(-(pi * t * Fraction(1, 2)), bits)
    top = Fraction(3**dim) * poly * e_main
    return top / (1 - e_half)


def _initial_radius(dim: int, delta: Fraction, mu_ub: Fraction, t: Fraction, bits: int) -> Fraction:
    pi_lo = pi_interval(bits).lo
    r = max(Fraction(1), delta, mu_ub + 1, Fraction(dim) / (pi_lo * t))
    return Fraction(r.numerator // r.denominator + 1)


def _grow_radius(
    dim: int,
    delta: Fraction,
    mu_ub: Fraction,
    t: Fraction,
    bits: int,
    tail_rel: Fraction,
    budget: int,
) -> tuple[Fraction, RealInterval]:
    """Smallest tried radius whose certified tail drops below tail_rel times
    exp(-pi t mu), the first-shell scale."""
    pi = pi_interval(bits)
    target = (tail_rel * exp_interval(-(pi * t * mu_ub), bits)).lo
    r = _initial_radius(dim, delta, mu_ub, t, bits)
    for _ in range(MAX_RADIUS_STEPS):
        tail = _tail_bound(dim, delta, r, t, bits)
        if tail.hi <= target:
            return r, RealInterval(Fraction(0), tail.hi)
        r = r + max(Fraction(1), r / 2)
    raise BudgetExceededError(budget)


def _term(q, t: Fraction, bits: int) -> RealInterval:
    if isinstance(q, RealInterval):
        return exp_interval(-(pi_interval(bits) * t * q), bits)
    if q == 0:
        return RealInterval.point(1)
    return exp_interval(-(pi_interval(bits) * t * Fraction(q)), bits)


def theta_sum(
    g: GramMatrix,
    t,
    prec: PrecisionConfig = DEFAULT_PRECISION,
    budget: int = lattice.DEFAULT_BUDGET,
    tail_rel: Fraction = TAIL_REL,
) -> PsiSample:
    """Truncated theta sum of an exact Gram at parameter t, with tail."""
    if not g.exact:
        raise InputError("theta sum needs an exact-rational Gram")
    t = Fraction(t)
    if t <= 0:
        raise InputError("t must be positive")
    bits = prec.bits
    rows = g.rows()
    reduced, _ = lattice.lll_reduce(rows)
    _, pivots = lattice.ldl(reduced)
    delta = min(pivots)
    mu_ub = min(reduced[i][i] for i in range(len(reduced)))
    radius, tail = _grow_radius(g.dimension, delta, mu_ub, t, bits, tail_rel, budget)
    counts = lattice.theta_counts(rows, radius, budget)
    value = interval_sum(Fraction(c) * _term(q, t, bits) for q, c in counts)
    return PsiSample(None, t, radius, value, tail)


def psi_truncated(
    field: CMField,
    w,
    t,
    prec: PrecisionConfig = DEFAULT_PRECISION,
    budget: int = lattice.DEFAULT_BUDGET,
    tail_rel: Fraction = TAIL_REL,
) -> PsiSample:
    """Certified truncation of psi at z_j = t i x_j.

    Equal rational weights reduce to the exact theta sum of the O_F Gram;
    general weights run the superset search on the rational lower form and
    evaluate each algebraic orbit by certified intervals.
    """
    ws = normalize_weights(field, w)
    t = Fraction(t)
    if t <= 0:
        raise InputError("t must be positive")
    if weights_are_equal_rational(ws):
        g = gram_matrix(field, ws, None, prec)
        sample = theta_sum(g, t, prec, budget, tail_rel)
        return PsiSample(ws, t, sample.radius, sample.value, sample.tail)
    bits = prec.bits
    g = gram_matrix(field, ws, None, prec)
    low, _, _ = _floor_form(g)
    reduced_low, u = lattice.lll_reduce(low)
    _, pivots = lattice.ldl(reduced_low)
    delta = min(pivots)
    mu_ub = None
    for row in u:
        val = weighted_norm(field, field.element(row), ws, prec)
        if mu_ub is None or val.hi < mu_ub:
            mu_ub = val.hi
    radius, tail = _grow_radius(field.degree, delta, mu_ub, t, bits, tail_rel, budget)
    cands, _ = lattice.enumerate_short(low, radius, budget)
    groups: dict = {}
    for coords, _ in cands:
        a = field.element(coords)
        beta = a * a.conj()
        if beta in groups:
            groups[beta][1] += 1
        else:
            groups[beta] = [weighted_norm(field, a, ws, prec), 1]
    terms = [RealInterval.point(1)]
    terms.extend(Fraction(c) * _term(v, t, bits) for v, c in groups.values())
    return PsiSample(ws, t, radius, interval_sum(terms), tail)


def _excess_data(field, ws, kappa, mv, prec, budget):
    """Certified upper-bound ingredients for the non-minimal part of psi:
    (list of (value lower end, count) beyond the minimum, cutoff, pivot)."""
    exact = not isinstance(mv.mu, RealInterval)
    if exact:
        g = gram_matrix(field, ws, kappa, prec)
        rows = g.rows()
        cutoff = 3 * mv.mu
        reduced, _ = lattice.lll_reduce(rows)
        _, pivots = lattice.ldl(reduced)
        delta = min(pivots)
        shells = lattice.theta_counts(rows, cutoff, budget)
        beyond = [(Fraction(q), c) for q, c in shells if q > mv.mu]
        return beyond, cutoff, delta
    g = gram_matrix(field, ws, kappa, prec)
    low, _, _ = _floor_form(g)
    cutoff = 3 * mv.mu.hi
    reduced_low, _ = lattice.lll_reduce(low)
    _, pivots = lattice.ldl(reduced_low)
    delta = min(pivots)
    cands, _ = lattice.enumerate_short(low, cutoff, budget)
    groups: dict = {}
    for coords, _ in cands:
        a = _basis_element(field, kappa, coords)
        beta = a * a.conj()
        if beta in groups:
            groups[beta][1] += 1
        else:
            groups[beta] = [weighted_norm(field, a, ws, prec), 1]
    a0 = _basis_element(field, kappa, mv.vectors[0])
    beta0 = a0 * a0.conj()
    beyond = [(v.lo, c) for b, (v, c) in groups.items() if b != beta0]
    return beyond, cutoff, delta


def _excess_upper(beyond, cutoff, delta, dim, t, bits) -> Fraction:
    total = interval_sum(
        Fraction(c) * _term(q, t, bits) for q, c in beyond
    ) if beyond else RealInterval.point(0)
    tail = _tail_bound(dim, delta, cutoff, t, bits)
    return (total + tail).hi


def cusp_extract(
    field: CMField,
    w,
    prec: PrecisionConfig = DEFAULT_PRECISION,
    budget: int = lattice.DEFAULT_BUDGET,
) -> tuple[RealInterval, int]:
    """(mu enclosure, count) read off the cusp expansion 1 + n e^(-pi t mu).

    Two psi samples at t and 2t give mu as a slope of log(psi - 1); the
    higher-shell contamination is bounded by certified enumeration data and
    widens the enclosure.  The result is cross-checked against enumeration
    ground truth and disagreement raises SelfTestError.
    """
    ws = normalize_weights(field, w)
    bits = prec.bits
    mv = minimal_vectors(field, ws, None, prec, budget)
    mu0, n0 = mv.mu, mv.count
    mu_hi = mu0.hi if isinstance(mu0, RealInterval) else Fraction(mu0)
    mu_lo = mu0.lo if isinstance(mu0, RealInterval) else Fraction(mu0)
    beyond, cutoff, delta = _excess_data(field, ws, None, mv, prec, budget)
    pi = pi_interval(bits)

    def delta_hat(t: Fraction) -> Fraction:
        excess = _excess_upper(beyond, cutoff, delta, field.degree, t, bits)
        leading = (Fraction(n0) * exp_interval(-(pi * t * mu_hi), bits)).lo
        return excess / leading

    t1 = Fraction(1)
    for _ in range(MAX_RADIUS_STEPS):
        if delta_hat(t1) <= Fraction(1, 2**14):
            break
        t1 *= 2
    else:
        raise BudgetExceededError(budget)
    t2 = 2 * t1
    d1 = delta_hat(t1)
    d2 = delta_hat(t2)
    s1 = psi_truncated(field, ws, t1, prec, budget).enclosure()
    s2 = psi_truncated(field, ws, t2, prec, budget).enclosure()
    slope = (log_interval(s1 - 1, bits) - log_interval(s2 - 1, bits)) / (pi * t1)
    widen_lo = (log_interval(RealInterval.point(1 + d1), bits) / (pi * t1)).hi
    widen_hi = (log_interval(RealInterval.point(1 + d2), bits) / (pi * t1)).hi
    mu_cert = RealInterval(slope.lo - widen_lo, slope.hi + widen_hi)
    n_iv = (s2 - 1) * exp_interval(pi * t2 * mu_cert, bits) / RealInterval(
        Fraction(1), 1 + d2
    )
    n_hat = round(n_iv.mid)
    ok_mu = mu_cert.hi >= mu_lo and mu_cert.lo <= mu_hi
    if not ok_mu or n_hat != n0 or not n_iv.contains(Fraction(n_hat)):
        raise SelfTestError(
            "cusp readout disagrees with enumeration: "
            f"mu {mu_cert!r} vs {mu0!r}, n {n_hat} vs {n0}"
        )
    return mu_cert, n_hat
