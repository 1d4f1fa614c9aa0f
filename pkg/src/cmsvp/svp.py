"""Shortest-vector ground truth for weighted norms on O_F and its ideals.

This module turns a field, a weight vector, and an optional ideal generator
into a Gram matrix, and answers questions about short vectors exactly:

- for equal rational weights the Gram is exact (half-trace form) and
  enumeration is exact integer arithmetic end to end;
- for unequal or irrational weights the Gram has certified interval entries;
  enumeration then runs on a rational lower form whose candidate set provably
  contains every true short vector, and candidates are kept or discarded by
  certified interval evaluation, with exact algebraic tie-breaking.

On top of the enumerator sit the finite characteristic set E (norm bound
plus the half-open fundamental chamber in log-unit coordinates), a convex
hull check for minimizer images, and the circulant Craig lattice Grams used
for cross-checking.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from . import lattice
from .embeddings import (
    log_sigma,
    normalize_weights,
    sigma,
    sigma_real,
    weighted_norm,
    weights_are_equal_rational,
)
from .errors import (
    InputError,
    NonPrimeConductorError,
    NotPositiveDefiniteError,
    PrecisionError,
)
from .field import (
    CMField,
    FieldElement,
    exact_divide,
    field_norm,
    is_prime,
    trace,
)
from .interval import (
    DEFAULT_PRECISION,
    PrecisionConfig,
    RealInterval,
    interval_json,
    log_interval,
    root_interval,
    solve_cramer,
)
from .units import UnitBasis, fundamental_domain_vertices

MAX_REFINEMENTS = 3
QUANTIZE_BITS = 24


@dataclass(frozen=True)
class GramMatrix:
    """Symmetric positive-definite Gram; exact rational or certified interval."""

    entries: tuple[tuple, ...]
    exact: bool
    scale: Fraction = Fraction(1)

    @property
    def dimension(self) -> int:
        return len(self.entries)

    def rows(self) -> list[list]:
        return [list(r) for r in self.entries]

    def scaled(self, factor) -> "GramMatrix":
        factor = Fraction(factor)
        if factor <= 0:
            raise InputError("scale factor must be positive")
        ent = tuple(tuple(e * factor for e in row) for row in self.entries)
        return GramMatrix(ent, self.exact, self.scale * factor)


@dataclass(frozen=True)
class ShortVectorSet:
    """Minimum of the form, its attaining vectors, and the search record."""

    mu: object
    vectors: tuple[tuple[int, ...], ...]
    radius: Fraction
    nodes: int

    @property
    def count(self) -> int:
        return len(self.vectors)

    def to_json(self) -> dict:
        mu = interval_json(self.mu) if isinstance(self.mu, RealInterval) else str(self.mu)
        return {
            "mu": mu,
            "count": self.count,
            "vectors": [list(v) for v in self.vectors],
            "radius": str(self.radius),
            "nodes": self.nodes,
        }


@dataclass(frozen=True)
class CharacteristicSetE:
    """Finite chamber representatives: bounded norm, log coordinates in [0,1)."""

    elements: tuple[FieldElement, ...]
    log_matrix: tuple[tuple[RealInterval, ...], ...]
    norm_bound: RealInterval

    @property
    def size(self) -> int:
        return len(self.elements)

    def to_json(self) -> dict:
        return {
            "size": self.size,
            "elements": [list(e.coords) for e in self.elements],
        }


def _basis_element(field: CMField, kappa, coords) -> FieldElement:
    a = field.element(coords)
    return a if kappa is None else kappa * a


def gram_matrix(
    field: CMField,
    w=None,
    kappa: FieldElement | None = None,
    prec: PrecisionConfig = DEFAULT_PRECISION,
) -> GramMatrix:
    """Gram of the basis {kappa zeta^i} (or {zeta^i}) under the weighted norm.

    Equal rational weights give exact entries w0 * Tr(kk~ zeta^(i-j)) / 2;
    any other weights give certified interval entries.  Positive
    definiteness is certified in both cases.
    """
    ws = normalize_weights(field, w)
    if kappa is not None and kappa.is_zero():
        raise InputError("ideal generator must be nonzero")
    d = field.degree
    kk = field.one() if kappa is None else kappa * kappa.conj()
    if weights_are_equal_rational(ws):
        w0 = ws[0]
        t = [w0 * Fraction(trace(kk * field.zeta(j)), 2) for j in range(d)]
        ent = tuple(tuple(t[abs(i - j)] for j in range(d)) for i in range(d))
        g = GramMatrix(ent, True)
        lattice.ldl(g.rows())
        return g
    cur = prec
    for _ in range(MAX_REFINEMENTS + 1):
        t = []
        for j in range(d):
            elem = kk * (field.zeta(j) + field.zeta(-j))
            vals = sigma_real(field, elem, cur)
            total = sum((x * v for x, v in zip(ws, vals)), RealInterval.point(0))
            t.append(total * Fraction(1, 2))
        ent = tuple(tuple(t[abs(i - j)] for j in range(d)) for i in range(d))
        g = GramMatrix(ent, False)
        try:
            _floor_form(g)
            return g
        except NotPositiveDefiniteError:
            cur = cur.doubled()
    raise NotPositiveDefiniteError(
        "interval Gram could not be certified positive definite"
    )


def _floor_form(g: GramMatrix) -> tuple[list[list[Fraction]], list[list[Fraction]], Fraction]:
    """Rational (lower form, midpoint form, entry slack) for an interval Gram.

    Midpoints are quantized to 24 fractional bits so downstream exact
    arithmetic stays cheap; the lower form subtracts dim*eps from the
    diagonal, which dominates the symmetric error matrix by Gershgorin.
    """
    d = g.dimension
    q = 1 << QUANTIZE_BITS
    mid = [[Fraction(round(e.mid * q), q) for e in row] for row in g.entries]
    eps = Fraction(0)
    for i in range(d):
        for j in range(d):
            e = g.entries[i][j]
            eps = max(eps, e.hi - mid[i][j], mid[i][j] - e.lo)
    low = [row[:] for row in mid]
    for i in range(d):
        low[i][i] -= d * eps
    lattice.ldl(low)
    return low, mid, eps


def enumerate_short(
    g: GramMatrix,
    radius,
    budget: int = lattice.DEFAULT_BUDGET,
) -> ShortVectorSet:
    """Exhaustive short-vector search on an exact Gram.

    Finds every nonzero vector with form value <= radius and returns the
    minimum with all its attaining vectors.
    """
    if not g.exact:
        raise InputError("exact enumeration needs an exact-rational Gram")
    radius = Fraction(radius)
    if radius <= 0:
        raise InputError("enumeration radius must be positive")
    found, nodes = lattice.enumerate_short(g.rows(), radius, budget)
    if not found:
        return ShortVectorSet(None, (), radius, nodes)
    mu = min(v for _, v in found)
    mins = tuple(sorted(c for c, v in found if v == mu))
    return ShortVectorSet(mu, mins, radius, nodes)


def _interval_minimum(field, ws, kappa, prec, budget):
    """Minimum cluster for interval weights: superset search plus certified
    filtering, grouped by the exact algebraic value alpha*conj(alpha)."""
    cur = prec
    for _ in range(MAX_REFINEMENTS + 1):
        g = gram_matrix(field, ws, kappa, cur)
        low, _, _ = _floor_form(g)
        _, u = lattice.lll_reduce(low)
        radius = None
        for row in u:
            val = weighted_norm(field, _basis_element(field, kappa, row), ws, cur)
            if radius is None or val.hi < radius:
                radius = val.hi
        cands, nodes = lattice.enumerate_short(low, radius, budget)
        groups: dict[FieldElement, list] = {}
        vals: dict[FieldElement, RealInterval] = {}
        for coords, _ in cands:
            a = _basis_element(field, kappa, coords)
            beta = a * a.conj()
            if beta not in groups:
                groups[beta] = []
                vals[beta] = weighted_norm(field, a, ws, cur)
            groups[beta].append(coords)
        m_hi = min(v.hi for v in vals.values())
        alive = [b for b, v in vals.items() if v.lo <= m_hi]
        if len(alive) == 1:
            win = alive[0]
            return vals[win], tuple(sorted(groups[win])), radius, nodes
        cur = cur.doubled()
    raise PrecisionError(
        "minimum cluster did not separate; weights may tie distinct values exactly"
    )


def minimal_vectors(
    field: CMField,
    w=None,
    kappa: FieldElement | None = None,
    prec: PrecisionConfig = DEFAULT_PRECISION,
    budget: int = lattice.DEFAULT_BUDGET,
) -> ShortVectorSet:
    """Minimum and all minimizers of the weighted norm on O_F or an ideal.

    The search radius is automatic (norm of the best reduced basis vector),
    so the result is the true minimum shell.
    """
    ws = normalize_weights(field, w)
    if weights_are_equal_rational(ws):
        g = gram_matrix(field, ws, kappa, prec)
        mu, mins, radius, nodes = lattice.minimum_shell(g.rows(), budget)
        return ShortVectorSet(mu, tuple(mins), radius, nodes)
    mu, mins, radius, nodes = _interval_minimum(field, ws, kappa, prec, budget)
    return ShortVectorSet(mu, mins, radius, nodes)


def _equal_weight_q(field: CMField, a: FieldElement) -> Fraction:
    return Fraction(trace(a * a.conj()), 2)


def _chamber_exponents(
    field: CMField,
    basis: UnitBasis,
    w: FieldElement,
    prec: PrecisionConfig,
) -> tuple[int, ...]:
    """Integer exponents a with w / prod g_j^a_j in the fundamental chamber.

    Chamber coordinates c solve sum_j c_j log sigma_m(g_j conj(g_j)) =
    log sigma_m(w conj(w)) - log N / k over the first k-1 embeddings; the
    answer is floor(c).  Interval straddles on integer walls are resolved
    exactly: c equals an integer vector a iff w / prod g^a times its
    conjugate is rational.
    """
    k1 = len(basis.generators)
    n_abs = abs(field_norm(w))
    if n_abs == 0:
        raise InputError("chamber reduction needs a nonzero element")
    cur = prec
    for _ in range(MAX_REFINEMENTS + 1):
        mat = []
        for gj in basis.generators:
            mat.append(list(log_sigma(field, gj, cur)[:k1]))
        mat = [[mat[j][m] for j in range(k1)] for m in range(k1)]
        ys = log_sigma(field, w, cur)
        shift = log_interval(RealInterval.point(Fraction(n_abs)), cur.bits) / field.k
        rhs = [ys[m] - shift for m in range(k1)]
        c = solve_cramer(mat, rhs)
        floors = []
        straddle = False
        for cj in c:
            f_lo = cj.lo.numerator // cj.lo.denominator
            f_hi = cj.hi.numerator // cj.hi.denominator
            if f_lo == f_hi:
                floors.append(f_lo)
            else:
                straddle = True
                floors.append(None)
        if not straddle:
            return tuple(floors)
        guess = tuple(round(cj.mid) for cj in c)
        red = w
        for gj, a in zip(basis.generators, guess):
            for _ in range(a):
                red = exact_divide(red, gj)
            for _ in range(-a):
                red = red * gj
        bb = red * red.conj()
        if all(x == 0 for x in bb.coords[1:]):
            # exactly on a wall lattice point: c == guess, floor == guess
            return guess
        cur = cur.doubled()
    raise PrecisionError("chamber coordinates did not separate from a wall")


def reduce_to_chamber(
    field: CMField,
    basis: UnitBasis,
    w: FieldElement,
    prec: PrecisionConfig = DEFAULT_PRECISION,
) -> tuple[FieldElement, tuple[int, ...]]:
    """(w / prod g^a, a) with the quotient's log coordinates in [0,1)^(k-1)."""
    exps = _chamber_exponents(field, basis, w, prec)
    red = w
    for gj, a in zip(basis.generators, exps):
        for _ in range(a):
            red = exact_divide(red, gj)
        for _ in range(-a):
            red = red * gj
    return red, exps


def characteristic_set_E(
    field: CMField,
    basis: UnitBasis,
    report,
    prec: PrecisionConfig = DEFAULT_PRECISION,
    budget: int = lattice.DEFAULT_BUDGET,
) -> CharacteristicSetE:
    """All integral points with bounded absolute norm whose log coordinates
    lie in the fundamental chamber cube [0,1)^(k-1).

    Any such point has equal-weight norm at most bound^(1/k) times the
    largest equal-weight norm among the 2^(k-1) chamber vertex units (the
    form is log-convex over the cube, so the maximum sits at a vertex),
    which turns the infinite norm-bounded region into one finite search.
    """
    bound = report.bound
    k = field.k
    q_max = max(_equal_weight_q(field, v) for v in fundamental_domain_vertices(basis))
    radius = (root_interval(RealInterval.point(bound.hi), k, prec.bits) * q_max).hi
    g = gram_matrix(field, None, None, prec)
    found, _ = lattice.enumerate_short(g.rows(), radius, budget)
    elements = []
    for coords, _ in found:
        a = field.element(coords)
        n_abs = abs(field_norm(a))
        if Fraction(n_abs) > bound.hi:
            continue
        if _chamber_exponents(field, basis, a, prec) == (0,) * (k - 1):
            elements.append(a)
    elements.sort(key=lambda e: e.coords)
    k1 = len(basis.generators)
    log_rows = tuple(
        tuple(log_sigma(field, gj, prec)[:k1]) for gj in basis.generators
    )
    return CharacteristicSetE(tuple(elements), log_rows, bound)


def _simplex_lp(points: list[tuple[Fraction, ...]], target_index: int) -> Fraction:
    """max t with some |h|_inf <= 1 satisfying h.(x - x*) >= t for all x.

    Exact rational simplex method with Bland's rule.  The optimum is 0 when
    x* lies on the hull boundary and negative when it is interior.
    """
    k = len(points[0])
    star = points[target_index]
    diffs = [tuple(x - s for x, s in zip(p, star)) for p in points]
    ncols = 2 * k + 2  # h+ , h-, t+, t-
    rows = []
    rhs = []
    for d in diffs:
        rows.append([-x for x in d] + [x for x in d] + [Fraction(1), Fraction(-1)])
        rhs.append(Fraction(0))
    for i in range(2 * k):
        row = [Fraction(0)] * ncols
        row[i] = Fraction(1)
        rows.append(row)
        rhs.append(Fraction(1))
    obj = [Fraction(0)] * ncols
    obj[-2] = Fraction(1)
    obj[-1] = Fraction(-1)

    m = len(rows)
    total = ncols + m
    tab = [rows[i] + [Fraction(1) if j == i else Fraction(0) for j in range(m)] + [rhs[i]] for i in range(m)]
    cost = [-x for x in obj] + [Fraction(0)] * m + [Fraction(0)]
    basic = list(range(ncols, ncols + m))
    while True:
        enter = next((j for j in range(total) if cost[j] < 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            if tab[i][enter] > 0:
                ratio = tab[i][total] / tab[i][enter]
                if best is None or ratio < best or (
                    ratio == best and basic[i] < basic[leave]
                ):
                    best = ratio
                    leave = i
        if leave is None:
            raise InputError("hull LP unbounded; degenerate input")
        piv = tab[leave][enter]
        tab[leave] = [x / piv for x in tab[leave]]
        for i in range(m):
            if i != leave and tab[i][enter] != 0:
                f = tab[i][enter]
                tab[i] = [a - f * b for a, b in zip(tab[i], tab[leave])]
        if cost[enter] != 0:
            f = cost[enter]
            cost = [a - f * b for a, b in zip(cost, tab[leave])]
        basic[leave] = enter
    value = Fraction(0)
    for i, b in enumerate(basic):
        if b == ncols - 2:
            value += tab[i][total]
        elif b == ncols - 1:
            value -= tab[i][total]
    return value


def hull_check(
    field: CMField,
    w,
    sample_radius=Fraction(3),
    prec: PrecisionConfig = DEFAULT_PRECISION,
    budget: int = lattice.DEFAULT_BUDGET,
) -> bool:
    """Do all weighted-norm minimizers map to the hull boundary of the
    enumerated Sigma images?  Exact LP on certified midpoints."""
    if field.k not in (2, 3):
        raise InputError("hull check is implemented for k in {2, 3}")
    ws = normalize_weights(field, w)
    mv = minimal_vectors(field, ws, None, prec, budget)
    if isinstance(mv.mu, RealInterval):
        radius = sample_radius * mv.mu.hi
    else:
        radius = sample_radius * mv.mu
    if weights_are_equal_rational(ws):
        g = gram_matrix(field, ws, None, prec)
        cands, _ = lattice.enumerate_short(g.rows(), radius, budget)
        coords_list = [c for c, _ in cands]
    else:
        g = gram_matrix(field, ws, None, prec)
        low, _, _ = _floor_form(g)
        cands, _ = lattice.enumerate_short(low, radius, budget)
        coords_list = []
        for c, _ in cands:
            a = field.element(c)
            if weighted_norm(field, a, ws, prec).lo <= radius:
                coords_list.append(c)
    images: dict[FieldElement, tuple] = {}
    max_width = Fraction(0)
    for c in coords_list:
        a = field.element(c)
        beta = a * a.conj()
        if beta in images:
            continue
        vals = sigma(field, a, prec)
        max_width = max(max_width, *(v.width for v in vals))
        images[beta] = tuple(v.mid for v in vals)
    points = list(images.values())
    order = {b: i for i, b in enumerate(images)}
    tol = field.k * max_width
    a0 = field.element(mv.vectors[0])
    beta0 = a0 * a0.conj()
    t_opt = _simplex_lp(points, order[beta0])
    return t_opt >= -2 * tol


def hull_consistency(
    field: CMField,
    sample_radius=Fraction(3),
    trials: int = 3,
    prec: PrecisionConfig = DEFAULT_PRECISION,
    seed: int = 0,
    weights_list=None,
) -> bool:
    """hull_check over several weight vectors: equal weights first, then
    seeded random positive rationals (or an explicit list)."""
    if weights_list is None:
        rng = random.Random(seed)
        weights_list = [tuple(Fraction(1) for _ in range(field.k))]
        while len(weights_list) < trials:
            weights_list.append(
                tuple(
                    Fraction(rng.randint(1, 9), rng.randint(1, 3))
                    for _ in range(field.k)
                )
            )
    return all(
        hull_check(field, ws, sample_radius, prec) for ws in weights_list
    )


def craig_circulant(n_ambient: int, r: int) -> GramMatrix:
    """Gram of the circulant lattice: the image of Z^(n+1) under (1-T)^r.

    For r = 0 the image is all of Z^(n+1) (identity Gram); for r >= 1 it is
    the rank-n lattice spanned by (1-T)^r e_j, j = 0..n-1, in the standard
    inner product.
    """
    n = n_ambient
    if n < 2 or not is_prime(n + 1):
        raise NonPrimeConductorError(
            f"circulant construction needs a prime ambient+1, got {n + 1}"
        )
    if r < 0:
        raise InputError("circulant exponent must be nonnegative")
    if r == 0:
        ent = tuple(
            tuple(Fraction(1 if i == j else 0) for j in range(n + 1))
            for i in range(n + 1)
        )
        return GramMatrix(ent, True)
    vecs = []
    for j in range(n):
        v = [0] * (n + 1)
        for s in range(r + 1):
            v[(j + s) % (n + 1)] += (-1) ** s * comb(r, s)
        vecs.append(v)
    ent = tuple(
        tuple(Fraction(sum(a * b for a, b in zip(vi, vj))) for vj in vecs)
        for vi in vecs
    )
    lattice.ldl([list(row) for row in ent])
    return GramMatrix(ent, True)
