"""Exact lattice algorithms on rational Gram matrices.

Everything here is Gram based: a lattice is its exact Gram matrix over
`fractions.Fraction`, basis changes are unimodular integer matrices, and no
floating point is involved.  Shortest-vector listing is Fincke-Pohst
enumeration over the LDL^T decomposition, preconditioned by a Gram-space
LLL reduction; integer branch bounds are obtained with `math.isqrt` plus an
exact adjustment, so every emitted vector and every omission is certain.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

from .errors import BudgetExceededError, NotPositiveDefiniteError

DEFAULT_BUDGET = 10**8
LLL_DELTA = Fraction(99, 100)


def ldl(g: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[Fraction]]:
    """G = L D L^T with unit lower-triangular L and positive diagonal D."""
    n = len(g)
    l = [[Fraction(0)] * n for _ in range(n)]
    d = [Fraction(0)] * n
    for i in range(n):
        l[i][i] = Fraction(1)
        for j in range(i):
            s = Fraction(g[i][j])
            for t in range(j):
                s -= l[i][t] * l[j][t] * d[t]
            l[i][j] = s / d[j]
        s = Fraction(g[i][i])
        for t in range(i):
            s -= l[i][t] * l[i][t] * d[t]
        if s <= 0:
            raise NotPositiveDefiniteError(
                f"pivot {i} of the LDL decomposition is {s}"
            )
        d[i] = s
    return l, d


def is_positive_definite(g: list[list[Fraction]]) -> bool:
    try:
        ldl(g)
        return True
    except NotPositiveDefiniteError:
        return False


def _gram_of_transform(g, u):
    """Gram of the basis with rows u in terms of the original Gram g."""
    n = len(g)
    gu = [[sum(g[i][j] * u[r][j] for j in range(n)) for i in range(n)] for r in range(n)]
    # gu[r][i] = (u g)[r][i]; final [r][s] = sum_i u[s][i] * gu[r][i]
    return [
        [sum(u[s][i] * gu[r][i] for i in range(n)) for s in range(n)]
        for r in range(n)
    ]


def lll_reduce(
    g: list[list[Fraction]], delta: Fraction = LLL_DELTA
) -> tuple[list[list[Fraction]], list[list[int]]]:
    """Gram-space LLL reduction.

    Returns (reduced Gram, unimodular transform U) with
    reduced = U G U^T; U has integer entries and determinant +-1.
    """
    n = len(g)
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    cur = [[Fraction(x) for x in row] for row in g]

    def gso():
        mu = [[Fraction(0)] * n for _ in range(n)]
        b = [Fraction(0)] * n
        for i in range(n):
            for j in range(i):
                s = cur[i][j]
                for t in range(j):
                    s -= mu[i][t] * mu[j][t] * b[t]
                mu[i][j] = s / b[j]
            s = cur[i][i]
            for t in range(i):
                s -= mu[i][t] * mu[i][t] * b[t]
            if s <= 0:
                raise NotPositiveDefiniteError("LLL input is not positive definite")
            b[i] = s
        return mu, b

    def row_op(i, j, r):
        # basis_i -= r * basis_j
        if r == 0:
            return
        for c in range(n):
            u[i][c] -= r * u[j][c]
        # update Gram: row/col i
        for c in range(n):
            cur[i][c] -= r * cur[j][c]
        for c in range(n):
            cur[c][i] -= r * cur[c][j]

    def swap(i, j):
        u[i], u[j] = u[j], u[i]
        cur[i], cur[j] = cur[j], cur[i]
        for row in cur:
            row[i], row[j] = row[j], row[i]

    mu, b = gso()
    i = 1
    while i < n:
        for j in range(i - 1, -1, -1):
            r = round(mu[i][j])
            if r:
                row_op(i, j, r)
                mu, b = gso()
        if b[i] >= (delta - mu[i][i - 1] ** 2) * b[i - 1]:
            i += 1
        else:
            swap(i, i - 1)
            mu, b = gso()
            i = max(i - 1, 1)
    return cur, u


def _range_bounds(center: Fraction, radius_sq: Fraction) -> tuple[int, int]:
    """Integer x range with (x - center)^2 <= radius_sq, exact.

    The walks only test the violated side, so they terminate even when the
    admissible interval contains no integer (the result is then empty).
    """
    if radius_sq < 0:
        return 1, 0
    # isqrt overestimate of the half-width, then exact one-sided adjustment
    approx = isqrt(radius_sq.numerator // radius_sq.denominator) + 2
    hi = int(center) + approx
    while hi > center and (hi - center) ** 2 > radius_sq:
        hi -= 1
    lo = int(center) - approx
    while lo < center and (center - lo) ** 2 > radius_sq:
        lo += 1
    return lo, hi


class _Budget:
    __slots__ = ("left", "total")

    def __init__(self, budget):
        self.left = budget
        self.total = budget

    def spend(self, k=1):
        self.left -= k
        if self.left < 0:
            raise BudgetExceededError(self.total)

    @property
    def used(self):
        return self.total - self.left


def enumerate_short(
    g: list[list[Fraction]],
    radius: Fraction,
    budget: int = DEFAULT_BUDGET,
    include_zero: bool = False,
) -> tuple[list[tuple[tuple[int, ...], Fraction]], int]:
    """All lattice vectors v with q(v) <= radius, exactly.

    Vectors come in +-v pairs; both are listed.  Returns (sorted list of
    (coordinates, value) pairs, nodes visited).  Coordinates refer to the
    Gram's own basis; ordering is lexicographic.
    """
    radius = Fraction(radius)
    n = len(g)
    reduced, u = lll_reduce(g)
    l, d = ldl(reduced)
    budget_box = _Budget(budget)
    half: list[tuple[tuple[int, ...], Fraction]] = []

    x = [0] * n

    def descend(level: int, remaining: Fraction, nonzero_seen: bool):
        if level < 0:
            if nonzero_seen:
                val = radius - remaining
                half.append((tuple(x), val))
            return
        center = Fraction(0)
        for j in range(level + 1, n):
            center -= l[j][level] * x[j]
        lo, hi = _range_bounds(center, remaining / d[level])
        if not nonzero_seen:
            # restrict to the canonical half-space: topmost nonzero coord > 0
            lo = max(lo, 0)
        for xv in range(lo, hi + 1):
            budget_box.spend()
            x[level] = xv
            step = d[level] * (xv - center) ** 2
            if xv == 0 and not nonzero_seen:
                descend(level - 1, remaining - step, False)
            else:
                descend(level - 1, remaining - step, True)
        x[level] = 0

    descend(n - 1, radius, False)

    out: list[tuple[tuple[int, ...], Fraction]] = []
    if include_zero:
        out.append(((0,) * n, Fraction(0)))
    for coords, val in half:
        # map back to the original basis: v = coords . U
        orig = tuple(
            sum(coords[r] * u[r][c] for r in range(n)) for c in range(n)
        )
        neg = tuple(-t for t in orig)
        out.append((orig, val))
        out.append((neg, val))
    out.sort(key=lambda p: p[0])
    return out, budget_box.used


def minimum_shell(
    g: list[list[Fraction]], budget: int = DEFAULT_BUDGET
) -> tuple[Fraction, list[tuple[int, ...]], Fraction, int]:
    """(minimum q, minimizers, search radius, nodes) for an exact Gram.

    The search radius is the smallest diagonal entry of the LLL-reduced
    Gram, which always contains a nonzero vector.
    """
    reduced, _ = lll_reduce(g)
    radius = min(reduced[i][i] for i in range(len(g)))
    vectors, nodes = enumerate_short(g, radius, budget)
    mu = min(v for _, v in vectors)
    mins = sorted(c for c, v in vectors if v == mu)
    return mu, mins, radius, nodes


def theta_counts(
    g: list[list[Fraction]], max_norm: Fraction, budget: int = DEFAULT_BUDGET
) -> list[tuple[Fraction, int]]:
    """Sorted (q, count) pairs for q <= max_norm, including q = 0."""
    vectors, _ = enumerate_short(g, Fraction(max_norm), budget, include_zero=True)
    counts: dict[Fraction, int] = {}
    for _, v in vectors:
        counts[v] = counts.get(v, 0) + 1
    return sorted(counts.items())
