"""Certified norm bounds for weighted-norm minimizers.

The central quantity: for each simplex vertex chain Delta_s build the k x k
matrix A whose j-th row is Sigma(v_j), the difference matrix B whose rows
are consecutive vertex differences, and the k minors B_l obtained by
deleting column l.  The bound for the simplex is

    | (det A / k)^k / prod_l det B_l |

and the reported bound is the maximum over all (k-1)! simplices.  Any
nonzero element whose weighted norm is minimal has field norm at most this
maximum, for every choice of positive weights.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .embeddings import sigma
from .errors import DegenerateSimplexError, InputError
from .field import CMField, FieldElement, field_norm, is_prime
from .interval import (
    DEFAULT_PRECISION,
    PrecisionConfig,
    RealInterval,
    det_interval,
    interval_max,
    interval_prod,
)
from .units import DeltaSet, UnitBasis, delta_sets


class Verdict(enum.Enum):
    ALL_MINIMA_ARE_UNITS = "AllMinimaAreUnits"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class SimplexData:
    """Certified determinant data for one simplex Delta_s."""

    perm: tuple[int, ...]
    vertices: tuple[FieldElement, ...]
    det_a: RealInterval
    det_b: tuple[RealInterval, ...]
    value: RealInterval


@dataclass(frozen=True)
class BoundReport:
    conductor: int
    k: int
    basis_provenance: str
    simplices: tuple[SimplexData, ...]
    bound: RealInterval
    ideal_norm: int | None = None
    ideal_bound: RealInterval | None = None
    verdict: Verdict | None = None


def _simplex_at_precision(
    field: CMField, delta: DeltaSet, prec: PrecisionConfig
) -> SimplexData:
    k = field.k
    rows = [list(sigma(field, v, prec)) for v in delta.vertices]
    det_a = det_interval(rows)
    diff = [
        [rows[i + 1][j] - rows[i][j] for j in range(k)]
        for i in range(k - 1)
    ]
    det_bs = []
    for l in range(k):
        minor = [[row[c] for c in range(k) if c != l] for row in diff]
        det_bs.append(det_interval(minor))
    for l, db in enumerate(det_bs):
        if db.contains_zero():
            raise DegenerateSimplexError(delta.perm, l)
    value = abs((det_a / k) ** k / interval_prod(det_bs))
    return SimplexData(delta.perm, delta.vertices, det_a, tuple(det_bs), value)


def simplex_data(
    field: CMField, delta: DeltaSet, prec: PrecisionConfig = DEFAULT_PRECISION
) -> SimplexData:
    """Certified simplex data, retrying once at doubled precision before
    declaring a minor degenerate."""
    try:
        return _simplex_at_precision(field, delta, prec)
    except DegenerateSimplexError:
        return _simplex_at_precision(field, delta, prec.doubled())


def theorem_bound(
    field: CMField, basis: UnitBasis, prec: PrecisionConfig = DEFAULT_PRECISION
) -> BoundReport:
    """The certified norm bound: max over all simplices of the simplex value."""
    simplices = tuple(simplex_data(field, d, prec) for d in delta_sets(basis))
    bound = interval_max(s.value for s in simplices)
    return BoundReport(
        conductor=field.conductor,
        k=field.k,
        basis_provenance=basis.provenance,
        simplices=simplices,
        bound=bound,
    )


def ideal_bound(
    field: CMField,
    basis: UnitBasis,
    kappa: FieldElement,
    prec: PrecisionConfig = DEFAULT_PRECISION,
) -> BoundReport:
    """Norm bound for minimal vectors of the principal ideal (kappa):
    the theorem bound scaled by N(kappa)."""
    if kappa.is_zero():
        raise InputError("ideal generator must be nonzero")
    base = theorem_bound(field, basis, prec)
    n_kappa = abs(field_norm(kappa))
    return BoundReport(
        conductor=base.conductor,
        k=base.k,
        basis_provenance=base.basis_provenance,
        simplices=base.simplices,
        bound=base.bound,
        ideal_norm=n_kappa,
        ideal_bound=base.bound * Fraction(n_kappa),
    )


def norm_gap_verdict(report: BoundReport, p: int) -> Verdict:
    """AllMinimaAreUnits when the certified upper end of the bound is < p.

    For prime conductor p, nonzero elements of Z[zeta_p] have field norm 1
    or >= p, so a bound below p forces every minimal vector to be a unit.
    """
    if not is_prime(p):
        raise InputError("the norm-gap argument needs a prime conductor")
    if report.bound.less_than(p):
        return Verdict.ALL_MINIMA_ARE_UNITS
    return Verdict.INCONCLUSIVE


def with_verdict(report: BoundReport, verdict: Verdict) -> BoundReport:
    return BoundReport(
        conductor=report.conductor,
        k=report.k,
        basis_provenance=report.basis_provenance,
        simplices=report.simplices,
        bound=report.bound,
        ideal_norm=report.ideal_norm,
        ideal_bound=report.ideal_bound,
        verdict=verdict,
    )
