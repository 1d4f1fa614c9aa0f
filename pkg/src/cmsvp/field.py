"""Exact arithmetic in the ring of integers Z[zeta_n] of a cyclotomic field.

Elements are integer coordinate vectors in the power basis 1, zeta, ...,
zeta^(d-1) with d = phi(n).  All operations -- multiplication, complex
conjugation, norm, trace, exact division -- are carried out over Python
integers and Fractions, with no floating point anywhere.
"""

from __future__ import annotations

import functools
import math
from fractions import Fraction

from .errors import InputError


def _poly_divide_exact(num: list[int], den: list[int]) -> list[int]:
    """Quotient of num/den for integer polynomials dividing exactly.

    Coefficient lists are ascending.  Raises if the division leaves a
    remainder; used only for the cyclotomic-polynomial recursion where
    exactness is guaranteed.
    """
    num = list(num)
    dd = len(den) - 1
    out = [0] * (len(num) - dd)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + dd]
        if c % den[dd] != 0:
            raise ArithmeticError("non-exact polynomial division")
        q = c // den[dd]
        out[i] = q
        if q:
            for j, dc in enumerate(den):
                num[i + j] -= q * dc
    if any(num):
        raise ArithmeticError("non-exact polynomial division")
    return out


@functools.lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Ascending integer coefficients of the n-th cyclotomic polynomial."""
    if n < 1:
        raise InputError("conductor must be a positive integer")
    if n == 1:
        return (-1, 1)
    poly = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divide_exact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class CMField:
    """A cyclotomic field Q(zeta_n), n > 2, with precomputed reduction data.

    The field is CM of degree d = phi(n) over Q with maximal real subfield
    of degree k = d/2.
    """

    def __init__(self, conductor: int):
        if conductor < 3:
            # conductors 1 and 2 give Q, which is not CM
            raise InputError("conductor must be an integer >= 3")
        self.conductor = conductor
        phi = cyclotomic_polynomial(conductor)
        self.polynomial = phi
        self.degree = len(phi) - 1
        if self.degree % 2 != 0:
            raise InputError("field is not CM: odd degree")
        self.k = self.degree // 2
        self._reduction = self._build_reduction()
        self._zeta_traces = self._build_zeta_traces()

    def _build_reduction(self) -> list[tuple[int, ...]]:
        """Coordinates of x^(d+i) mod Phi_n for i = 0..d-2."""
        d = self.degree
        phi = self.polynomial
        rows = []
        cur = [-c for c in phi[:d]]  # x^d = -(phi_0 + ... + phi_{d-1} x^{d-1})
        rows.append(tuple(cur))
        for _ in range(d - 2):
            shifted = [0] + cur[:-1]
            top = cur[-1]
            if top:
                base = rows[0]
                shifted = [s + top * b for s, b in zip(shifted, base)]
            cur = shifted
            rows.append(tuple(cur))
        return rows

    def _build_zeta_traces(self) -> tuple[int, ...]:
        """Tr(zeta^j) for j = 0..n-1, via the multiplication matrix diagonal."""
        out = []
        d = self.degree
        for j in range(self.conductor):
            elem = self.zeta(j)
            tr = 0
            for i in range(d):
                basis = FieldElement(self, tuple(1 if t == i else 0 for t in range(d)))
                tr += (elem * basis).coords[i]
            out.append(tr)
        return tuple(out)

    # -- element constructors ------------------------------------------------

    def element(self, coords) -> "FieldElement":
        coords = tuple(int(c) for c in coords)
        if len(coords) != self.degree:
            raise InputError(
                f"expected {self.degree} coordinates, got {len(coords)}"
            )
        return FieldElement(self, coords)

    def zero(self) -> "FieldElement":
        return FieldElement(self, (0,) * self.degree)

    def one(self) -> "FieldElement":
        return self.zeta(0)

    def zeta(self, power: int = 1) -> "FieldElement":
        """zeta_n^power as an element, any integer power."""
        power %= self.conductor
        d = self.degree
        if power < d:
            return FieldElement(self, tuple(1 if i == power else 0 for i in range(d)))
        coords = [0] * d
        coords[d - 1] = 1
        elem = FieldElement(self, tuple(coords))
        out = elem
        for _ in range(power - (d - 1)):
            out = out * FieldElement(self, tuple(1 if i == 1 else 0 for i in range(d)))
        return out

    def parse(self, text: str) -> "FieldElement":
        """Element from a comma-separated coordinate string like '3,0,1,1'."""
        try:
            coords = [int(part.strip()) for part in text.split(",")]
        except ValueError as exc:
            raise InputError(f"bad coordinate string {text!r}") from exc
        return self.element(coords)

    def torsion_units(self) -> list["FieldElement"]:
        """All roots of unity in O_F: ±zeta^j (2n elements for odd n)."""
        out = []
        for j in range(self.conductor):
            z = self.zeta(j)
            out.append(z)
            m = -z
            if m not in out:
                out.append(m)
        # dedupe preserving order; even conductors have -1 = zeta^(n/2)
        seen = []
        for u in out:
            if u not in seen:
                seen.append(u)
        return seen

    def torsion_order(self) -> int:
        n = self.conductor
        return 2 * n if n % 2 else n

    def __eq__(self, other):
        return isinstance(other, CMField) and other.conductor == self.conductor

    def __hash__(self):
        return hash(("CMField", self.conductor))

    def __repr__(self):
        return f"CMField({self.conductor})"


class FieldElement:
    """Integer coordinate vector in the power basis of Z[zeta_n]."""

    __slots__ = ("field", "coords")

    def __init__(self, field: CMField, coords: tuple[int, ...]):
        self.field = field
        self.coords = coords

    def _check(self, other: "FieldElement"):
        if self.field != other.field:
            raise InputError("elements belong to different fields")

    def __add__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.field, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.field, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "FieldElement":
        return FieldElement(self.field, tuple(-a for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, int):
            return FieldElement(self.field, tuple(a * other for a in self.coords))
        self._check(other)
        d = self.field.degree
        a, b = self.coords, other.coords
        prod = [0] * (2 * d - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        prod[i + j] += ai * bj
        out = list(prod[:d])
        red = self.field._reduction
        for i in range(d, 2 * d - 1):
            c = prod[i]
            if c:
                row = red[i - d]
                for t in range(d):
                    out[t] += c * row[t]
        return FieldElement(self.field, tuple(out))

    __rmul__ = __mul__

    def __eq__(self, other):
        return (
            isinstance(other, FieldElement)
            and other.field == self.field
            and other.coords == self.coords
        )

    def __hash__(self):
        return hash((self.field.conductor, self.coords))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def conj(self) -> "FieldElement":
        """Complex conjugation: zeta -> zeta^(-1)."""
        field = self.field
        out = field.zero()
        for j, c in enumerate(self.coords):
            if c:
                out = out + c * field.zeta(-j)
        return out

    def format(self) -> str:
        return ",".join(str(c) for c in self.coords)

    def __repr__(self):
        return f"FieldElement({self.field.conductor}; {self.format()})"


def mult_matrix(a: FieldElement) -> list[list[int]]:
    """Matrix of multiplication by a on the power basis (columns are a*zeta^j)."""
    field = a.field
    d = field.degree
    cols = []
    cur = a
    zeta = field.zeta(1)
    for _ in range(d):
        cols.append(cur.coords)
        cur = cur * zeta
    return [[cols[j][i] for j in range(d)] for i in range(d)]


def _det_bareiss(m: list[list[int]]) -> int:
    """Exact determinant of an integer matrix (fraction-free Bareiss)."""
    a = [row[:] for row in m]
    n = len(a)
    sign = 1
    prev = 1
    for i in range(n - 1):
        if a[i][i] == 0:
            for r in range(i + 1, n):
                if a[r][i] != 0:
                    a[i], a[r] = a[r], a[i]
                    sign = -sign
                    break
            else:
                return 0
        for r in range(i + 1, n):
            for c in range(i + 1, n):
                a[r][c] = (a[r][c] * a[i][i] - a[r][i] * a[i][c]) // prev
            a[r][i] = 0
        prev = a[i][i]
    return sign * a[n - 1][n - 1]


def field_norm(a: FieldElement) -> int:
    """N_{F/Q}(a) as an exact integer; nonnegative for CM fields."""
    if a.is_zero():
        return 0
    return _det_bareiss(mult_matrix(a))


def trace(a: FieldElement) -> int:
    """Tr_{F/Q}(a) as an exact integer."""
    zt = a.field._zeta_traces
    return sum(c * zt[j] for j, c in enumerate(a.coords))


def is_unit(a: FieldElement) -> bool:
    return not a.is_zero() and abs(field_norm(a)) == 1


def exact_divide(a: FieldElement, b: FieldElement) -> FieldElement:
    """The unique x in O_F with x*b = a; raises InputError if none exists."""
    if b.is_zero():
        raise InputError("division by zero element")
    field = a.field
    d = field.degree
    m = mult_matrix(b)
    # Gaussian elimination over Fractions
    aug = [[Fraction(m[i][j]) for j in range(d)] + [Fraction(a.coords[i])] for i in range(d)]
    for col in range(d):
        piv = None
        for r in range(col, d):
            if aug[r][col] != 0:
                piv = r
                break
        if piv is None:
            raise InputError("element is not divisible (singular system)")
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [v / pv for v in aug[col]]
        for r in range(d):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [v - f * w for v, w in zip(aug[r], aug[col])]
    coords = []
    for i in range(d):
        v = aug[i][d]
        if v.denominator != 1:
            raise InputError("element is not divisible in the ring of integers")
        coords.append(int(v))
    x = field.element(coords)
    if not (x * b) == a:
        raise InputError("division check failed")
    return x


def gcd_of_coords(a: FieldElement) -> int:
    return math.gcd(*a.coords) if any(a.coords) else 0
