"""Exact linear algebra over Q on plain lists of Fractions.

Matrices are lists of rows. Elimination is fraction-free (Bareiss) on
integer-scaled rows; only the final echelon form is divided back to Q.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence

from .scalars import lcm_of_denominators

Vector = List[Fraction]
Matrix = List[List[Fraction]]


def zeros(n: int) -> Vector:
    return [Fraction(0)] * n


def unit(n: int, i: int) -> Vector:
    v = zeros(n)
    v[i] = Fraction(1)
    return v


def identity(n: int) -> Matrix:
    return [unit(n, i) for i in range(n)]


def is_zero_vector(v: Sequence[Fraction]) -> bool:
    return all(x == 0 for x in v)


def mat_vec(m: Matrix, v: Sequence[Fraction]) -> Vector:
    return [sum((a * b for a, b in zip(row, v) if a and b), Fraction(0)) for row in m]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    bt = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col) if x and y), Fraction(0)) for col in bt] for row in a]


def transpose(m: Matrix) -> Matrix:
    return [list(col) for col in zip(*m)]


def _integer_rows(m: Matrix) -> List[List[int]]:
    rows = []
    for row in m:
        d = lcm_of_denominators(row)
        rows.append([int(x * d) for x in row])
    return rows


def _bareiss_echelon(rows: List[List[int]], ncols: int):
    """Fraction-free forward elimination in place. Returns pivot columns."""
    pivots = []
    prev = 1
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r >= nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        prow = rows[r]
        for i in range(r + 1, nrows):
            row = rows[i]
            f = row[c]
            if f == 0:
                # still need the Bareiss rescale for exact division to stay valid
                rows[i] = [(piv * x) // prev for x in row]
                continue
            rows[i] = [(piv * x - f * y) // prev for x, y in zip(row, prow)]
        prev = piv
        pivots.append(c)
        r += 1
    return pivots


def rref(m: Matrix, ncols: Optional[int] = None):
    """Reduced row echelon form over Q. Returns (nonzero rows, pivot columns)."""
    if not m:
        return [], []
    ncols = len(m[0]) if ncols is None else ncols
    rows = _integer_rows(m)
    pivots = _bareiss_echelon(rows, ncols)
    ech = [[Fraction(x, row[c]) for x in row] for row, c in zip(rows, pivots)]
    # back substitution to reduced form
    for k in range(len(pivots) - 1, -1, -1):
        c = pivots[k]
        pk = ech[k]
        for i in range(k):
            f = ech[i][c]
            if f:
                ech[i] = [x - f * y for x, y in zip(ech[i], pk)]
    return ech, pivots


def rank(m: Matrix) -> int:
    return len(rref(m)[1]) if m else 0


@dataclass(frozen=True)
class Subspace:
    """Subspace of Q^ambient_dim, stored by its unique reduced echelon basis."""

    ambient_dim: int
    basis: tuple  # tuple of tuples of Fractions

    @classmethod
    def span(cls, ambient_dim: int, vectors: Sequence[Sequence[Fraction]]) -> "Subspace":
        vecs = [list(v) for v in vectors if not is_zero_vector(v)]
        if not vecs:
            return cls(ambient_dim, ())
        ech, _ = rref(vecs, ambient_dim)
        return cls(ambient_dim, tuple(tuple(r) for r in ech))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def pivots(self) -> List[int]:
        return [next(i for i, x in enumerate(row) if x != 0) for row in self.basis]

    def coordinates(self, v: Sequence[Fraction]) -> Optional[Vector]:
        """Coordinates of v in the echelon basis, or None if v is not in the subspace."""
        coords = [v[p] for p in self.pivots()]
        recon = zeros(self.ambient_dim)
        for c, row in zip(coords, self.basis):
            if c:
                for j, x in enumerate(row):
                    if x:
                        recon[j] += c * x
        return coords if recon == list(v) else None

    def contains(self, v: Sequence[Fraction]) -> bool:
        return self.coordinates(v) is not None

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.basis)

    def __eq__(self, other):
        return isinstance(other, Subspace) and self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))


def nullspace(m: Matrix, ncols: Optional[int] = None) -> Subspace:
    """Kernel {v : m v = 0} as an echelonized Subspace."""
    if ncols is None:
        if not m:
            raise ValueError("ncols required for an empty matrix")
        ncols = len(m[0])
    rows = [row for row in m if not is_zero_vector(row)]
    if not rows:
        return Subspace.span(ncols, identity(ncols))
    ech, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = zeros(ncols)
        v[f] = Fraction(1)
        for row, p in zip(ech, pivots):
            v[p] = -row[f]
        basis.append(v)
    return Subspace.span(ncols, basis)


def solve(m: Matrix, b: Sequence[Fraction]) -> Optional[Vector]:
    """One solution x of m x = b, or None."""
    ncols = len(m[0])
    aug = [list(row) + [bi] for row, bi in zip(m, b)]
    ech, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = zeros(ncols)
    for row, p in zip(ech, pivots):
        x[p] = row[ncols]
    return x


def inverse(m: Matrix) -> Matrix:
    n = len(m)
    aug = [list(row) + unit(n, i) for i, row in enumerate(m)]
    ech, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ValueError("matrix is singular")
    return [row[n:] for row in ech[:n]]


def determinant(m: Matrix) -> Fraction:
    n = len(m)
    a = [list(r) for r in m]
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det *= a[c][c]
        for i in range(c + 1, n):
            f = a[i][c] / a[c][c]
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return det


def charpoly(m: Matrix) -> List[Fraction]:
    """Coefficients [c_0, ..., c_n] of det(t*I - m), c_n = 1 (Faddeev-LeVerrier)."""
    n = len(m)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    mk = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        mk = mat_mul(m, mk)
        for i in range(n):
            mk[i][i] += coeffs[n - k + 1]
        am = mat_mul(m, mk)
        coeffs[n - k] = -sum((am[i][i] for i in range(n)), Fraction(0)) / k
    return coeffs


def _divisors(n: int) -> List[int]:
    from .quadforms import factorize

    n = abs(n)
    divs = [1]
    for p, e in factorize(n).items():
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def rational_roots(coeffs: Sequence[Fraction]) -> List[Fraction]:
    """Distinct rational roots of sum coeffs[i] t^i (rational root theorem)."""
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    if len(c) <= 1:
        return []
    roots = []
    if c[0] == 0:
        roots.append(Fraction(0))
        while c and c[0] == 0:
            c.pop(0)
    d = lcm_of_denominators(c)
    ints = [int(x * d) for x in c]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    ints = [x // g for x in ints]
    if len(ints) > 1:
        for p in _divisors(ints[0]):
            for q in _divisors(ints[-1]):
                if math.gcd(p, q) != 1:
                    continue
                for cand in (Fraction(p, q), Fraction(-p, q)):
                    val = 0
                    for a in reversed(ints):
                        val = val * cand + a
                    if val == 0 and cand not in roots:
                        roots.append(cand)
    return roots
