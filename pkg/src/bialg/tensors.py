"""Exact 2- and 3-tensors over a Lie algebra: switch/cycle, wedges, the
classical Yang-Baxter operator, coboundary cobrackets and the Lie
(co/bi)algebra axiom checks.

Tensors are stored densely (n**2 or n**3 Fractions, lexicographic basis).
Skew tensors use the unnormalized identification

    u ^ v = u(x)v - v(x)u,    u ^ v ^ w = sum_sigma sign(sigma) ...
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from .lie import LieAlgebra, adjoint_action_matrix, bracket
from .linalg import Vector, is_zero_vector, mat_vec, zeros
from .scalars import Q, format_rational


class TensorError(ValueError):
    pass


def _dim_from_len(length: int, power: int) -> int:
    n = round(length ** (1 / power))
    for m in (n - 1, n, n + 1):
        if m > 0 and m**power == length:
            return m
    raise TensorError(f"length {length} is not a perfect {power}-th power")


# --- constructors -----------------------------------------------------------


def tensor2(n: int, entries: Optional[Dict] = None) -> Vector:
    t = zeros(n * n)
    for (i, j), c in (entries or {}).items():
        t[i * n + j] += Q(c)
    return t


def outer(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    return [a * b for a in u for b in v]


def outer3(u, v, w) -> Vector:
    return [a * b * c for a in u for b in v for c in w]


def wedge(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    return [x - y for x, y in zip(outer(u, v), outer(v, u))]


def wedge3(u, v, w) -> Vector:
    out = zeros(len(u) ** 3)
    vecs = (u, v, w)
    for perm in itertools.permutations(range(3)):
        sign = _perm_sign(perm)
        t = outer3(*(vecs[p] for p in perm))
        out = [a + sign * b for a, b in zip(out, t)]
    return out


def _perm_sign(perm) -> int:
    sign = 1
    p = list(perm)
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                sign = -sign
    return sign


def basis_wedge(n: int, i: int, j: int) -> Vector:
    t = zeros(n * n)
    t[i * n + j] += 1
    t[j * n + i] -= 1
    return t


def basis_wedge3(n: int, i: int, j: int, k: int) -> Vector:
    e = [[Fraction(int(a == b)) for b in range(n)] for a in range(n)]
    return wedge3(e[i], e[j], e[k])


# --- permutations and projectors ---------------------------------------------


def switch(t: Sequence[Fraction]) -> Vector:
    n = _dim_from_len(len(t), 2)
    return [t[j * n + i] for i in range(n) for j in range(n)]


def cycle(t: Sequence[Fraction]) -> Vector:
    """x(x)y(x)z -> y(x)z(x)x."""
    n = _dim_from_len(len(t), 3)
    out = zeros(n**3)
    for x in range(n):
        for y in range(n):
            for z in range(n):
                out[(y * n + z) * n + x] = t[(x * n + y) * n + z]
    return out


def sym(t: Sequence[Fraction]) -> Vector:
    return [(a + b) / 2 for a, b in zip(t, switch(t))]


def skew(t: Sequence[Fraction]) -> Vector:
    return [(a - b) / 2 for a, b in zip(t, switch(t))]


def is_skew(t: Sequence[Fraction]) -> bool:
    return all(a == -b for a, b in zip(t, switch(t)))


def is_symmetric(t: Sequence[Fraction]) -> bool:
    return list(t) == switch(t)


def wedge3_coefficient(t: Sequence[Fraction], n: int = 3) -> Optional[Fraction]:
    """c with t == c * b0^b1^b2 (n = 3), or None when t is not such a multiple."""
    c = t[(0 * n + 1) * n + 2]
    return c if [c * x for x in basis_wedge3(n, 0, 1, 2)] == list(t) else None


# --- Yang-Baxter -------------------------------------------------------------


def _entries(r: Sequence[Fraction], n: int):
    return [(i // n, i % n, c) for i, c in enumerate(r) if c != 0]


def cyb(g: LieAlgebra, r: Sequence[Fraction]) -> Vector:
    """[r12, r13] + [r12, r23] + [r13, r23], evaluated from the three commutator sums."""
    n = g.dim
    if len(r) != n * n:
        raise TensorError(f"2-tensor over a {n}-dimensional algebra needs {n * n} entries")
    out = zeros(n**3)
    ent = _entries(r, n)
    sc = g.sparse
    for a, b, x in ent:
        for c, d, y in ent:
            xy = x * y
            # [r12, r13] = sum [r_i, r_j] (x) r_i' (x) r_j'
            for e, s in sc.get((a, c), ()):
                out[(e * n + b) * n + d] += xy * s
            # [r12, r23] = sum r_i (x) [r_i', r_j] (x) r_j'
            for e, s in sc.get((b, c), ()):
                out[(a * n + e) * n + d] += xy * s
            # [r13, r23] = sum r_i (x) r_j (x) [r_i', r_j']
            for e, s in sc.get((b, d), ()):
                out[(a * n + c) * n + e] += xy * s
    return out


def schouten_bilinear(g: LieAlgebra, s: Sequence[Fraction], t: Sequence[Fraction]) -> Vector:
    """Polarization {s, t} = CYB(s+t) - CYB(s) - CYB(t) of the Yang-Baxter operator on skew tensors."""
    if not (is_skew(s) and is_skew(t)):
        raise TensorError("schouten_bilinear needs skew-symmetric arguments")
    st = [a + b for a, b in zip(s, t)]
    return [a - b - c for a, b, c in zip(cyb(g, st), cyb(g, s), cyb(g, t))]


# --- actions and cobrackets --------------------------------------------------


def act2(g: LieAlgebra, x: Sequence[Fraction], t: Sequence[Fraction]) -> Vector:
    """x . t for the adjoint diagonal action on g (x) g."""
    n = g.dim
    out = zeros(n * n)
    for a, b, c in _entries(t, n):
        xa = bracket(g, x, _unit(n, a))
        xb = bracket(g, x, _unit(n, b))
        for k, v in enumerate(xa):
            if v:
                out[k * n + b] += c * v
        for k, v in enumerate(xb):
            if v:
                out[a * n + k] += c * v
    return out


def act3(g: LieAlgebra, x: Sequence[Fraction], t: Sequence[Fraction]) -> Vector:
    n = g.dim
    out = zeros(n**3)
    adx = [bracket(g, x, _unit(n, j)) for j in range(n)]
    for idx, c in enumerate(t):
        if c == 0:
            continue
        digits = (idx // (n * n), (idx // n) % n, idx % n)
        for slot in range(3):
            for k, v in enumerate(adx[digits[slot]]):
                if v:
                    d = list(digits)
                    d[slot] = k
                    out[(d[0] * n + d[1]) * n + d[2]] += c * v
    return out


def _unit(n: int, i: int) -> Vector:
    v = zeros(n)
    v[i] = Fraction(1)
    return v


@dataclass
class Cobracket:
    """delta: g -> g(x)g; ``matrix[i]`` is delta(b_i) as an n**2 coefficient row."""

    algebra: LieAlgebra
    matrix: List[Vector]
    r: Optional[Vector] = None

    def __call__(self, x: Sequence[Fraction]) -> Vector:
        n = self.algebra.dim
        out = zeros(n * n)
        for i, c in enumerate(x):
            if c:
                out = [a + c * b for a, b in zip(out, self.matrix[i])]
        return out

    @property
    def is_zero(self) -> bool:
        return all(is_zero_vector(row) for row in self.matrix)


def delta_r(g: LieAlgebra, r: Sequence[Fraction]) -> Cobracket:
    n = g.dim
    if len(r) != n * n:
        raise TensorError(f"2-tensor over a {n}-dimensional algebra needs {n * n} entries")
    r = list(r)
    return Cobracket(g, [act2(g, _unit(n, i), r) for i in range(n)], r)


def delta_r_via_action_matrix(g: LieAlgebra, r: Sequence[Fraction]) -> Cobracket:
    """Same cobracket assembled from ``adjoint_action_matrix(power=2)``."""
    n = g.dim
    return Cobracket(g, [mat_vec(adjoint_action_matrix(g, _unit(n, i), 2), r) for i in range(n)], list(r))


@dataclass
class AxiomReport:
    passes: bool
    checks: Dict[str, bool] = field(default_factory=dict)
    first_violation: Optional[str] = None

    def to_json(self) -> dict:
        return {"passes": self.passes, "checks": dict(self.checks), "first_violation": self.first_violation}


def _co_jacobi_image(delta: Cobracket, i: int) -> Vector:
    n = delta.algebra.dim
    d = delta.matrix[i]
    out = zeros(n**3)
    # (id (x) delta)(sum d_ab b_a (x) b_b) = sum d_ab b_a (x) delta(b_b)
    for a, b, c in _entries(d, n):
        for idx, v in enumerate(delta.matrix[b]):
            if v:
                out[a * n * n + idx] += c * v
    c1 = cycle(out)
    c2 = cycle(c1)
    return [x + y + z for x, y, z in zip(out, c1, c2)]


def check_coalgebra(g: LieAlgebra, delta: Cobracket) -> AxiomReport:
    n = g.dim
    first = None
    anti = True
    for i in range(n):
        if not is_skew(delta.matrix[i]):
            anti = False
            first = first or f"co-anticommutativity fails at b{i}"
    jac = True
    for i in range(n):
        if not is_zero_vector(_co_jacobi_image(delta, i)):
            jac = False
            first = first or f"co-Jacobi fails at b{i}"
    return AxiomReport(anti and jac, {"co_anticommutativity": anti, "co_jacobi": jac}, first)


def check_bialgebra(g: LieAlgebra, delta: Cobracket) -> AxiomReport:
    n = g.dim
    co = check_coalgebra(g, delta)
    deriv = True
    first = None
    e = [_unit(n, i) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            lhs = delta(bracket(g, e[i], e[j]))
            rhs = [a - b for a, b in zip(act2(g, e[i], delta.matrix[j]), act2(g, e[j], delta.matrix[i]))]
            if lhs != rhs:
                deriv = False
                first = first or f"derivation identity fails at (b{i}, b{j})"
                break
        if not deriv:
            break
    checks = dict(co.checks)
    checks["derivation"] = deriv
    return AxiomReport(co.passes and deriv, checks, co.first_violation or first)


@dataclass
class DrinfeldResult:
    is_bialgebra: bool
    sym_invariant: bool
    cyb_invariant: bool

    def to_json(self) -> dict:
        return {"is_bialgebra": self.is_bialgebra, "sym_invariant": self.sym_invariant, "cyb_invariant": self.cyb_invariant}


def drinfeld_criterion(g: LieAlgebra, r: Sequence[Fraction]) -> DrinfeldResult:
    from .invariants import is_invariant

    r = list(r)
    s = [a + b for a, b in zip(r, switch(r))]
    sym_inv = is_invariant(g, s)
    cyb_inv = is_invariant(g, cyb(g, r))
    return DrinfeldResult(sym_inv and cyb_inv, sym_inv, cyb_inv)


# --- transport and serialization --------------------------------------------


def transport2(r: Sequence[Fraction], basis) -> Vector:
    """Rewrite r given in the basis f_k = row k of ``basis`` in the standard basis."""
    n = len(basis)
    out = zeros(n * n)
    for i, j, c in _entries(r, n):
        for a in range(n):
            if basis[i][a]:
                for b in range(n):
                    if basis[j][b]:
                        out[a * n + b] += c * basis[i][a] * basis[j][b]
    return out


def tensor_to_json(t: Sequence[Fraction], power: int) -> Dict[str, str]:
    n = _dim_from_len(len(t), power)
    out = {}
    for idx, c in enumerate(t):
        if c != 0:
            digits = []
            k = idx
            for _ in range(power):
                digits.append(k % n)
                k //= n
            out[",".join(str(d) for d in reversed(digits))] = format_rational(c)
    return out


def tensor_from_json(data: Dict[str, object], n: int, power: int = 2) -> Vector:
    if not isinstance(data, dict):
        raise TensorError("tensor JSON must be an object mapping 'i,j' to rationals")
    t = zeros(n**power)
    for key, val in data.items():
        try:
            idx = [int(p) for p in str(key).split(",")]
        except ValueError as exc:
            raise TensorError(f"malformed tensor index {key!r}") from exc
        if len(idx) != power or any(not 0 <= i < n for i in idx):
            raise TensorError(f"tensor index {key!r} does not fit a {power}-tensor over dimension {n}")
        pos = 0
        for i in idx:
            pos = pos * n + i
        try:
            t[pos] += Q(str(val))
        except ValueError as exc:
            raise TensorError(f"malformed rational {val!r} at {key!r}") from exc
    return t
