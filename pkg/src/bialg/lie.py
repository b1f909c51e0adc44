"""Lie algebras over Q given by structure constants.

[b_i, b_j] = sum_k sc[i][j][k] b_k. Tensor bases are ordered
lexicographically: b_i (x) b_j has index i*n + j, b_i (x) b_j (x) b_k has
index (i*n + j)*n + k.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .linalg import Matrix, Subspace, Vector, nullspace, zeros
from .scalars import Q, format_rational


class LieAlgebraError(ValueError):
    pass


class LieAlgebra:
    def __init__(self, dim: int, sc, name: Optional[str] = None, basis_names: Optional[Sequence[str]] = None):
        if dim < 1:
            raise LieAlgebraError("dimension must be positive")
        self.dim = dim
        self.sc = tuple(tuple(tuple(Q(c) for c in sc[i][j]) for j in range(dim)) for i in range(dim))
        for i in range(dim):
            for j in range(dim):
                if len(self.sc[i][j]) != dim:
                    raise LieAlgebraError("structure constants must be an n x n x n array")
        self.name = name
        self.basis_names = tuple(basis_names) if basis_names else tuple(f"b{i}" for i in range(dim))
        if len(self.basis_names) != dim:
            raise LieAlgebraError("basis_names length differs from dim")

    @classmethod
    def from_brackets(cls, dim: int, brackets: Dict[Tuple[int, int], Dict[int, object]], **kw) -> "LieAlgebra":
        """Build from i<j entries; the antisymmetric completion is implicit."""
        sc = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
        for (i, j), value in brackets.items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise LieAlgebraError(f"bracket index ({i},{j}) out of range for dim {dim}")
            for k, c in value.items():
                if not 0 <= k < dim:
                    raise LieAlgebraError(f"basis index {k} out of range for dim {dim}")
                c = Q(c)
                sc[i][j][k] += c
                sc[j][i][k] -= c
        return cls(dim, sc, **kw)

    @cached_property
    def sparse(self) -> Dict[Tuple[int, int], List[Tuple[int, Fraction]]]:
        out = {}
        for i in range(self.dim):
            for j in range(self.dim):
                terms = [(k, c) for k, c in enumerate(self.sc[i][j]) if c != 0]
                if terms:
                    out[(i, j)] = terms
        return out

    def __eq__(self, other):
        return isinstance(other, LieAlgebra) and self.sc == other.sc

    def __hash__(self):
        return hash(self.sc)

    def __repr__(self):
        return f"LieAlgebra(dim={self.dim}, name={self.name!r})"

    def to_json(self) -> dict:
        brackets = []
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                val = {str(k): format_rational(c) for k, c in enumerate(self.sc[i][j]) if c != 0}
                if val:
                    brackets.append({"i": i, "j": j, "value": val})
        return {"dim": self.dim, "basis": list(self.basis_names), "brackets": brackets}


def bracket(g: LieAlgebra, u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    if len(u) != g.dim or len(v) != g.dim:
        raise LieAlgebraError(f"vectors must have length {g.dim}")
    out = zeros(g.dim)
    for (i, j), terms in g.sparse.items():
        a, b = u[i], v[j]
        if a and b:
            ab = a * b
            for k, c in terms:
                out[k] += ab * c
    return out


@dataclass
class ValidationReport:
    ok: bool
    violations: List[str]


def validate(g: LieAlgebra) -> ValidationReport:
    n = g.dim
    violations = []
    for i in range(n):
        for j in range(i, n):
            for k in range(n):
                if g.sc[i][j][k] != -g.sc[j][i][k]:
                    violations.append(f"antisymmetry fails at ({i},{j},{k})")
    if not violations:
        e = linalg.identity(n)
        for i, j, k in itertools.combinations(range(n), 3):
            jac = zeros(n)
            for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                t = bracket(g, bracket(g, e[a], e[b]), e[c])
                jac = [x + y for x, y in zip(jac, t)]
            if any(jac):
                violations.append(f"Jacobi fails at ({i},{j},{k})")
    return ValidationReport(not violations, violations)


def ad_matrix(g: LieAlgebra, x: Sequence[Fraction]) -> Matrix:
    """Matrix of ad x in the standard basis (column j = [x, b_j])."""
    n = g.dim
    m = [[Fraction(0)] * n for _ in range(n)]
    for (i, j), terms in g.sparse.items():
        if x[i]:
            for k, c in terms:
                m[k][j] += x[i] * c
    return m


def adjoint_action_matrix(g: LieAlgebra, x: Sequence[Fraction], power: int) -> Matrix:
    """Matrix of x acting diagonally on the power-fold tensor power of g."""
    if power not in (1, 2, 3):
        raise LieAlgebraError("power must be 1, 2 or 3")
    a = ad_matrix(g, x)
    n = g.dim
    N = n**power
    m = [[Fraction(0)] * N for _ in range(N)]
    for col in range(N):
        idx = _digits(col, n, power)
        for slot in range(power):
            j = idx[slot]
            for k in range(n):
                c = a[k][j]
                if c:
                    new = list(idx)
                    new[slot] = k
                    m[_index(new, n)][col] += c
    return m


def _digits(index: int, n: int, power: int) -> List[int]:
    out = []
    for _ in range(power):
        out.append(index % n)
        index //= n
    return out[::-1]


def _index(digits: Sequence[int], n: int) -> int:
    out = 0
    for d in digits:
        out = out * n + d
    return out


def structure_rows(g: LieAlgebra) -> Matrix:
    """All [b_i, b_j] for i < j."""
    e = linalg.identity(g.dim)
    return [bracket(g, e[i], e[j]) for i in range(g.dim) for j in range(i + 1, g.dim)]


def derived_subalgebra(g: LieAlgebra) -> Subspace:
    return Subspace.span(g.dim, structure_rows(g))


def center(g: LieAlgebra) -> Subspace:
    e = linalg.identity(g.dim)
    stacked = [row for i in range(g.dim) for row in ad_matrix(g, e[i])]
    return nullspace(stacked, g.dim)


def is_abelian(g: LieAlgebra) -> bool:
    return not g.sparse


def _derived_of_subspace(g: LieAlgebra, s: Subspace) -> Subspace:
    vecs = [list(v) for v in s.basis]
    rows = [bracket(g, vecs[a], vecs[b]) for a in range(len(vecs)) for b in range(a + 1, len(vecs))]
    return Subspace.span(g.dim, rows)


def derived_series(g: LieAlgebra) -> List[Subspace]:
    series = [Subspace.span(g.dim, linalg.identity(g.dim))]
    while True:
        nxt = _derived_of_subspace(g, series[-1])
        if nxt == series[-1]:
            return series
        series.append(nxt)
        if nxt.dim == 0:
            return series


def is_solvable(g: LieAlgebra) -> bool:
    return derived_series(g)[-1].dim == 0


def killing_form(g: LieAlgebra) -> Matrix:
    n = g.dim
    e = linalg.identity(n)
    ads = [ad_matrix(g, e[i]) for i in range(n)]
    kappa = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            t = sum((ads[i][a][b] * ads[j][b][a] for a in range(n) for b in range(n)), Fraction(0))
            kappa[i][j] = kappa[j][i] = t
    return kappa


def bilinear(form: Matrix, u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((u[i] * form[i][j] * v[j] for i in range(len(u)) if u[i] for j in range(len(v)) if v[j]), Fraction(0))


def change_basis(g: LieAlgebra, new_basis: Matrix, name: Optional[str] = None, basis_names=None) -> LieAlgebra:
    """Structure constants in the basis whose k-th vector is row k of ``new_basis``."""
    n = g.dim
    if len(new_basis) != n or linalg.rank(new_basis) != n:
        raise LieAlgebraError("new basis is not a basis")
    pt = linalg.transpose(new_basis)
    sc = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            coords = linalg.solve(pt, bracket(g, new_basis[i], new_basis[j]))
            if coords is None:
                raise LieAlgebraError("new basis is not a basis")
            sc[i][j] = coords
    return LieAlgebra(n, sc, name=name, basis_names=basis_names)


# --- three-dimensional classification ----------------------------------------


@dataclass(frozen=True)
class Classification3:
    """kind is one of "abelian", "heisenberg", "s_lambda", "simple".

    Row k of ``basis_change`` is the k-th canonical basis vector written in the
    input basis: (p, q, hbar), (h, s1, s2) or (e1, e2, e3).
    """

    kind: str
    basis_change: tuple
    lam: Optional[tuple] = None  # 2x2, [h, s_i] = lam[i][0] s1 + lam[i][1] s2
    alpha: Optional[Fraction] = None
    beta: Optional[Fraction] = None

    @property
    def trace(self) -> Fraction:
        return self.lam[0][0] + self.lam[1][1]

    @property
    def det(self) -> Fraction:
        return self.lam[0][0] * self.lam[1][1] - self.lam[0][1] * self.lam[1][0]

    def to_json(self) -> dict:
        out = {"kind": self.kind, "basis_change": [[format_rational(x) for x in row] for row in self.basis_change]}
        if self.lam is not None:
            out["lambda"] = [[format_rational(x) for x in row] for row in self.lam]
            out["trace"] = format_rational(self.trace)
            out["det"] = format_rational(self.det)
        if self.alpha is not None:
            out["alpha"] = format_rational(self.alpha)
            out["beta"] = format_rational(self.beta)
        return out


def canonical_algebra(c: Classification3) -> LieAlgebra:
    if c.kind == "abelian":
        return abelian(3)
    if c.kind == "heisenberg":
        return heisenberg(1)
    if c.kind == "s_lambda":
        return s_lambda(*c.lam[0], *c.lam[1])
    return quaternionic(c.alpha, c.beta)


def _first_outside(candidates: Sequence[Sequence[Fraction]], sub: Subspace):
    for v in candidates:
        if not sub.contains(v):
            return list(v)
    return None


def classify3(g: LieAlgebra) -> Classification3:
    if g.dim != 3:
        raise LieAlgebraError("classify3 needs a three-dimensional algebra")
    e = linalg.identity(3)
    derived = derived_subalgebra(g)
    if derived.dim == 0:
        return Classification3("abelian", tuple(tuple(r) for r in e))
    if derived.dim == 3:
        alpha, beta, basis = quaternionic_presentation(g)
        return Classification3("simple", tuple(tuple(r) for r in basis), alpha=alpha, beta=beta)
    if derived.dim == 1:
        d = list(derived.basis[0])
        if center(g).contains(d):
            i, j = next((i, j) for i in range(3) for j in range(i + 1, 3) if any(bracket(g, e[i], e[j])))
            hbar = bracket(g, e[i], e[j])
            basis = [e[i], e[j], hbar]
            _check_presentation(g, basis, heisenberg(1))
            return Classification3("heisenberg", tuple(tuple(r) for r in basis))
        centralizer = nullspace(ad_matrix(g, d), 3)
        c = _first_outside([list(v) for v in centralizer.basis], Subspace.span(3, [d]))
        ideal = Subspace.span(3, [d, c])
    else:
        ideal = derived
        a, b = (list(v) for v in derived.basis)
        if any(bracket(g, a, b)):
            raise LieAlgebraError("two-dimensional non-abelian derived subalgebra in dimension 3")
    s1, s2 = (list(v) for v in ideal.basis)
    h = _first_outside(e, ideal)
    lam = []
    for s in (s1, s2):
        coords = ideal.coordinates(bracket(g, h, s))
        if coords is None:
            raise LieAlgebraError("extracted subspace is not an ideal")
        lam.append(tuple(coords))
    basis = [h, s1, s2]
    _check_presentation(g, basis, s_lambda(*lam[0], *lam[1]))
    return Classification3("s_lambda", tuple(tuple(r) for r in basis), lam=tuple(lam))


def _check_presentation(g: LieAlgebra, basis: Matrix, canonical: LieAlgebra):
    if change_basis(g, basis).sc != canonical.sc:
        raise LieAlgebraError(f"basis change does not produce the canonical {canonical.name} brackets")


def _orthogonal_basis(form: Matrix, n: int) -> Matrix:
    """Orthogonal (not normalized) basis for a nondegenerate symmetric form."""
    remaining = linalg.identity(n)
    out = []
    while remaining:
        pick = next((i for i, v in enumerate(remaining) if bilinear(form, v, v) != 0), None)
        if pick is not None:
            w = remaining.pop(pick)
        else:
            pair = next(
                ((i, j) for i in range(len(remaining)) for j in range(i + 1, len(remaining))
                 if bilinear(form, remaining[i], remaining[j]) != 0),
                None,
            )
            if pair is None:
                raise LieAlgebraError("Killing form is degenerate; algebra is not simple")
            i, j = pair
            w = [a + b for a, b in zip(remaining[i], remaining[j])]
            remaining.pop(j)
        kw = bilinear(form, w, w)
        remaining = [[a - bilinear(form, v, w) / kw * b for a, b in zip(v, w)] for v in remaining]
        remaining = [v for v in remaining if any(v)]
        out.append(w)
    return out


def quaternionic_presentation(g: LieAlgebra) -> Tuple[Fraction, Fraction, Matrix]:
    """(alpha, beta, basis) with [e1,e2]=e3, [e2,e3]=beta e1, [e3,e1]=alpha e2."""
    if g.dim != 3 or derived_subalgebra(g).dim != 3:
        raise LieAlgebraError("not simple: need a perfect three-dimensional algebra")
    f = _orthogonal_basis(killing_form(g), 3)
    if len(f) != 3:
        raise LieAlgebraError("not simple: Killing form is degenerate")
    span = Subspace.span(3, f)

    def coef(u, v, w):
        # [u, v] = c w for the cyclic kappa-orthogonal basis
        b = bracket(g, u, v)
        k = next(i for i, x in enumerate(w) if x != 0)
        c = b[k] / w[k]
        if [c * x for x in w] != b:
            raise LieAlgebraError("bracket of orthogonal basis vectors is not cyclic")
        return c

    assert span.dim == 3
    c3 = coef(f[0], f[1], f[2])
    c1 = coef(f[1], f[2], f[0])
    c2 = coef(f[2], f[0], f[1])
    if 0 in (c1, c2, c3):
        raise LieAlgebraError("not simple: degenerate cyclic structure")
    basis = [f[0], f[1], [c3 * x for x in f[2]]]
    alpha, beta = c2 * c3, c1 * c3
    _check_presentation(g, basis, quaternionic(alpha, beta))
    return alpha, beta, basis


# --- presets ------------------------------------------------------------------


def abelian(n: int) -> LieAlgebra:
    return LieAlgebra.from_brackets(n, {}, name=f"abelian:{n}")


def sl2() -> LieAlgebra:
    # H, E, F with [H,E]=2E, [H,F]=-2F, [E,F]=H
    return LieAlgebra.from_brackets(
        3, {(0, 1): {1: 2}, (0, 2): {2: -2}, (1, 2): {0: 1}}, name="sl2", basis_names=("H", "E", "F")
    )


def heisenberg(k: int) -> LieAlgebra:
    """Basis p_1..p_k, q_1..q_k, hbar with [p_i, q_i] = hbar."""
    n = 2 * k + 1
    names = [f"p{i + 1}" for i in range(k)] + [f"q{i + 1}" for i in range(k)] + ["hbar"]
    if k == 1:
        names = ["p", "q", "hbar"]
    return LieAlgebra.from_brackets(
        n, {(i, k + i): {n - 1: 1} for i in range(k)}, name=f"heisenberg{k}", basis_names=names
    )


def quaternionic(alpha, beta) -> LieAlgebra:
    alpha, beta = Q(alpha), Q(beta)
    if alpha == 0 or beta == 0:
        raise LieAlgebraError("quaternionic parameters must be nonzero")
    return LieAlgebra.from_brackets(
        3,
        {(0, 1): {2: 1}, (1, 2): {0: beta}, (0, 2): {1: -alpha}},
        name=f"quat:{format_rational(alpha)},{format_rational(beta)}",
        basis_names=("e1", "e2", "e3"),
    )


def s_lambda(l11, l12, l21, l22) -> LieAlgebra:
    l11, l12, l21, l22 = (Q(x) for x in (l11, l12, l21, l22))
    return LieAlgebra.from_brackets(
        3,
        {(0, 1): {1: l11, 2: l12}, (0, 2): {1: l21, 2: l22}},
        name="slam:" + ",".join(format_rational(x) for x in (l11, l12, l21, l22)),
        basis_names=("h", "s1", "s2"),
    )


def preset(name_spec: str) -> LieAlgebra:
    """Resolve a preset name: sl2, heisenberg1, heisenberg2, quat:a,b, slam:a,b,c,d, abelian:n."""
    name, _, args = name_spec.partition(":")
    params = [a for a in args.split(",")] if args else []
    try:
        if name == "sl2" and not params:
            return sl2()
        if name.startswith("heisenberg") and not params and name[len("heisenberg"):].isdigit():
            k = int(name[len("heisenberg"):])
            if k >= 1:
                return heisenberg(k)
        if name == "quat" and len(params) == 2:
            return quaternionic(*params)
        if name == "slam" and len(params) == 4:
            return s_lambda(*params)
        if name == "abelian" and len(params) == 1 and int(params[0]) >= 1:
            return abelian(int(params[0]))
    except ValueError as exc:
        raise LieAlgebraError(f"bad preset {name_spec!r}: {exc}") from exc
    raise LieAlgebraError(f"unknown preset {name_spec!r}")


PRESET_NAMES = ("sl2", "heisenberg1", "heisenberg2", "quat:a,b", "slam:a,b,c,d", "abelian:n")


def from_json(data: dict) -> LieAlgebra:
    if not isinstance(data, dict) or "dim" not in data:
        raise LieAlgebraError("algebra JSON needs a 'dim' field")
    dim = data["dim"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise LieAlgebraError("'dim' must be a positive integer")
    brackets = {}
    for entry in data.get("brackets", []):
        try:
            i, j, value = entry["i"], entry["j"], entry["value"]
        except (KeyError, TypeError) as exc:
            raise LieAlgebraError(f"malformed bracket entry {entry!r}") from exc
        if not (isinstance(i, int) and isinstance(j, int)) or i >= j:
            raise LieAlgebraError(f"bracket entries must have integer i < j, got {entry!r}")
        if (i, j) in brackets:
            raise LieAlgebraError(f"duplicate bracket entry ({i},{j})")
        if not isinstance(value, dict):
            raise LieAlgebraError(f"bracket value must be an object, got {value!r}")
        try:
            brackets[(i, j)] = {int(k): Q(str(v)) for k, v in value.items()}
        except ValueError as exc:
            raise LieAlgebraError(f"malformed bracket value {value!r}: {exc}") from exc
    names = data.get("basis")
    if names is not None and len(names) != dim:
        raise LieAlgebraError(f"'basis' has {len(names)} names for dim {dim}")
    return LieAlgebra.from_brackets(dim, brackets, basis_names=names, name=data.get("name"))
