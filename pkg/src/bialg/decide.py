"""Existence of non-trivial (quasi-)triangular and coboundary Lie bialgebra
structures over Q, with explicit r-matrix witnesses.

The verdict comes from the structural criterion: triangular structures exist
unless the algebra is abelian, a non-split three-dimensional simple algebra,
the Heisenberg algebra h1, or s_Lambda with tr = 0 and -det not a square.
Witnesses are searched in a fixed staged order and re-verified before they
are reported; a failed search never changes a verdict.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import linalg
from .invariants import is_invariant
from .lie import (
    Classification3,
    LieAlgebra,
    LieAlgebraError,
    ad_matrix,
    bracket,
    center,
    classify3,
    is_abelian,
    quaternionic,
    validate,
)
from .linalg import Subspace, is_zero_vector, nullspace
from .quadforms import DEFAULT_HEIGHT_BOUND, DiagQuadForm, isotropic_vector, quaternion_is_split
from .scalars import Q, TowerElement, format_rational, rat_is_square
from .tensors import (
    basis_wedge,
    cyb,
    delta_r,
    drinfeld_criterion,
    is_skew,
    schouten_bilinear,
    tensor_to_json,
    transport2,
    wedge,
    wedge3_coefficient,
)

HEIGHT_BOUND_ENV = "BIALG_HEIGHT_BOUND"


class InternalError(RuntimeError):
    """A constructed object failed its own verification."""


def default_height_bound() -> int:
    raw = os.environ.get(HEIGHT_BOUND_ENV)
    if raw is None:
        return DEFAULT_HEIGHT_BOUND
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{HEIGHT_BOUND_ENV} must be a positive integer, got {raw!r}") from None
    if value < 1:
        raise ValueError(f"{HEIGHT_BOUND_ENV} must be a positive integer, got {raw!r}")
    return value


# --- verification --------------------------------------------------------------


def delta_is_zero(g: LieAlgebra, r: Sequence[Fraction]) -> bool:
    return delta_r(g, r).is_zero


def verify_witness(g: LieAlgebra, r: Sequence[Fraction]) -> Dict[str, object]:
    c = cyb(g, r)
    d = drinfeld_criterion(g, r)
    return {
        "skew": is_skew(r),
        "cyb": tensor_to_json(c, 3),
        "cyb_zero": is_zero_vector(c),
        "cyb_invariant": d.cyb_invariant,
        "sym_invariant": d.sym_invariant,
        "drinfeld": d.is_bialgebra,
        "delta_nonzero": not delta_is_zero(g, r),
    }


def is_triangular_witness(g: LieAlgebra, r: Sequence[Fraction]) -> bool:
    return is_skew(r) and any(r) and is_zero_vector(cyb(g, r)) and not delta_is_zero(g, r)


def is_coboundary_witness(g: LieAlgebra, r: Sequence[Fraction]) -> bool:
    return drinfeld_criterion(g, r).is_bialgebra and not delta_is_zero(g, r)


# --- triangular witness search ------------------------------------------------


@dataclass
class WitnessResult:
    found: bool
    r: Optional[List[Fraction]] = None
    stage: Optional[str] = None


def _sorted_eigenvalues(m) -> List[Fraction]:
    roots = linalg.rational_roots(linalg.charpoly(m))
    return sorted((x for x in roots if x != 0), key=lambda x: (abs(x), x < 0))


def eigen_pairs(g: LieAlgebra, x: Sequence[Fraction]):
    """(lambda, s) with [x, s] = lambda s, s a kernel basis vector; kernel (lambda = 0) first."""
    a = ad_matrix(g, x)
    n = g.dim
    for lam in [Fraction(0)] + _sorted_eigenvalues(a):
        shifted = [[a[i][j] - (lam if i == j else 0) for j in range(n)] for i in range(n)]
        for s in nullspace(shifted, n).basis:
            yield lam, list(s)


def _stage_central(g: LieAlgebra):
    e = linalg.identity(g.dim)
    for z in center(g).basis:
        for a in e:
            yield wedge(a, list(z))


def _stage_eigen(g: LieAlgebra):
    e = linalg.identity(g.dim)
    # commuting pairs first, then genuine eigenvectors
    for want_zero in (True, False):
        for b in e:
            for lam, s in eigen_pairs(g, b):
                if (lam == 0) == want_zero:
                    yield wedge(b, s)


def _stage_dim3(g: LieAlgebra, height_bound: int):
    if g.dim != 3:
        return
    c = classify3(g)
    basis = [list(r) for r in c.basis_change]
    if c.kind == "s_lambda":
        (l11, l12), (l21, l22) = c.lam
        if c.trace != 0:
            yield transport2(basis_wedge(3, 1, 2), basis)
        # lambda12 X1^2 - (lambda11 - lambda22) X1 X2 - lambda21 X2^2 = 0
        xi = None
        if l12 == 0:
            xi = (Fraction(1), Fraction(0))
        else:
            disc = (l11 - l22) ** 2 + 4 * l12 * l21
            root = rat_is_square(disc)
            if root is not None:
                xi = ((l11 - l22 + root) / (2 * l12), Fraction(1))
        if xi is not None:
            r = [xi[0] * a + xi[1] * b for a, b in zip(basis_wedge(3, 0, 1), basis_wedge(3, 0, 2))]
            yield transport2(r, basis)
    elif c.kind == "simple":
        # skew r = eta12 e1^e2 + eta23 e2^e3 + eta31 e3^e1 has
        # CYB(r) = (eta12^2 + alpha eta31^2 + beta eta23^2) e1^e2^e3
        res = isotropic_vector(DiagQuadForm((1, c.alpha, c.beta)), height_bound)
        if res.isotropic:
            eta12, eta31, eta23 = (Fraction(x) for x in res.witness)
            r = [
                eta12 * a + eta23 * b + eta31 * d
                for a, b, d in zip(basis_wedge(3, 0, 1), basis_wedge(3, 1, 2), basis_wedge(3, 2, 0))
            ]
            yield transport2(r, basis)


def _stage_pairs(g: LieAlgebra):
    n = g.dim
    e = linalg.identity(n)
    cands = [list(v) for v in e]
    for i in range(n):
        for j in range(i + 1, n):
            for s in (1, -1):
                cands.append([a + s * b for a, b in zip(e[i], e[j])])
    for u, v in itertools.combinations(cands, 2):
        r = wedge(u, v)
        if not any(r):
            continue
        if Subspace.span(n, [u, v]).contains(bracket(g, u, v)):
            yield r


def exhaustive_skew_search(g: LieAlgebra, values: Sequence[int] = (0, 1, -1, 2, -2)):
    """All skew r with wedge coordinates in ``values`` (i<j), CYB(r) = 0 and delta_r != 0,
    in enumeration order. CYB is expanded as a quadratic form in the coordinates and
    evaluated over integers in bulk."""
    n = g.dim
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    m = len(pairs)
    if m == 0:
        return []
    wedges = [basis_wedge(n, i, j) for i, j in pairs]
    monos = [(p, q) for p in range(m) for q in range(p, m)]
    cols = []
    for p, q in monos:
        cols.append(cyb(g, wedges[p]) if p == q else schouten_bilinear(g, wedges[p], wedges[q]))
    dcols = [[x for row in delta_r(g, w).matrix for x in row] for w in wedges]
    scale = 1
    for col in cols + dcols:
        for x in col:
            scale = scale * x.denominator // math.gcd(scale, x.denominator)
    cyb_m = np.array([[int(x * scale) for x in col] for col in cols], dtype=object).T
    del_m = np.array([[int(x * scale) for x in col] for col in dcols], dtype=object).T
    limit = max((abs(int(x)) for x in cyb_m.flat), default=0) * len(monos) * max(abs(v) for v in values) ** 2
    dtype = np.int64 if limit < 2**62 else object
    cyb_m, del_m = cyb_m.astype(dtype), del_m.astype(dtype)
    grid = np.array(list(itertools.product(values, repeat=m)), dtype=dtype)
    mono_vals = np.stack([grid[:, p] * grid[:, q] for p, q in monos], axis=1)
    cyb_vals = mono_vals @ cyb_m.T
    del_vals = grid @ del_m.T
    mask = ~np.any(cyb_vals != 0, axis=1) & np.any(del_vals != 0, axis=1)
    hits = []
    for row in grid[mask]:
        r = [Fraction(0)] * (n * n)
        for (i, j), x in zip(pairs, row):
            r[i * n + j] += int(x)
            r[j * n + i] -= int(x)
        hits.append(r)
    return hits


def _stage_exhaustive(g: LieAlgebra):
    if g.dim <= 4:
        yield from exhaustive_skew_search(g)


def witness_triangular(g: LieAlgebra, height_bound: Optional[int] = None) -> WitnessResult:
    """Staged search for skew r with CYB(r) = 0 and delta_r != 0; first verified hit wins."""
    if is_abelian(g):
        return WitnessResult(False)
    bound = default_height_bound() if height_bound is None else height_bound
    stages = (
        ("S1-central", lambda: _stage_central(g)),
        ("S2-eigen", lambda: _stage_eigen(g)),
        ("S3-dim3", lambda: _stage_dim3(g, bound)),
        ("S4-pairs", lambda: _stage_pairs(g)),
        ("S5-exhaustive", lambda: _stage_exhaustive(g)),
    )
    for name, gen in stages:
        for r in gen():
            if is_triangular_witness(g, r):
                return WitnessResult(True, r, name)
    return WitnessResult(False)


# --- coboundary witnesses -----------------------------------------------------


EXCEPTIONAL_KINDS = ("non_split_simple", "heisenberg", "s_lambda_nonsquare")


def witness_coboundary_exceptional(g: LieAlgebra, kind: str, classification: Optional[Classification3] = None):
    """The explicit coboundary witness for the three algebras without triangular structures."""
    if kind not in EXCEPTIONAL_KINDS:
        raise ValueError(f"kind must be one of {EXCEPTIONAL_KINDS}")
    c = classification or classify3(g)
    basis = [list(row) for row in c.basis_change]
    expected = {"non_split_simple": "simple", "heisenberg": "heisenberg", "s_lambda_nonsquare": "s_lambda"}[kind]
    if c.kind != expected:
        raise InternalError(f"algebra classified as {c.kind}, not {expected}")
    if kind in ("non_split_simple", "heisenberg"):
        # e1 ^ e2, resp. p ^ q
        r = transport2(basis_wedge(3, 0, 1), basis)
    else:
        r = transport2(basis_wedge(3, 0, 1), basis)
        if delta_is_zero(g, r):
            r = transport2(basis_wedge(3, 0, 2), basis)
    if not is_coboundary_witness(g, r):
        raise InternalError(f"exceptional coboundary witness failed verification for {kind}")
    return r


def _coboundary_fallback(g: LieAlgebra) -> Optional[List[Fraction]]:
    n = g.dim
    for i in range(n):
        for j in range(i + 1, n):
            r = basis_wedge(n, i, j)
            if is_coboundary_witness(g, r):
                return r
    for r in _stage_pairs(g):
        if is_coboundary_witness(g, r):
            return r
    return None


# --- decision -------------------------------------------------------------------


@dataclass
class Verdict:
    status: str  # "yes" | "yes_no_witness_found" | "no"
    witness: Optional[List[Fraction]] = None
    reason: Optional[str] = None
    stage: Optional[str] = None
    verification: Optional[Dict[str, object]] = None

    @property
    def exists(self) -> bool:
        return self.status != "no"

    def to_json(self) -> dict:
        out = {"status": self.status}
        out["witness"] = tensor_to_json(self.witness, 2) if self.witness is not None else None
        out["verification"] = self.verification
        if self.reason is not None:
            out["reason"] = self.reason
        if self.stage is not None:
            out["stage"] = self.stage
        return out


@dataclass
class DecisionReport:
    algebra: LieAlgebra
    triangular: Verdict
    quasi_triangular: Verdict
    coboundary: Verdict
    classification: Optional[Classification3] = None
    checks: Dict[str, object] = field(default_factory=dict)

    def __post_init__(self):
        if self.triangular.exists and not self.quasi_triangular.exists:
            raise InternalError("triangular without quasi-triangular")
        if self.quasi_triangular.exists and not self.coboundary.exists:
            raise InternalError("quasi-triangular without coboundary")
        g = self.algebra
        for label, v in (("triangular", self.triangular), ("quasi_triangular", self.quasi_triangular)):
            if v.witness is not None and not is_triangular_witness(g, v.witness):
                raise InternalError(f"{label} witness failed verification")
        if self.coboundary.witness is not None and not is_coboundary_witness(g, self.coboundary.witness):
            raise InternalError("coboundary witness failed verification")

    def to_json(self) -> dict:
        return {
            "algebra": self.algebra.name,
            "dim": self.algebra.dim,
            "triangular": self.triangular.to_json(),
            "quasi_triangular": self.quasi_triangular.to_json(),
            "coboundary": self.coboundary.to_json(),
            "classification": self.classification.to_json() if self.classification else None,
            "checks": self.checks,
        }


def triangular_obstruction(g: LieAlgebra, c: Optional[Classification3]) -> Optional[Tuple[str, str]]:
    """(exceptional kind, reason) if the criterion rules out triangular structures on a
    non-abelian algebra, else None."""
    if c is None:
        return None
    if c.kind == "heisenberg":
        return "heisenberg", "isomorphic to the Heisenberg algebra h1"
    if c.kind == "simple":
        if quaternion_is_split(c.alpha, c.beta):
            return None
        res = isotropic_vector(DiagQuadForm((1, c.alpha, c.beta, c.alpha * c.beta)), 1)
        return "non_split_simple", (
            f"non-split simple [{format_rational(c.alpha)},{format_rational(c.beta)}]: "
            f"norm form anisotropic at {res.obstruction}"
        )
    if c.kind == "s_lambda" and c.det != 0 and c.trace == 0 and rat_is_square(-c.det) is None:
        return "s_lambda_nonsquare", f"s_Lambda with tr = 0 and -det = {format_rational(-c.det)} not a square"
    return None


def decide(g: LieAlgebra, height_bound: Optional[int] = None) -> DecisionReport:
    rep = validate(g)
    if not rep.ok:
        raise LieAlgebraError("invalid Lie algebra: " + "; ".join(rep.violations))
    if is_abelian(g):
        no = Verdict("no", reason="abelian")
        return DecisionReport(g, no, Verdict("no", reason="abelian"), Verdict("no", reason="abelian"),
                              classify3(g) if g.dim == 3 else None, {"rule": "abelian"})
    c = classify3(g) if g.dim == 3 else None
    obstruction = triangular_obstruction(g, c)
    checks: Dict[str, object] = {}
    if obstruction is not None:
        kind, reason = obstruction
        r = witness_coboundary_exceptional(g, kind, c)
        checks["rule"] = kind
        cob = Verdict("yes", r, stage="exceptional", verification=verify_witness(g, r))
        return DecisionReport(g, Verdict("no", reason=reason), Verdict("no", reason=reason), cob, c, checks)

    checks["rule"] = "dim != 3" if g.dim != 3 else f"dim 3 {c.kind}"
    w = witness_triangular(g, height_bound)
    if w.found:
        ver = verify_witness(g, w.r)
        tri = Verdict("yes", w.r, stage=w.stage, verification=ver)
        qt = Verdict("yes", w.r, stage=w.stage, verification=ver)
        cob = Verdict("yes", w.r, stage=w.stage, verification=ver)
    else:
        tri = Verdict("yes_no_witness_found")
        qt = Verdict("yes_no_witness_found")
        r = _coboundary_fallback(g)
        cob = (Verdict("yes", r, stage="fallback", verification=verify_witness(g, r))
               if r is not None else Verdict("yes_no_witness_found"))
    return DecisionReport(g, tri, qt, cob, c, checks)


# --- two-dimensional representation of a quaternionic Lie algebra ---------------


@dataclass(frozen=True)
class Rep2x2:
    alpha: Fraction
    beta: Fraction
    images: tuple  # three 2x2 matrices of TowerElement, for e1, e2, e3

    def __call__(self, v: Sequence[Fraction]):
        zero = TowerElement.scalar(self.alpha, self.beta)
        out = [[zero, zero], [zero, zero]]
        for c, m in zip(v, self.images):
            if c:
                out = [[out[i][j] + m[i][j] * c for j in range(2)] for i in range(2)]
        return out


def mat2_mul(a, b):
    return [[a[i][0] * b[0][j] + a[i][1] * b[1][j] for j in range(2)] for i in range(2)]


def mat2_commutator(a, b):
    ab, ba = mat2_mul(a, b), mat2_mul(b, a)
    return [[ab[i][j] - ba[i][j] for j in range(2)] for i in range(2)]


def mat2_det(a) -> TowerElement:
    return a[0][0] * a[1][1] - a[0][1] * a[1][0]


def build_rep2x2(alpha, beta) -> Rep2x2:
    alpha, beta = Q(alpha), Q(beta)

    def t(label, coeff=Fraction(1, 2)):
        return TowerElement.from_terms(alpha, beta, {label: coeff})

    zero = TowerElement.scalar(alpha, beta)
    half = Fraction(1, 2)
    e1 = [[t("xz"), zero], [zero, t("xz", -half)]]
    e2 = [[zero, t("y")], [t("y", -half), zero]]
    e3 = [[zero, t("xyz")], [t("xyz"), zero]]
    rep = Rep2x2(alpha, beta, (e1, e2, e3))
    g = quaternionic(alpha, beta)
    basis = linalg.identity(3)
    for i, j in ((0, 1), (1, 2), (2, 0)):
        lhs = mat2_commutator(rep.images[i], rep.images[j])
        rhs = rep(bracket(g, basis[i], basis[j]))
        if any(lhs[a][b] != rhs[a][b] for a in range(2) for b in range(2)):
            raise InternalError(f"representation fails the bracket relation for (e{i + 1}, e{j + 1})")
    return rep


def gamma(g: LieAlgebra, w: Sequence[Fraction]) -> List[Fraction]:
    """Bracket-induced map on wedges: gamma(e_i ^ e_j) = [e_i, e_j]."""
    n = g.dim
    out = linalg.zeros(n)
    for i in range(n):
        for j in range(n):
            c = w[i * n + j]
            if c:
                for k, s in g.sparse.get((i, j), ()):
                    out[k] += c * s / 2
    return out


@dataclass
class Prop2Report:
    alpha: Fraction
    beta: Fraction
    samples: List[Dict[str, object]]

    @property
    def passes(self) -> bool:
        return all(s["equal"] for s in self.samples)

    def to_json(self) -> dict:
        return {
            "alpha": format_rational(self.alpha),
            "beta": format_rational(self.beta),
            "passes": self.passes,
            "samples": self.samples,
        }


def prop2_verify(alpha, beta, samples: Sequence[Sequence[Fraction]]) -> Prop2Report:
    """Check (4/(alpha beta)) det(rho(gamma(w))) == iota(CYB(w)) for skew w."""
    alpha, beta = Q(alpha), Q(beta)
    g = quaternionic(alpha, beta)
    rho = build_rep2x2(alpha, beta)
    out = []
    for w in samples:
        if not is_skew(w):
            raise ValueError("prop2 samples must be skew-symmetric")
        det = mat2_det(rho(gamma(g, w)))
        rational = det.is_rational()
        lhs = 4 / (alpha * beta) * det.coeffs[0] if rational else None
        rhs = wedge3_coefficient(cyb(g, w))
        out.append({
            "w": tensor_to_json(w, 2),
            "det": det.to_json(),
            "rational": rational,
            "lhs": format_rational(lhs) if lhs is not None else None,
            "rhs": format_rational(rhs) if rhs is not None else None,
            "equal": rational and rhs is not None and lhs == rhs,
        })
    return Prop2Report(alpha, beta, out)
