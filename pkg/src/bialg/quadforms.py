"""Diagonal rational quadratic forms: square classes, Hilbert symbols,
local isotropy and a bounded search for isotropic vectors.

Splitness of a quaternion algebra is decided with Hilbert symbols.
Anisotropy certificates in ``isotropic_vector`` come from an independent
route (signature at infinity, Springer's unit/p-part split at odd p and a
Hensel-lifted search modulo 32 at p = 2), so the two can be cross-checked.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .scalars import Q, RationalLike, lcm_of_denominators

INFINITY = "inf"
Place = Union[int, str]

# trial division is only attempted below this size
FACTOR_LIMIT = 2**64
DEFAULT_HEIGHT_BOUND = 10**4


class FactorizationError(ValueError):
    pass


def factorize(n: int) -> Dict[int, int]:
    n = abs(int(n))
    if n == 0:
        raise FactorizationError("cannot factor 0")
    if n >= FACTOR_LIMIT:
        raise FactorizationError(f"{n} exceeds the 64-bit trial-division guard")
    out: Dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    p = 5
    while p * p <= n:
        for q in (p, p + 2):
            while n % q == 0:
                out[q] = out.get(q, 0) + 1
                n //= q
        p += 6
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == {n: 1}


def squarefree_part(a: RationalLike) -> Tuple[int, Fraction]:
    """Write a = s * c**2 with s a squarefree integer; return (s, c), c > 0."""
    a = Q(a)
    if a == 0:
        raise ValueError("zero has no square class")
    n = a.numerator * a.denominator  # same square class as a
    sign = -1 if n < 0 else 1
    s, m = 1, 1
    for p, e in factorize(n).items():
        if e % 2:
            s *= p
        m *= p ** (e // 2)
    # a = n / den^2 = s m^2 / den^2
    return sign * s, Fraction(m, a.denominator)


@dataclass(frozen=True)
class DiagQuadForm:
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(Q(c) for c in self.coeffs))
        if any(c == 0 for c in self.coeffs):
            raise ValueError("diagonal form coefficients must be nonzero")

    @property
    def rank(self) -> int:
        return len(self.coeffs)

    def evaluate(self, v: Sequence[RationalLike]) -> Fraction:
        return sum((d * Q(x) ** 2 for d, x in zip(self.coeffs, v)), Fraction(0))


@dataclass(frozen=True)
class ReducedForm:
    """Squarefree integer form with the substitution back to the original.

    original coefficient d_i = reduced.coeffs[i] * scale[i]**2, so a zero y of
    the reduced form pulls back to x_i = y_i / scale[i].
    """

    form: DiagQuadForm
    scale: tuple

    def pullback(self, y: Sequence[int]) -> Tuple[int, ...]:
        x = [Fraction(yi) / c for yi, c in zip(y, self.scale)]
        d = lcm_of_denominators(x)
        ints = [int(xi * d) for xi in x]
        g = 0
        for v in ints:
            g = math.gcd(g, v)
        return tuple(v // g for v in ints) if g else tuple(ints)


def squarefree_reduce(q: DiagQuadForm) -> ReducedForm:
    parts = [squarefree_part(c) for c in q.coeffs]
    return ReducedForm(DiagQuadForm(tuple(s for s, _ in parts)), tuple(c for _, c in parts))


# --- Hilbert symbol -----------------------------------------------------------


def legendre(a: int, p: int) -> int:
    t = pow(a % p, (p - 1) // 2, p)
    return -1 if t == p - 1 else t


def _split_valuation(a: int, p: int) -> Tuple[int, int]:
    v = 0
    while a % p == 0:
        a //= p
        v += 1
    return v, a


def hilbert_symbol(a: RationalLike, b: RationalLike, place: Place) -> int:
    """(a, b)_v: +1 iff z^2 = a x^2 + b y^2 has a nonzero solution over Q_v."""
    a, b = Q(a), Q(b)
    if a == 0 or b == 0:
        raise ValueError("Hilbert symbol needs nonzero arguments")
    a, _ = squarefree_part(a)
    b, _ = squarefree_part(b)
    if place == INFINITY:
        return -1 if a < 0 and b < 0 else 1
    if not isinstance(place, int) or isinstance(place, bool) or not is_prime(place):
        raise ValueError(f"place must be a prime or {INFINITY!r}, got {place!r}")
    p = place
    alpha, u = _split_valuation(a, p)
    beta, v = _split_valuation(b, p)
    if p != 2:
        eps = ((p - 1) // 2) % 2
        s = (-1) ** (alpha * beta * eps)
        if beta % 2:
            s *= legendre(u, p)
        if alpha % 2:
            s *= legendre(v, p)
        return s

    def e(x):
        return ((x - 1) // 2) % 2

    def w(x):
        return ((x * x - 1) // 8) % 2

    return (-1) ** ((e(u) * e(v) + alpha * w(v) + beta * w(u)) % 2)


def relevant_places(*values: RationalLike) -> List[Place]:
    primes = {2}
    for x in values:
        s, _ = squarefree_part(x)
        primes.update(factorize(s))
    return [INFINITY] + sorted(primes)


def quaternion_is_split(alpha: RationalLike, beta: RationalLike) -> bool:
    """Whether the algebra with i^2 = -alpha, j^2 = -beta is split, i.e. whether
    the norm form <1, alpha, beta, alpha*beta> is isotropic over Q."""
    alpha, beta = Q(alpha), Q(beta)
    a, b = -alpha, -beta
    return all(hilbert_symbol(a, b, v) == 1 for v in relevant_places(a, b))


# --- local isotropy (independent of the symbol formulas) ----------------------


def _locally_isotropic_odd(coeffs: Sequence[int], p: int) -> bool:
    # Springer: q = q0 + p*q1 with unit forms q0, q1; q isotropic iff q0 or q1 is.
    q0 = [c for c in coeffs if c % p]
    q1 = [c // p for c in coeffs if c % p == 0]

    def unit_form_isotropic(units):
        if len(units) >= 3:
            return True
        if len(units) == 2:
            return legendre(-units[0] * units[1], p) == 1
        return False

    return unit_form_isotropic(q0) or unit_form_isotropic(q1)


def _locally_isotropic_2(coeffs: Sequence[int]) -> bool:
    # Squarefree coefficients have 2-valuation <= 1, so a primitive solution mod 32
    # with an odd coordinate x_i and f = 0 mod 2^(2*v(2 d_i)+1) lifts by Hensel.
    k = len(coeffs)
    if k >= 5:
        return True
    mod = 32

    def states(cs):
        # (value mod 32, has odd x_i with odd d_i, has odd x_i with even d_i);
        # x^2 mod 32 only depends on x mod 16
        out = set()
        for x in itertools.product(range(16), repeat=len(cs)):
            val = sum(c * xi * xi for c, xi in zip(cs, x)) % mod
            odd_unit = any(xi % 2 and c % 2 for c, xi in zip(cs, x))
            odd_even = any(xi % 2 and c % 2 == 0 for c, xi in zip(cs, x))
            out.add((val, odd_unit, odd_even))
        return out

    half = (k + 1) // 2
    left = states(coeffs[:half])
    right = states(coeffs[half:])
    for v1, a1, b1 in left:
        for v2, a2, b2 in right:
            val = (v1 + v2) % mod
            if (a1 or a2) and val % 8 == 0:
                return True
            if (b1 or b2) and val == 0:
                return True
    return False


def _first_nonresidue_prime(n: int, exclude: int) -> int:
    p = 3
    while True:
        if is_prime(p) and exclude % p and legendre(n, p) == -1:
            return p
        p += 2


def local_obstruction(q: DiagQuadForm) -> Optional[Place]:
    """A place where q is anisotropic, or None when q is isotropic everywhere locally."""
    coeffs = squarefree_reduce(q).form.coeffs
    ints = [int(c) for c in coeffs]
    if all(c > 0 for c in ints) or all(c < 0 for c in ints):
        return INFINITY
    if len(ints) == 2:
        # binary forms: isotropic over Q iff -d1 d2 is a square
        n = -ints[0] * ints[1]
        if math.isqrt(n) ** 2 == n:
            return None
    if not _locally_isotropic_2(ints):
        return 2
    primes = set()
    for c in ints:
        primes.update(p for p in factorize(c) if p != 2)
    for p in sorted(primes):
        if not _locally_isotropic_odd(ints, p):
            return p
    if len(ints) == 2:
        return _first_nonresidue_prime(-ints[0] * ints[1], 2 * ints[0] * ints[1])
    return None


# --- bounded witness search ---------------------------------------------------


@dataclass(frozen=True)
class IsotropyResult:
    status: str  # "isotropic" | "anisotropic" | "bound_exhausted"
    witness: Optional[tuple] = None
    obstruction: Optional[Place] = None
    height_bound: Optional[int] = None
    reduced_witness: Optional[tuple] = field(default=None, compare=False)

    @property
    def isotropic(self) -> bool:
        return self.status == "isotropic"


def _shell(m: int, h: int):
    """Nonnegative m-tuples with max entry exactly h."""
    if h == 0:
        yield (0,) * m
        return
    for i in range(m):
        for pre in itertools.product(range(h), repeat=i):
            for post in itertools.product(range(h + 1), repeat=m - i - 1):
                yield pre + (h,) + post


def witness_order_key(v: Sequence[int]):
    """Canonical order among witnesses: smallest max-norm, then fewest nonzero
    entries, then earliest support, then smallest magnitudes, then positive
    before negative entries."""
    support = tuple(i for i, x in enumerate(v) if x)
    return (
        max(abs(x) for x in v),
        len(support),
        support,
        tuple(abs(v[i]) for i in support),
        tuple(0 if v[i] > 0 else 1 for i in support),
    )


def _normalize_sign(v):
    first = next(x for x in v if x)
    return tuple(-x for x in v) if first < 0 else tuple(v)


def _signed_variants(absvec):
    nz = [i for i, x in enumerate(absvec) if x]
    for signs in itertools.product((1, -1), repeat=len(nz)):
        v = list(absvec)
        for i, s in zip(nz, signs):
            v[i] *= s
        yield _normalize_sign(v)


def search_isotropic(coeffs: Sequence[int], height_bound: int) -> Optional[tuple]:
    """Least nonzero integer zero of sum c_i x_i^2 with entries bounded by
    ``height_bound`` (in ``witness_order_key`` order), or None.

    Meet in the middle on sign-free halves, one max-norm shell at a time.
    """
    k = len(coeffs)
    left_n = (k + 1) // 2
    lc, rc = coeffs[:left_n], coeffs[left_n:]
    left: Dict[int, List[tuple]] = {}
    right: Dict[int, List[tuple]] = {}

    def value(cs, t):
        return sum(c * x * x for c, x in zip(cs, t))

    for h in range(0, height_bound + 1):
        new_left = [(value(lc, t), t) for t in _shell(len(lc), h)]
        new_right = [(value(rc, t), t) for t in _shell(len(rc), h)] if rc else []
        for val, t in new_left:
            left.setdefault(val, []).append(t)
        for val, t in new_right:
            right.setdefault(val, []).append(t)
        hits = []
        if rc:
            for val, t in new_left:
                for u in right.get(-val, ()):
                    hits.append(t + u)
            for val, u in new_right:
                for t in left.get(-val, ()):
                    if max(t, default=0) < h:
                        hits.append(t + u)
        else:
            hits = [t for val, t in new_left if val == 0]
        hits = [v for v in hits if any(v)]
        if hits:
            cands = {s for v in hits for s in _signed_variants(v)}
            return min(cands, key=witness_order_key)
    return None


def isotropic_vector(q: DiagQuadForm, height_bound: int = DEFAULT_HEIGHT_BOUND) -> IsotropyResult:
    """Find an isotropic vector of q, certify anisotropy, or report the bound as exhausted.

    A local obstruction proves that no witness exists at any height, so it is
    checked before the (potentially long) search.
    """
    if height_bound < 1:
        raise ValueError("height_bound must be positive")
    red = squarefree_reduce(q)
    obstruction = local_obstruction(q)
    if obstruction is not None:
        return IsotropyResult("anisotropic", obstruction=obstruction, height_bound=height_bound)
    y = search_isotropic([int(c) for c in red.form.coeffs], height_bound)
    if y is None:
        return IsotropyResult("bound_exhausted", height_bound=height_bound)
    x = red.pullback(y)
    if q.evaluate(x) != 0 or not any(x):
        raise AssertionError(f"pulled-back witness {x} does not vanish on {q.coeffs}")
    return IsotropyResult("isotropic", witness=x, height_bound=height_bound, reduced_witness=y)


def norm_form(alpha: RationalLike, beta: RationalLike) -> DiagQuadForm:
    alpha, beta = Q(alpha), Q(beta)
    return DiagQuadForm((Fraction(1), alpha, beta, alpha * beta))
