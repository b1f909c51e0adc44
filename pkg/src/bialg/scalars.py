"""Exact scalars: rationals (``fractions.Fraction``) and the tower ring

    Q[x, y, z] / (x^2 - alpha, y^2 - beta, z^2 + 1)

in which the two-dimensional representation of a quaternionic Lie algebra
is written down (x plays sqrt(alpha), y sqrt(beta), z a square root of -1).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Union

Rational = Fraction
RationalLike = Union[Fraction, int, str]

_RAT_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


class ScalarError(ValueError):
    pass


def Q(value: RationalLike) -> Fraction:
    """Coerce ``value`` to a Fraction. Strings must look like ``p`` or ``p/q``."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ScalarError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise ScalarError(f"not a rational: {value!r}")


def parse_rational(text: str) -> Fraction:
    m = _RAT_RE.match(text)
    if m is None:
        raise ScalarError(f"malformed rational {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ScalarError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(a: Fraction) -> str:
    if a.denominator == 1:
        return str(a.numerator)
    return f"{a.numerator}/{a.denominator}"


def rat_arith(a: RationalLike, b: RationalLike, op: str) -> Fraction:
    a, b = Q(a), Q(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b == 0:
            raise ZeroDivisionError("division of a rational by zero")
        return a / b
    raise ScalarError(f"unknown operation {op!r}")


def int_sqrt_exact(n: int) -> Optional[int]:
    if n < 0:
        return None
    s = math.isqrt(n)
    return s if s * s == n else None


def rat_is_square(a: RationalLike) -> Optional[Fraction]:
    """Return ``w >= 0`` with ``w*w == a``, or None if ``a`` is not a rational square."""
    a = Q(a)
    if a < 0:
        return None
    p = int_sqrt_exact(a.numerator)
    q = int_sqrt_exact(a.denominator)
    if p is None or q is None:
        return None
    return Fraction(p, q)


def lcm_of_denominators(values: Iterable[Fraction]) -> int:
    m = 1
    for v in values:
        m = m * v.denominator // math.gcd(m, v.denominator)
    return m


# --- tower ring -------------------------------------------------------------

# Basis monomials are stored by bitmask: bit 0 = x, bit 1 = y, bit 2 = z.
# External (serialized) order is 1, x, y, z, xy, xz, yz, xyz.
TOWER_LABELS = ("1", "x", "y", "z", "xy", "xz", "yz", "xyz")
_LABEL_MASK = (0b000, 0b001, 0b010, 0b100, 0b011, 0b101, 0b110, 0b111)


@dataclass(frozen=True)
class TowerElement:
    coeffs: tuple  # 8 Fractions indexed by bitmask
    alpha: Fraction
    beta: Fraction

    def __post_init__(self):
        if len(self.coeffs) != 8:
            raise ScalarError("tower element needs 8 coefficients")
        if self.alpha == 0 or self.beta == 0:
            raise ScalarError("tower parameters must be nonzero")

    @classmethod
    def from_terms(cls, alpha, beta, terms: dict) -> "TowerElement":
        """``terms`` maps monomial labels ("1", "x", "yz", ...) to coefficients."""
        c = [Fraction(0)] * 8
        for label, val in terms.items():
            c[_LABEL_MASK[TOWER_LABELS.index(label)]] += Q(val)
        return cls(tuple(c), Q(alpha), Q(beta))

    @classmethod
    def scalar(cls, alpha, beta, value=0) -> "TowerElement":
        return cls.from_terms(alpha, beta, {"1": value})

    def _check(self, other: "TowerElement"):
        if (self.alpha, self.beta) != (other.alpha, other.beta):
            raise ScalarError(
                f"tower parameters differ: {(self.alpha, self.beta)} vs {(other.alpha, other.beta)}"
            )

    def __add__(self, other):
        if not isinstance(other, TowerElement):
            other = TowerElement.scalar(self.alpha, self.beta, Q(other))
        self._check(other)
        return TowerElement(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.alpha, self.beta)

    __radd__ = __add__

    def __neg__(self):
        return TowerElement(tuple(-a for a in self.coeffs), self.alpha, self.beta)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, TowerElement):
            s = Q(other)
            return TowerElement(tuple(a * s for a in self.coeffs), self.alpha, self.beta)
        return tower_mul(self, other)

    __rmul__ = __mul__

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ScalarError(f"tower element {self} is not rational")
        return self.coeffs[0]

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def to_json(self) -> dict:
        return {
            label: format_rational(self.coeffs[mask])
            for label, mask in zip(TOWER_LABELS, _LABEL_MASK)
            if self.coeffs[mask] != 0
        }

    def __str__(self):
        parts = [f"{format_rational(self.coeffs[m])}*{lab}" for lab, m in zip(TOWER_LABELS, _LABEL_MASK) if self.coeffs[m]]
        return " + ".join(parts) or "0"


def tower_mul(u: TowerElement, v: TowerElement) -> TowerElement:
    u._check(v)
    # squaring factor for each generator: x^2 = alpha, y^2 = beta, z^2 = -1
    squares = (u.alpha, u.beta, Fraction(-1))
    out = [Fraction(0)] * 8
    for m1, a in enumerate(u.coeffs):
        if a == 0:
            continue
        for m2, b in enumerate(v.coeffs):
            if b == 0:
                continue
            c = a * b
            common = m1 & m2
            for bit in range(3):
                if common >> bit & 1:
                    c *= squares[bit]
            out[m1 ^ m2] += c
    return TowerElement(tuple(out), u.alpha, u.beta)
