import random
from fractions import Fraction

import pytest
import sympy

from bialg import linalg
from bialg.invariants import nullspace
from bialg.linalg import Subspace


def random_matrix(rng, rows, cols, height=3, density=0.6):
    return [
        [Fraction(rng.randint(-height, height), rng.randint(1, 3)) if rng.random() < density else Fraction(0)
         for _ in range(cols)]
        for _ in range(rows)
    ]


def test_nullspace_examples():
    assert nullspace(linalg.identity(3)).dim == 0
    assert nullspace([[Fraction(0)] * 2] * 2).dim == 2
    k = nullspace([[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]])
    assert k == Subspace.span(2, [[Fraction(-2), Fraction(1)]])


@pytest.mark.parametrize("seed", range(40))
def test_nullspace_matches_sympy(seed):
    rng = random.Random(seed)
    rows, cols = rng.randint(1, 7), rng.randint(1, 7)
    m = random_matrix(rng, rows, cols)
    ours = nullspace(m, cols)
    theirs = sympy.Matrix(m).nullspace()
    expected = Subspace.span(cols, [[Fraction(int(x.p), int(x.q)) for x in v] for v in theirs])
    assert ours == expected
    for v in ours.basis:
        assert linalg.is_zero_vector(linalg.mat_vec(m, v))


@pytest.mark.parametrize("seed", range(20))
def test_rref_matches_sympy(seed):
    rng = random.Random(100 + seed)
    m = random_matrix(rng, rng.randint(1, 6), rng.randint(1, 6))
    ech, pivots = linalg.rref(m)
    ref, piv = sympy.Matrix(m).rref()
    assert tuple(pivots) == piv
    assert [[Fraction(int(x.p), int(x.q)) for x in ref.row(i)] for i in range(len(piv))] == ech


@pytest.mark.parametrize("seed", range(20))
def test_charpoly_and_determinant_match_sympy(seed):
    rng = random.Random(200 + seed)
    n = rng.randint(1, 5)
    m = random_matrix(rng, n, n)
    t = sympy.Symbol("t")
    coeffs = sympy.Poly(sympy.Matrix(m).charpoly(t).as_expr(), t).all_coeffs()[::-1]
    assert linalg.charpoly(m) == [Fraction(int(c.p), int(c.q)) for c in coeffs]
    d = sympy.Matrix(m).det()
    assert linalg.determinant(m) == Fraction(int(d.p), int(d.q))


def test_rational_roots():
    # (t - 2)(t + 1/3) t = t^3 - 5/3 t^2 - 2/3 t
    assert sorted(linalg.rational_roots([0, Fraction(-2, 3), Fraction(-5, 3), 1])) == [Fraction(-1, 3), 0, 2]
    assert linalg.rational_roots([-2, 0, 1]) == []  # t^2 - 2


def test_subspace_coordinates_and_membership():
    s = Subspace.span(3, [[1, 1, 0], [0, 1, 1]])
    assert s.contains([1, 2, 1])
    assert not s.contains([1, 0, 0])
    assert s == Subspace.span(3, [[1, 2, 1], [1, 0, -1]])


def test_inverse_roundtrip():
    rng = random.Random(5)
    m = [[Fraction(rng.randint(-3, 3)) for _ in range(4)] for _ in range(4)]
    while linalg.determinant(m) == 0:
        m = [[Fraction(rng.randint(-3, 3)) for _ in range(4)] for _ in range(4)]
    assert linalg.mat_mul(m, linalg.inverse(m)) == linalg.identity(4)
