import itertools
import random
from fractions import Fraction

import numpy as np
import pytest

from algebras import PRESETS, random_algebra
from bialg import lie, linalg
from bialg.lie import bracket, change_basis
from bialg.tensors import (
    Cobracket,
    TensorError,
    basis_wedge,
    basis_wedge3,
    check_bialgebra,
    check_coalgebra,
    cyb,
    cycle,
    delta_r,
    delta_r_via_action_matrix,
    drinfeld_criterion,
    outer,
    schouten_bilinear,
    skew,
    switch,
    sym,
    tensor_from_json,
    tensor_to_json,
    wedge,
    wedge3,
    wedge3_coefficient,
)


def rand_q(rng, height=3):
    return Fraction(rng.randint(-height, height), rng.randint(1, height))


def rand_tensor(rng, n, power=2, height=3, density=0.5):
    return [rand_q(rng, height) if rng.random() < density else Fraction(0) for _ in range(n**power)]


def rand_skew(rng, n, height=3):
    return skew(rand_tensor(rng, n, height=height))


def unit(n, i):
    return linalg.unit(n, i)


# --- an independent Yang-Baxter oracle through a faithful matrix representation ---

def ad_rep(g):
    return [np.array(lie.ad_matrix(g, unit(g.dim, i)), dtype=object) for i in range(g.dim)]


def cyb_in_rep(g, r):
    """[R12,R13] + [R12,R23] + [R13,R23] as honest matrices, R12 = sum r_ab rho(a) x rho(b) x 1."""
    n = g.dim
    rho = ad_rep(g)
    one = np.array(linalg.identity(n), dtype=object)
    zero = np.zeros((n**3, n**3), dtype=object)
    r12, r13, r23 = zero.copy(), zero.copy(), zero.copy()
    for a, b in itertools.product(range(n), repeat=2):
        c = r[a * n + b]
        if c:
            r12 = r12 + c * np.kron(np.kron(rho[a], rho[b]), one)
            r13 = r13 + c * np.kron(np.kron(rho[a], one), rho[b])
            r23 = r23 + c * np.kron(np.kron(one, rho[a]), rho[b])

    def comm(x, y):
        return x.dot(y) - y.dot(x)

    return comm(r12, r13) + comm(r12, r23) + comm(r13, r23)


def rep_of_3tensor(g, t):
    n = g.dim
    rho = ad_rep(g)
    out = np.zeros((n**3, n**3), dtype=object)
    for idx, c in enumerate(t):
        if c:
            a, b, d = idx // (n * n), (idx // n) % n, idx % n
            out = out + c * np.kron(np.kron(rho[a], rho[b]), rho[d])
    return out


@pytest.mark.parametrize("name", ["sl2", "quat:2,3", "quat:-2,5", "slam:1,2,3,1", "slam:0,1,2,0"])
def test_cyb_matches_matrix_representation(name):
    # these algebras are centerless, so ad is faithful and so is ad x ad x ad
    g = lie.preset(name)
    rng = random.Random(name)
    for _ in range(4):
        r = rand_tensor(rng, 3)
        assert (rep_of_3tensor(g, cyb(g, r)) == cyb_in_rep(g, r)).all()


def test_switch_cycle_examples():
    n = 3
    for i, j in itertools.product(range(n), repeat=2):
        assert switch(outer(unit(n, i), unit(n, j))) == outer(unit(n, j), unit(n, i))
    rng = random.Random(0)
    t = rand_tensor(rng, n, 3)
    assert cycle(cycle(cycle(t))) == t and cycle(t) != t
    u, v = rand_tensor(rng, n, 1), rand_tensor(rng, n, 1)
    assert switch(wedge(u, v)) == [-x for x in wedge(u, v)]


def test_wedge3_alternating():
    rng = random.Random(1)
    u, v = rand_tensor(rng, 4, 1, density=1), rand_tensor(rng, 4, 1, density=1)
    assert not any(wedge3(u, v, u))
    assert wedge3(unit(3, 0), unit(3, 1), unit(3, 2)) == basis_wedge3(3, 0, 1, 2)


@pytest.mark.parametrize("seed", range(20))
def test_sym_skew_split(seed):
    rng = random.Random(seed)
    r = rand_tensor(rng, 4)
    s, k = sym(r), skew(r)
    assert [a + b for a, b in zip(s, k)] == r
    assert switch(s) == s and switch(k) == [-x for x in k]
    assert sym(s) == s and skew(k) == k and not any(sym(k)) and not any(skew(s))


def test_cyb_examples():
    a, b = Fraction(2, 3), Fraction(-7, 2)
    g = lie.quaternionic(a, b)
    inv = [Fraction(0)] * 9
    inv[0], inv[4], inv[8] = b, a, Fraction(1)
    assert wedge3_coefficient(cyb(g, inv)) == a * b
    assert not any(cyb(g, [0] * 9))
    e12, e23, e31 = basis_wedge(3, 0, 1), basis_wedge(3, 1, 2), basis_wedge(3, 2, 0)
    rng = random.Random(4)
    for _ in range(10):
        h12, h23, h31 = (rand_q(rng, 10) for _ in range(3))
        r = [h12 * x + h23 * y + h31 * z for x, y, z in zip(e12, e23, e31)]
        assert wedge3_coefficient(cyb(g, r)) == h12**2 + b * h23**2 + a * h31**2


def test_cyb_s_lambda_display():
    rng = random.Random(5)
    for _ in range(10):
        lam = [rng.randint(-4, 4) for _ in range(4)]
        g = lie.s_lambda(*lam)
        l11, l12, l21, l22 = lam
        w, x1, x2 = (rand_q(rng) for _ in range(3))
        r = [w * p + x1 * q + x2 * s for p, q, s in zip(basis_wedge(3, 1, 2), basis_wedge(3, 0, 1), basis_wedge(3, 0, 2))]
        expected = l12 * x1**2 - (l11 - l22) * x1 * x2 - l21 * x2**2
        assert wedge3_coefficient(cyb(g, r)) == expected


def test_schouten_examples():
    g = lie.quaternionic(3, -2)
    e12, e23 = basis_wedge(3, 0, 1), basis_wedge(3, 1, 2)
    assert not any(schouten_bilinear(g, e12, e23))
    assert wedge3_coefficient(schouten_bilinear(g, e12, e12)) == 2
    assert not any(schouten_bilinear(g, e12, [0] * 9))
    with pytest.raises(TensorError):
        schouten_bilinear(g, outer(unit(3, 0), unit(3, 1)), e12)


@pytest.mark.parametrize("name", PRESETS)
def test_polarization(name):
    g = lie.preset(name)
    rng = random.Random(name)
    for _ in range(5):
        s, t = rand_skew(rng, g.dim), rand_skew(rng, g.dim)
        assert schouten_bilinear(g, s, s) == [2 * x for x in cyb(g, s)]
        assert schouten_bilinear(g, s, t) == schouten_bilinear(g, t, s)


def test_delta_examples():
    h = lie.heisenberg(1)
    d = delta_r(h, basis_wedge(3, 0, 1))
    assert d(unit(3, 0)) == basis_wedge(3, 0, 2)
    g = lie.quaternionic(1, 1)
    # u^v = u(x)v - v(x)u, so e1 . (e1^e2) = e1^[e1,e2] = e1^e3
    assert delta_r(g, basis_wedge(3, 0, 1))(unit(3, 0)) == basis_wedge(3, 0, 2)
    inv = [Fraction(0)] * 9
    inv[0], inv[4], inv[8] = 1, 1, 1
    assert delta_r(g, inv).is_zero


@pytest.mark.parametrize("seed", range(15))
def test_cobracket_assembly_agrees(seed):
    rng = random.Random(seed)
    g = random_algebra(rng)
    r = rand_tensor(rng, g.dim)
    assert delta_r(g, r).matrix == delta_r_via_action_matrix(g, r).matrix


def test_check_coalgebra_examples():
    g = lie.abelian(1)
    bad = Cobracket(g, [[Fraction(1)]])
    report = check_coalgebra(g, bad)
    assert not report.passes and report.first_violation
    g = lie.sl2()
    zero = Cobracket(g, [[Fraction(0)] * 9 for _ in range(3)])
    assert check_coalgebra(g, zero).passes and check_bialgebra(g, zero).passes
    r = basis_wedge(3, 0, 1)  # H^E solves the CYBE on sl2
    assert not any(cyb(g, r))
    assert check_bialgebra(g, delta_r(g, r)).passes


def test_heisenberg_p_wedge_q_is_bialgebra():
    h = lie.heisenberg(1)
    r = basis_wedge(3, 0, 1)
    assert cyb(h, r) == basis_wedge3(3, 0, 1, 2)
    assert check_bialgebra(h, delta_r(h, r)).passes
    res = drinfeld_criterion(h, r)
    assert res.is_bialgebra and res.sym_invariant and res.cyb_invariant


def test_drinfeld_examples():
    g = lie.quaternionic(1, 1)
    r = basis_wedge(3, 0, 1)
    assert any(cyb(g, r)) and drinfeld_criterion(g, r).is_bialgebra
    g = lie.s_lambda(1, 1, 0, 1)
    r = basis_wedge(3, 1, 2)
    assert not any(cyb(g, r))
    assert drinfeld_criterion(g, r).is_bialgebra and not delta_r(g, r).is_zero


def structured_r(rng, g):
    n = g.dim
    choice = rng.randrange(4)
    if choice == 0:
        return rand_tensor(rng, n)
    if choice == 1:
        return rand_skew(rng, n)
    u, v = rand_tensor(rng, n, 1), rand_tensor(rng, n, 1)
    r = wedge(u, v)
    if choice == 3:
        from bialg.invariants import invariant_subspace

        inv = [v for v in invariant_subspace(g, 2).vectors if v == switch(v)]
        for t in inv:
            c = rand_q(rng)
            r = [a + c * b for a, b in zip(r, t)]
    return r


def test_drinfeld_agreement_randomized():
    rng = random.Random(99)
    algebras = [lie.preset(p) for p in PRESETS] + [random_algebra(rng, max_dim=4) for _ in range(40)]
    passed = 0
    for k in range(500):
        g = algebras[k % len(algebras)]
        r = structured_r(rng, g)
        lhs = drinfeld_criterion(g, r).is_bialgebra
        assert lhs == check_bialgebra(g, delta_r(g, r)).passes, (g.name, r)
        passed += lhs
    assert 50 < passed < 500  # both outcomes are exercised


def test_s_lambda_additivity():
    rng = random.Random(8)
    for _ in range(20):
        l11, l12, l21 = (rng.randint(-3, 3) for _ in range(3))
        g = lie.s_lambda(l11, l12, l21, -l11)
        r0 = [Fraction(0)] * 9
        r0[4], r0[5], r0[7], r0[8] = Fraction(l21), Fraction(-l11), Fraction(-l11), Fraction(-l12)
        star = rand_skew(rng, 3)
        r = [a + b for a, b in zip(r0, star)]
        assert cyb(g, r) == cyb(g, star)
        assert delta_r(g, r).matrix == delta_r(g, star).matrix


def permutation_matrix(perm):
    n = len(perm)
    return [[Fraction(int(perm[k] == j)) for j in range(n)] for k in range(n)]


@pytest.mark.parametrize("seed", range(10))
def test_cyb_equivariant_under_basis_permutation(seed):
    rng = random.Random(seed)
    g = random_algebra(rng, basis_change=False)
    n = g.dim
    perm = list(range(n))
    rng.shuffle(perm)
    h = change_basis(g, permutation_matrix(perm))  # new b_k = old b_perm[k]
    r = rand_tensor(rng, n)
    r_new = [r[perm[i] * n + perm[j]] for i in range(n) for j in range(n)]
    old = cyb(g, r)
    new = cyb(h, r_new)
    assert new == [old[(perm[i] * n + perm[j]) * n + perm[k]] for i in range(n) for j in range(n) for k in range(n)]


def subalgebra_pairs(g, rng, count):
    """Pairs with [u, v] in span{u, v}: rational eigenvectors of ad u, then mixed with u."""
    from bialg.decide import eigen_pairs

    n = g.dim
    out = []
    while len(out) < count:
        u = rand_tensor(rng, n, 1, density=0.7)
        pairs = list(eigen_pairs(g, u))
        if not pairs:
            continue
        _, v = rng.choice(pairs)
        a, b = rand_q(rng), rand_q(rng)
        out.append((u, [a * x + b * y for x, y in zip(v, u)]))
    return out


@pytest.mark.parametrize("name", PRESETS)
def test_two_dim_subalgebra_wedge_solves_cyb(name):
    g = lie.preset(name)
    rng = random.Random(name)
    for u, v in subalgebra_pairs(g, rng, 30):
        w = bracket(g, u, v)
        assert linalg.Subspace.span(g.dim, [u, v]).contains(w)
        assert not any(cyb(g, wedge(u, v)))


def test_tensor_json_round_trip():
    rng = random.Random(3)
    for power in (2, 3):
        t = rand_tensor(rng, 3, power)
        assert tensor_from_json(tensor_to_json(t, power), 3, power) == t
    with pytest.raises(TensorError):
        tensor_from_json({"0,5": "1"}, 3, 2)
