import random

import pytest

from cubic_manin.ring import (
    ONE,
    ZERO,
    QuadInt,
    canonical,
    divide_exact,
    gcd_many,
    is_unit,
    make_field,
    mul,
    norm,
    power,
    product,
)
from cubic_manin.torsor import (
    CYCLE,
    GRAPH,
    MONOMIALS,
    VERTICES,
    TorsorTuple,
    gcd_reduce,
    height,
    is_coprime,
    monomial_norms,
    normalize_point,
    psi0,
    psi1,
    psi2,
)

from conftest import random_element

GI = make_field(-1)
I = QuadInt(0, 1)
T = QuadInt(1, 1)  # 1 + i
PAIRS = [(1, 2), (2, 1), (1, 3), (3, 1), (2, 3), (3, 2)]


def cube_ok(field, xs):
    return power(field, xs[0], 3) == product(field, xs[1:])


def ones():
    return TorsorTuple.from_mapping({v: ONE for v in VERTICES})


def random_coprime_tuple(field, rng, R=6):
    """Random tuple, then strip shared factors across non-edges until coprime."""
    y = {v: random_element(rng, R) for v in VERTICES}
    for _ in range(10):
        changed = False
        for pair in GRAPH.nonedges:
            u, v = sorted(pair)
            g = gcd_many(field, (y[u], y[v]))
            if not is_unit(field, g):
                y[v] = divide_exact(field, y[v], g)
                changed = True
        if not changed:
            return TorsorTuple.from_mapping(y)
    raise AssertionError("did not converge")


# -- graph -------------------------------------------------------------------

def test_graph_shape():
    assert len(GRAPH.vertices) == 9
    assert len(GRAPH.edges) == 9 and len(GRAPH.nonedges) == 27
    for v in VERTICES:
        assert len(GRAPH.neighbours(v)) == 2
    # single cycle: walk it
    seen, prev, cur = [CYCLE[0]], None, CYCLE[0]
    while True:
        nxt = next(u for u in GRAPH.neighbours(cur) if u != prev)
        if nxt == CYCLE[0]:
            break
        seen.append(nxt)
        prev, cur = cur, nxt
    assert len(seen) == 9


def test_monomials_match_psi2_exponents():
    for j in (1, 2, 3):
        assert sum(MONOMIALS[j].values()) == 9


# -- parameterizations -------------------------------------------------------

def test_psi0_examples():
    assert psi0(GI, ONE, ONE, ONE) == (ONE,) * 4
    assert psi0(GI, T, ONE, ONE) == (T, ONE, T, QuadInt(0, 2))
    with pytest.raises(ValueError):
        psi0(GI, ZERO, ONE, ONE)


def test_psi1_examples(rng):
    assert psi1(GI, {p: ONE for p in PAIRS}) == (ONE,) * 4
    for _ in range(50):
        y = {p: random_element(rng, 9) for p in PAIRS}
        y.update({(2, 1): ONE, (1, 3): ONE, (3, 2): ONE})
        assert psi1(GI, y) == psi0(GI, y[(2, 3)], y[(3, 1)], y[(1, 2)])
    with pytest.raises(ValueError):
        psi1(GI, {p: (ZERO if p == (1, 2) else ONE) for p in PAIRS})


def test_psi2_examples():
    assert psi2(GI, ones()) == (ONE,) * 4
    # y_1 only enters coordinates 0 and 1
    y = TorsorTuple.from_mapping({v: (T if v == (1,) else ONE) for v in VERTICES})
    assert psi2(GI, y) == (T, power(GI, T, 3), ONE, ONE)
    assert cube_ok(GI, psi2(GI, y))
    with pytest.raises(ValueError):
        TorsorTuple.from_mapping({v: (ZERO if v == (2, 3) else ONE) for v in VERTICES})


def test_cube_identities(field, rng):
    for _ in range(1000 // 9 + 1):
        ys = [random_element(rng, 15) for _ in range(9)]
        assert cube_ok(field, psi0(field, *ys[:3]))
        assert cube_ok(field, psi1(field, dict(zip(PAIRS, ys[:6]))))
        assert cube_ok(field, psi2(field, TorsorTuple(*ys)))


def test_cube_identities_gaussian_1000(rng):
    for _ in range(1000):
        ys = [random_element(rng, 15) for _ in range(9)]
        assert cube_ok(GI, psi0(GI, *ys[:3]))
        assert cube_ok(GI, psi1(GI, dict(zip(PAIRS, ys[:6]))))
        assert cube_ok(GI, psi2(GI, TorsorTuple(*ys)))


# -- heights -----------------------------------------------------------------

def test_height_examples():
    two = QuadInt(2, 0)
    assert height(GI, (two,) * 4) == 1
    assert height(GI, (ONE, ONE, ONE, T)) == 2
    with pytest.raises(ValueError):
        height(GI, (ZERO,) * 4)


def test_normalize_point_unique(field, rng):
    for _ in range(30):
        xs = psi0(field, *(random_element(rng, 5) for _ in range(3)))
        rep = normalize_point(field, xs)
        assert rep[0] == canonical(field, rep[0])
        for u in field.units:
            scaled = tuple(mul(field, mul(field, u, QuadInt(3, 1)), x) for x in xs)
            assert normalize_point(field, scaled) == rep


def test_coprime_image_is_primitive_and_height(field, rng):
    for _ in range(1000 // 9 + 1):
        y = random_coprime_tuple(field, rng)
        assert is_coprime(field, y)
        xs = psi2(field, y)
        assert is_unit(field, gcd_many(field, xs))
        assert height(field, xs) == max(norm(field, x) for x in xs[1:])
        assert monomial_norms(field, y) == tuple(norm(field, x) for x in xs[1:])


# -- coprimality -------------------------------------------------------------

def test_is_coprime_examples():
    assert is_coprime(GI, ones())
    assert not is_coprime(GI, TorsorTuple.from_mapping({v: (T if v in ((1,), (2,)) else ONE) for v in VERTICES}))
    y = TorsorTuple.from_mapping({v: (T if v in ((1,), (2, 1)) else ONE) for v in VERTICES})
    assert is_coprime(GI, y)
    # explicit check of all 27 pairs
    bad = [p for p in GRAPH.nonedges if not is_unit(GI, gcd_many(GI, [y[v] for v in p]))]
    assert bad == []


def test_unit_invariance(field, rng):
    for _ in range(60):
        y = random_coprime_tuple(field, rng) if rng.random() < 0.5 else TorsorTuple(
            *(random_element(rng, 6) for _ in range(9))
        )
        v = rng.choice(VERTICES)
        u = rng.choice(field.units)
        m = {w: y[w] for w in VERTICES}
        m[v] = mul(field, u, m[v])
        z = TorsorTuple.from_mapping(m)
        assert is_coprime(field, z) == is_coprime(field, y)
        assert monomial_norms(field, z) == monomial_norms(field, y)


# -- gcd reduction -----------------------------------------------------------

def proportional(field, xs, ys):
    """xs = lambda * ys for some nonzero lambda in K."""
    return all(mul(field, xs[i], ys[0]) == mul(field, ys[i], xs[0]) for i in range(4))


def test_gcd_reduce(field, rng):
    for _ in range(60):
        y23, y31, y12 = (random_element(rng, 12) for _ in range(3))
        y = gcd_reduce(field, y23, y31, y12)
        assert is_coprime(field, y)
        assert proportional(field, psi2(field, y), psi0(field, y23, y31, y12))
