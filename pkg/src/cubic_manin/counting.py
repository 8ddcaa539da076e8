"""Counting N_{U,K,H}(B): the nine-variable torsor enumeration and an
independent divisor-based oracle working directly on x0**3 = x1*x2*x3.
"""

from __future__ import annotations

import logging
import math
import multiprocessing
import os
from bisect import bisect_right
from dataclasses import dataclass
from itertools import islice

from sympy import prime as nth_prime, primerange

from .primes import primes_up_to
from .ring import (
    MAX_BOUND,
    FieldDescriptor,
    QuadInt,
    canonical,
    canonical_elements,
    divide_exact,
    factor,
    gcd_many,
    is_unit,
    lcm,
    mul,
    norm,
    power,
)
from .torsor import GRAPH, MONOMIALS, VERTICES

log = logging.getLogger(__name__)


def _integral_bound(B: float) -> int:
    """Norms are integers, so H <= B is the same as H <= floor(B)."""
    if B < 0:
        raise ValueError("bound must be nonnegative")
    Bi = int(math.floor(B))
    if Bi > MAX_BOUND:
        raise ValueError(f"bound {B} exceeds the supported maximum {MAX_BOUND}")
    return Bi


def icbrt(n: int) -> int:
    r = round(n ** (1 / 3)) if n > 0 else 0
    while r * r * r > n:
        r -= 1
    while (r + 1) ** 3 <= n:
        r += 1
    return r


@dataclass
class ElementTable:
    """Canonical elements of norm <= bound with their prime-ideal supports.

    ``codes[i]`` is the product of distinct rational "labels", one per prime
    ideal dividing ``elems[i]``; two elements are coprime iff their codes are.
    """

    field: FieldDescriptor
    bound: int
    elems: list[QuadInt]
    norms: list[int]
    codes: list[int]
    support: list[tuple[int, ...]]
    prime_norms: list[int]

    def count_upto(self, t: int) -> int:
        return bisect_right(self.norms, t)


def _labels(k: int) -> list[int]:
    if k == 0:
        return []
    hi = nth_prime(k)
    return list(primerange(2, hi + 1))


def build_table(field: FieldDescriptor, X: int) -> ElementTable:
    elems = canonical_elements(field, X)
    norms = [norm(field, x) for x in elems]
    index = {x: i for i, x in enumerate(elems)}
    plist = primes_up_to(field, X)
    labels = _labels(len(plist))
    codes = [1] * len(elems)
    support: list[list[int]] = [[] for _ in elems]
    for pid, pi in enumerate(plist):
        npi = norm(field, pi)
        label = labels[pid]
        for z in islice(elems, bisect_right(norms, X // npi)):
            i = index[canonical(field, mul(field, pi, z))]
            codes[i] *= label
            support[i].append(pid)
    return ElementTable(
        field=field,
        bound=X,
        elems=elems,
        norms=norms,
        codes=codes,
        support=[tuple(s) for s in support],
        prime_norms=[norm(field, p) for p in plist],
    )


def coprime_count(table: ElementTable, t: int, pnorms: list[int]) -> int:
    """Canonical elements of norm <= t avoiding every prime ideal with the given norms.

    Inclusion-exclusion over squarefree products; ``pnorms`` lists one norm per
    prime ideal, sorted ascending.
    """
    norms = table.norms

    def rec(start: int, t: int) -> int:
        s = 0
        for i in range(start, len(pnorms)):
            p = pnorms[i]
            if p > t:
                break
            u = t // p
            s -= bisect_right(norms, u) + rec(i + 1, u)
        return s

    return bisect_right(norms, t) + rec(0, t)


# Enumeration order: the exponent-3 variables first, then the pairs.
ORDER = ((1,), (2,), (3,), (2, 1), (3, 1), (3, 2), (1, 3), (1, 2), (2, 3))

_TABLE: ElementTable | None = None


def _count_subtree(first_indices: list[int]) -> int:
    """Canonical coprime tuples in M(B) whose y1 index lies in ``first_indices``."""
    table = _TABLE
    norms = table.norms
    codes = table.codes
    support = table.support
    pn = table.prime_norms
    B = table.bound
    gcd = math.gcd
    cnt = table.count_upto
    total = 0
    for i1 in first_indices:
        n1 = norms[i1]
        c1 = codes[i1]
        R1a = B // (n1 * n1 * n1)
        for i2 in range(cnt(icbrt(B))):
            c2 = codes[i2]
            if gcd(c2, c1) != 1:
                continue
            n2 = norms[i2]
            R2a = B // (n2 * n2 * n2)
            c12 = c1 * c2
            s12 = set(support[i1]).union(support[i2])
            for i3 in range(cnt(icbrt(B))):
                c3 = codes[i3]
                if gcd(c3, c12) != 1:
                    continue
                n3 = norms[i3]
                R3a = B // (n3 * n3 * n3)
                c23 = c2 * c3
                c13 = c1 * c3
                # y21: M1 exponent 2, M2 exponent 1; must avoid y2, y3
                for i21 in range(cnt(min(math.isqrt(R1a), R2a))):
                    c21 = codes[i21]
                    if gcd(c21, c23) != 1:
                        continue
                    n21 = norms[i21]
                    R1b = R1a // (n21 * n21)
                    R2b = R2a // n21
                    p31 = c23 * c21
                    # y31: M1 exponent 2, M3 exponent 1; avoid y2, y3, y21
                    for i31 in range(cnt(min(math.isqrt(R1b), R3a))):
                        c31 = codes[i31]
                        if gcd(c31, p31) != 1:
                            continue
                        n31 = norms[i31]
                        R1c = R1b // (n31 * n31)
                        R3b = R3a // n31
                        p32 = c13 * c21 * c31
                        # y32: M2 exponent 2, M3 exponent 1; avoid y1, y3, y21, y31
                        for i32 in range(cnt(min(math.isqrt(R2b), R3b))):
                            c32 = codes[i32]
                            if gcd(c32, p32) != 1:
                                continue
                            n32 = norms[i32]
                            R2c = R2b // (n32 * n32)
                            R3c = R3b // n32
                            p13 = c12 * c21 * c32
                            # y13: M1 exponent 1, M3 exponent 2; avoid y1, y2, y21, y32
                            for i13 in range(cnt(min(R1c, math.isqrt(R3c)))):
                                c13_ = codes[i13]
                                if gcd(c13_, p13) != 1:
                                    continue
                                n13 = norms[i13]
                                R1d = R1c // n13
                                R3d = R3c // (n13 * n13)
                                p12 = c13 * c31 * c32 * c13_
                                base23 = s12.union(support[i21], support[i31], support[i13])
                                # y12: M1 exponent 1, M2 exponent 2; avoid y1, y3, y31, y32, y13
                                for i12 in range(cnt(min(R1d, math.isqrt(R2c)))):
                                    if gcd(codes[i12], p12) != 1:
                                        continue
                                    R2d = R2c // (norms[i12] * norms[i12])
                                    # y23: M2 exponent 1, M3 exponent 2; avoid
                                    # y1, y2, y21, y31, y13, y12
                                    t = min(R2d, math.isqrt(R3d))
                                    bad = base23.union(support[i12])
                                    total += coprime_count(table, t, sorted(pn[p] for p in bad))
    return total


def _init_worker(table: ElementTable) -> None:
    global _TABLE
    _TABLE = table


def count_torsor9(field: FieldDescriptor, B: float, workers: int | None = 1) -> int:
    """N_{U,K,H}(B) by enumerating coprime torsor points in M(B).

    Only canonical representatives are enumerated; each canonical tuple stands
    for w**9 tuples and the torsor map is w**7-to-1, hence the factor w**2.
    """
    global _TABLE
    Bi = _integral_bound(B)
    if Bi < 1:
        return 0
    table = build_table(field, Bi)
    first = list(range(table.count_upto(icbrt(Bi))))
    if workers is None:
        workers = os.cpu_count() or 1
    workers = max(1, min(workers, len(first)))
    if workers == 1:
        _TABLE = table
        try:
            canonical_count = _count_subtree(first)
        finally:
            _TABLE = None
    else:
        # round-robin split of the outermost loop; large y1 subtrees are small
        chunks = [first[k::workers] for k in range(workers)]
        ctx = multiprocessing.get_context("fork" if "fork" in multiprocessing.get_all_start_methods() else None)
        with ctx.Pool(workers, initializer=_init_worker, initargs=(table,)) as pool:
            canonical_count = sum(pool.map(_count_subtree, chunks))
    return canonical_count * field.w ** 2


# -- independent oracle ------------------------------------------------------

def _divisor_exponents(exps: list[int]):
    """All exponent vectors componentwise <= exps."""
    vecs = [()]
    for e in exps:
        vecs = [v + (k,) for v in vecs for k in range(e + 1)]
    return vecs


def count_divisor_oracle(field: FieldDescriptor, B: float) -> int:
    """N_{U,K,H}(B) by direct enumeration of primitive points on x0**3 = x1*x2*x3.

    Every point of U with height <= B has a unique primitive representative
    with canonical x0, and norm(x0) <= B.  For each such x0 all factorizations
    x0**3 = (u1 d1)(u2 d2) x3 are tried and tested for primitivity and height.
    """
    Bi = _integral_bound(B)
    if Bi < 1:
        return 0
    total = 0
    for x0 in canonical_elements(field, Bi):
        cube = power(field, x0, 3)
        fac = factor(field, cube)
        primes = [p for p, _ in fac.factors]
        exps = [e for _, e in fac.factors]
        pnorm = [norm(field, p) for p in primes]
        vecs = [v for v in _divisor_exponents(exps) if math.prod(q**k for q, k in zip(pnorm, v)) <= Bi]
        elem = {}
        for v in vecs:
            d = QuadInt(1, 0)
            for p, k in zip(primes, v):
                d = mul(field, d, power(field, p, k))
            elem[v] = d
        ncube = norm(field, cube)
        for v1 in vecs:
            d1 = elem[v1]
            n1 = norm(field, d1)
            for v2 in vecs:
                if any(a + b > e for a, b, e in zip(v1, v2, exps)):
                    continue
                d2 = elem[v2]
                # norms and the gcd are unit-invariant: test them once per (d1, d2)
                if ncube // (n1 * norm(field, d2)) > Bi:
                    continue
                d3 = divide_exact(field, cube, mul(field, d1, d2))
                if not is_unit(field, gcd_many(field, (x0, d1, d2, d3))):
                    continue
                for u1 in field.units:
                    x1 = mul(field, u1, d1)
                    for u2 in field.units:
                        x2 = mul(field, u2, d2)
                        x3 = divide_exact(field, cube, mul(field, x1, x2))
                        assert x3 is not None and mul(field, mul(field, x1, x2), x3) == cube
                        total += 1
    return total


# -- Moebius-inverted signed sum (tiny bounds only) --------------------------

def _norm_tuple_count(cum, residuals: list[int], order, exps) -> int:
    """Number of canonical 9-tuples z with prod_v norm(z_v)**e_{j,v} <= residuals[j]."""
    if not order:
        return 1
    v = order[0]
    rest = order[1:]
    lim = None
    for j, e in exps[v]:
        r = math.isqrt(residuals[j]) if e == 2 else (icbrt(residuals[j]) if e == 3 else residuals[j])
        lim = r if lim is None else min(lim, r)
    if not rest:
        return cum(lim)
    total = 0
    for nv in range(1, lim + 1):
        mult = cum(nv) - cum(nv - 1)
        if not mult:
            continue
        res = list(residuals)
        for j, e in exps[v]:
            res[j] //= nv**e
        total += mult * _norm_tuple_count(cum, res, rest, exps)
    return total


def count_moebius_signed(field: FieldDescriptor, B: float) -> int:
    """N_{U,K,H}(B) as the Moebius-inverted sum over d in N^{E'} of unconstrained counts.

    Exponential in the number of non-edges; meant for B <= 5.
    """
    Bi = _integral_bound(B)
    if Bi < 1:
        return 0
    elems = canonical_elements(field, Bi)
    norms = [norm(field, x) for x in elems]

    def cum(t: int) -> int:
        return bisect_right(norms, t)

    squarefree = [x for x in elems if all(e == 1 for _, e in factor(field, x).factors)]
    exps = {v: [(j - 1, MONOMIALS[j][v]) for j in (1, 2, 3) if v in MONOMIALS[j]] for v in VERTICES}
    nonedges = sorted((tuple(sorted(p)) for p in GRAPH.nonedges))
    one = QuadInt(1, 0)

    def feasible(r: dict) -> bool:
        for j in (1, 2, 3):
            m = 1
            for v, e in MONOMIALS[j].items():
                m *= norm(field, r[v]) ** e
            if m > Bi:
                return False
        return True

    def rec(pos: int, r: dict, sign: int) -> int:
        if pos == len(nonedges):
            res = []
            for j in (1, 2, 3):
                m = 1
                for v, e in MONOMIALS[j].items():
                    m *= norm(field, r[v]) ** e
                res.append(Bi // m)
            return sign * _norm_tuple_count(cum, res, ORDER, exps)
        u, v = nonedges[pos]
        total = 0
        for d in squarefree:
            r2 = dict(r)
            if d != one:
                r2[u] = lcm(field, r[u], d)
                r2[v] = lcm(field, r[v], d)
                if not feasible(r2):
                    continue
            total += rec(pos + 1, r2, -sign if d != one else sign)
        return total

    canonical_sum = rec(0, {v: one for v in VERTICES}, 1)
    # canonical tuples times w**9, divided by w**7
    return canonical_sum * field.w**2
