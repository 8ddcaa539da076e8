"""The local Moebius polynomial A(x) of the coprimality graph, computed two ways.

Polynomials are integer coefficient lists, constant term first.
"""

from __future__ import annotations

import itertools

import numpy as np

from .torsor import GRAPH, VERTICES

_NONEDGES = sorted(tuple(sorted(p)) for p in GRAPH.nonedges)


def _poly_mul(p: list[int], q: list[int]) -> list[int]:
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def _poly_add(p: list[int], q: list[int]) -> list[int]:
    n = max(len(p), len(q))
    return [(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)]


def _trim(p: list[int]) -> list[int]:
    while len(p) > 1 and p[-1] == 0:
        p = p[:-1]
    return p


def moebius_polynomial_reduced() -> list[int]:
    """Sum over n in {0,1}^V of prod_v e(n_v) times the inner Moebius sum.

    With e(0) = 1 - x and e(1) = x.  The inner sum over d in {0,1}^{E'} with
    d_a <= n_v for v in a factors over non-edges: a non-edge with both ends in
    the support of n contributes mu(0) + mu(1) = 0, any other is forced to 0
    and contributes 1.  So only supports free of non-edges survive.
    """
    total = [0]
    for n in itertools.product((0, 1), repeat=len(VERTICES)):
        support = {v for v, bit in zip(VERTICES, n) if bit}
        if any(u in support and v in support for u, v in _NONEDGES):
            continue
        term = [1]
        for bit in n:
            term = _poly_mul(term, [0, 1] if bit else [1, -1])
        total = _poly_add(total, term)
    return _trim(total)


def moebius_polynomial_direct(chunk_bits: int = 22) -> list[int]:
    """Brute force over all 2**27 indicator vectors d on the non-edges.

    r_v is the max of d_a over non-edges a containing v; each d contributes
    (-1)**|d| x**(sum_v r_v).
    """
    m = len(_NONEDGES)
    masks = []
    for v in VERTICES:
        mask = 0
        for i, (a, b) in enumerate(_NONEDGES):
            if v in (a, b):
                mask |= 1 << i
        masks.append(np.uint32(mask))
    counts = np.zeros(len(VERTICES) + 1, dtype=np.int64)
    step = 1 << min(chunk_bits, m)
    for start in range(0, 1 << m, step):
        d = np.arange(start, start + step, dtype=np.uint32)
        deg = np.zeros(step, dtype=np.int64)
        for mask in masks:
            deg += (d & mask) != 0
        odd = (np.bitwise_count(d) & 1).astype(bool)
        counts += np.bincount(deg[~odd], minlength=len(counts))
        counts -= np.bincount(deg[odd], minlength=len(counts))
    return _trim([int(c) for c in counts])
