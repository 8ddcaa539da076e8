"""Exact volume of the height polytope by Ehrhart interpolation."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

# t12, t21, t13, t31, t23, t32
VARIABLES = ((1, 2), (2, 1), (1, 3), (3, 1), (2, 3), (3, 2))
CYCLIC_TRIPLES = ((1, 2, 3), (2, 3, 1), (3, 1, 2))


@dataclass(frozen=True)
class Polytope:
    """{t >= 0 : rows . t <= rhs}, with nonnegative integer rows."""

    rows: tuple[tuple[int, ...], ...]
    rhs: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.rows[0])

    def count_points(self, k: int) -> int:
        """Lattice points of the dilation k*P."""
        return count_lattice_points(self.rows, tuple(k * r for r in self.rhs))

    def vertices(self) -> list[tuple[Fraction, ...]]:
        d = self.dim
        # facets: a.t <= b for the rows, -t_i <= 0 for nonnegativity
        facets = [(list(map(Fraction, r)), Fraction(b)) for r, b in zip(self.rows, self.rhs)]
        for i in range(d):
            e = [Fraction(0)] * d
            e[i] = Fraction(-1)
            facets.append((e, Fraction(0)))
        found = set()
        for combo in itertools.combinations(facets, d):
            sol = _solve([list(a) for a, _ in combo], [b for _, b in combo])
            if sol is None:
                continue
            if all(sum(ai * xi for ai, xi in zip(a, sol)) <= b for a, b in facets):
                found.add(tuple(sol))
        return sorted(found)

    def period(self) -> int:
        """lcm of vertex denominators: the dilation making P a lattice polytope."""
        return math.lcm(*(x.denominator for v in self.vertices() for x in v))

    def volume(self) -> Fraction:
        return ehrhart_volume(self)


def height_polytope(rhs: int = 1, relabel: dict[int, int] | None = None) -> Polytope:
    """t_{j,k} + t_{j,l} + 2 t_{k,j} + 2 t_{l,j} <= rhs for the three cyclic triples.

    ``relabel`` permutes the index set {1, 2, 3} before building the rows.
    """
    sigma = relabel or {1: 1, 2: 2, 3: 3}
    pos = {v: i for i, v in enumerate(VARIABLES)}
    rows = []
    for j, k, l in CYCLIC_TRIPLES:
        j, k, l = sigma[j], sigma[k], sigma[l]
        row = [0] * len(VARIABLES)
        row[pos[(j, k)]] += 1
        row[pos[(j, l)]] += 1
        row[pos[(k, j)]] += 2
        row[pos[(l, j)]] += 2
        rows.append(tuple(row))
    return Polytope(tuple(rows), (rhs,) * len(rows))


def _solve(a: list[list[Fraction]], b: list[Fraction]) -> list[Fraction] | None:
    """Gaussian elimination over Q; None if singular."""
    n = len(a)
    m = [row[:] + [bi] for row, bi in zip(a, b)]
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return None
        m[c], m[piv] = m[piv], m[c]
        for r in range(n):
            if r != c and m[r][c] != 0:
                f = m[r][c] / m[c][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return [m[i][n] / m[i][i] for i in range(n)]


def count_lattice_points(rows, rhs) -> int:
    """#{t in Z_{>=0}^d : rows . t <= rhs} by pruned nested loops.

    The last coordinate is counted in closed form, and subtrees are memoized on
    the residual right-hand side.
    """
    d = len(rows[0])
    cols = [tuple(r[i] for r in rows) for i in range(d)]
    for i, col in enumerate(cols):
        if not any(col):
            raise ValueError(f"coordinate {i} is unbounded")

    # rows still touched by coordinates i.. ; other residuals are irrelevant
    # and zeroed so the memo key stays small
    active = [
        tuple(any(cols[k][r] for k in range(i, d)) for r in range(len(rows)))
        for i in range(d)
    ] + [(False,) * len(rows)]

    @lru_cache(maxsize=None)
    def rec(i: int, res: tuple[int, ...]) -> int:
        col = cols[i]
        top = min(r // c for r, c in zip(res, col) if c)
        if i == d - 1:
            return top + 1
        keep = active[i + 1]
        total = 0
        for t in range(top + 1):
            total += rec(i + 1, tuple(r - c * t if a else 0 for r, c, a in zip(res, col, keep)))
        return total

    if any(r < 0 for r in rhs):
        return 0
    return rec(0, tuple(rhs))


def interpolate(points: list[tuple[int, int]]) -> list[Fraction]:
    """Coefficients (constant first) of the polynomial through the points."""
    n = len(points)
    coeffs = [Fraction(0)] * n
    for i, (xi, yi) in enumerate(points):
        # Lagrange basis polynomial for node i
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xj * basis[k + 1]
            denom *= xi - xj
        for k in range(n):
            coeffs[k] += yi * basis[k] / denom
    return coeffs


def ehrhart_volume(poly: Polytope) -> Fraction:
    """Leading Ehrhart coefficient, from dilations by multiples of the period.

    On k = period * m the count is a genuine polynomial in m of degree d; one
    extra sample checks the fit.
    """
    d = poly.dim
    period = poly.period()
    samples = [(m, poly.count_points(period * m)) for m in range(d + 2)]
    coeffs = interpolate(samples[: d + 1])
    m, value = samples[-1]
    predicted = sum(c * m**k for k, c in enumerate(coeffs))
    if predicted != value:
        raise ArithmeticError(
            f"Ehrhart fit failed at m={m}: predicted {predicted}, counted {value}"
        )
    return coeffs[d] / period**d


def polytope_volume() -> Fraction:
    return height_polytope().volume()
