"""Torsor parameterizations of x0**3 = x1*x2*x3, the coprimality graph and heights."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .ring import (
    ZERO,
    FieldDescriptor,
    QuadInt,
    are_coprime,
    canonical_associate,
    divide_exact,
    gcd_many,
    mul,
    norm,
    product,
)

# Vertex labels: (j,) for the (-1)-curves, (j, k) for the (-2)-curves.
VERTICES: tuple[tuple[int, ...], ...] = (
    (1,), (2,), (3,), (1, 2), (2, 1), (1, 3), (3, 1), (2, 3), (3, 2),
)
CYCLE: tuple[tuple[int, ...], ...] = (
    (1,), (2, 1), (1, 2), (2,), (3, 2), (2, 3), (3,), (1, 3), (3, 1),
)
CYCLIC_TRIPLES = ((1, 2, 3), (2, 3, 1), (3, 1, 2))


@dataclass(frozen=True)
class CoprimalityGraph:
    vertices: tuple[tuple[int, ...], ...]
    edges: frozenset[frozenset]
    nonedges: frozenset[frozenset]

    def adjacent(self, u, v) -> bool:
        return frozenset((u, v)) in self.edges

    def neighbours(self, v) -> list[tuple[int, ...]]:
        return [u for u in self.vertices if u != v and self.adjacent(u, v)]


def _build_graph() -> CoprimalityGraph:
    edges = frozenset(
        frozenset((CYCLE[i], CYCLE[(i + 1) % len(CYCLE)])) for i in range(len(CYCLE))
    )
    pairs = {frozenset(p) for p in itertools.combinations(VERTICES, 2)}
    return CoprimalityGraph(VERTICES, edges, frozenset(pairs - edges))


GRAPH = _build_graph()

# Exponent of each vertex in the monomial bounding ||Psi_2(y)_j||, for j = 1, 2, 3.
MONOMIALS: dict[int, dict[tuple[int, ...], int]] = {}
for _j, _k, _l in CYCLIC_TRIPLES:
    MONOMIALS[_j] = {(_j,): 3, (_j, _k): 1, (_j, _l): 1, (_k, _j): 2, (_l, _j): 2}


@dataclass(frozen=True)
class TorsorTuple:
    y1: QuadInt
    y2: QuadInt
    y3: QuadInt
    y12: QuadInt
    y21: QuadInt
    y13: QuadInt
    y31: QuadInt
    y23: QuadInt
    y32: QuadInt

    def __post_init__(self):
        if any(v == ZERO for v in self.values()):
            raise ValueError("torsor coordinates must be nonzero")

    def __getitem__(self, vertex: tuple[int, ...]) -> QuadInt:
        return getattr(self, "y" + "".join(map(str, vertex)))

    def values(self) -> tuple[QuadInt, ...]:
        return tuple(getattr(self, "y" + "".join(map(str, v))) for v in VERTICES)

    @classmethod
    def from_mapping(cls, m: dict) -> TorsorTuple:
        return cls(**{"y" + "".join(map(str, v)): m[v] for v in VERTICES})


def _check_nonzero(*ys: QuadInt) -> None:
    if any(y == ZERO for y in ys):
        raise ValueError("torsor coordinates must be nonzero")


def psi0(field: FieldDescriptor, y23: QuadInt, y31: QuadInt, y12: QuadInt) -> tuple[QuadInt, ...]:
    _check_nonzero(y23, y31, y12)
    y = {(2, 3): y23, (3, 1): y31, (1, 2): y12}
    out = [product(field, (y12, y31, y23))]
    for j, k, l in CYCLIC_TRIPLES:
        out.append(product(field, (y[(j, k)], y[(l, j)], y[(l, j)])))
    return tuple(out)


def psi1(field: FieldDescriptor, y: dict[tuple[int, int], QuadInt]) -> tuple[QuadInt, ...]:
    """``y`` maps each ordered pair (j, k), j != k, to a nonzero element."""
    _check_nonzero(*y.values())
    out = [product(field, y.values())]
    for j, k, l in CYCLIC_TRIPLES:
        out.append(product(field, (y[(j, k)], y[(j, l)], y[(k, j)], y[(k, j)], y[(l, j)], y[(l, j)])))
    return tuple(out)


def psi2(field: FieldDescriptor, y: TorsorTuple) -> tuple[QuadInt, ...]:
    out = [product(field, y.values())]
    for j, k, l in CYCLIC_TRIPLES:
        out.append(product(field, [y[(j,)]] * 3 + [y[(j, k)], y[(j, l)], y[(k, j)], y[(k, j)], y[(l, j)], y[(l, j)]]))
    return tuple(out)


def primitive(field: FieldDescriptor, xs) -> tuple[QuadInt, ...]:
    """Divide a projective tuple by the gcd of its coordinates (class number 1)."""
    if all(x == ZERO for x in xs):
        raise ValueError("all-zero projective tuple")
    g = gcd_many(field, xs)
    return tuple(divide_exact(field, x, g) for x in xs)


def height(field: FieldDescriptor, xs) -> int:
    """Anticanonical Weil height: max norm of a primitive representative."""
    return max(norm(field, x) for x in primitive(field, xs))


def normalize_point(field: FieldDescriptor, xs) -> tuple[QuadInt, ...]:
    """Unique representative: primitive with canonical first coordinate."""
    xs = primitive(field, xs)
    _, u = canonical_associate(field, xs[0])
    return tuple(mul(field, u, x) for x in xs)


def is_coprime(field: FieldDescriptor, y: TorsorTuple) -> bool:
    for pair in GRAPH.nonedges:
        u, v = tuple(pair)
        if not are_coprime(field, y[u], y[v]):
            return False
    return True


def monomial_norms(field: FieldDescriptor, y: TorsorTuple) -> tuple[int, int, int]:
    """Norms of Psi_2(y)_1, Psi_2(y)_2, Psi_2(y)_3 computed from the factor norms."""
    n = {v: norm(field, y[v]) for v in VERTICES}
    out = []
    for j in (1, 2, 3):
        m = 1
        for v, e in MONOMIALS[j].items():
            m *= n[v] ** e
        out.append(m)
    return tuple(out)


def gcd_reduce(field: FieldDescriptor, y23: QuadInt, y31: QuadInt, y12: QuadInt) -> TorsorTuple:
    """Turn a Psi_0 input into a Psi_2 input by extracting the two layers of gcds.

    A common factor of the three inputs is removed first; it only rescales the
    projective point.
    """
    g = gcd_many(field, (y23, y31, y12))
    y23, y31, y12 = (divide_exact(field, y, g) for y in (y23, y31, y12))
    big = {(2, 3): y23, (3, 1): y31, (1, 2): y12}
    small = {}
    # first layer: y_{l,k} = gcd(y_{j,k}, y_{k,l}), then y_{j,k} = y'_{j,k} y_{k,j} y_{l,k}
    for j, k, l in CYCLIC_TRIPLES:
        small[(l, k)] = gcd_many(field, (big[(j, k)], big[(k, l)]))
    six = {}
    for j, k, l in CYCLIC_TRIPLES:
        d = mul(field, small[(k, j)], small[(l, k)])
        six[(j, k)] = divide_exact(field, big[(j, k)], d)
        six[(k, j)] = small[(k, j)]
    # second layer: y_j = gcd(y_{k,j}, y_{l,j}), divided out of both
    nine = {}
    for j, k, l in CYCLIC_TRIPLES:
        nine[(j,)] = gcd_many(field, (six[(k, j)], six[(l, j)]))
    for j, k in six:
        nine[(j, k)] = divide_exact(field, six[(j, k)], nine[(k,)])
    assert all(v is not None for v in nine.values())
    return TorsorTuple.from_mapping(nine)
