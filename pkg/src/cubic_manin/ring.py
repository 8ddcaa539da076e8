"""Exact arithmetic in the ring of integers of an imaginary quadratic field
with class number 1.

Elements are pairs ``(a, b)`` standing for ``a + b*omega`` where ``omega`` is
``sqrt(n)`` for ``n = 2, 3 (mod 4)`` and ``(1 + sqrt(n))/2`` for
``n = 1 (mod 4)``.  Every function takes the field descriptor first.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Iterator, NamedTuple

from sympy import factorint

ADMISSIBLE_N = (-1, -2, -3, -7, -11, -19, -43, -67, -163)

# Largest bound B accepted by the counting code.  Norms of every variable and
# of every monomial compared against B then stay below 10**8, and products of
# two such norms below 2**127, so a fixed-width port would fit in 128 bits.
MAX_BOUND = 10**8


class QuadInt(NamedTuple):
    a: int
    b: int

    def __repr__(self) -> str:
        return f"QuadInt({self.a}, {self.b})"


ZERO = QuadInt(0, 0)
ONE = QuadInt(1, 0)


@dataclass(frozen=True)
class FieldDescriptor:
    """One of the nine imaginary quadratic fields of class number 1."""

    n: int
    w: int
    delta: tuple[int, int]  # Delta_K = delta[0] * sqrt(delta[1])
    disc: int
    omega_kind: str  # "sqrt" or "half"
    h: int = 1
    regulator: int = 1
    signature: tuple[int, int] = (0, 1)
    q: int = 0
    units: tuple[QuadInt, ...] = dc_field(default=(), repr=False, compare=False)

    @property
    def delta_squared(self) -> int:
        return self.delta[0] ** 2 * self.delta[1]

    @property
    def delta_float(self) -> float:
        return self.delta[0] * math.sqrt(self.delta[1])

    @property
    def omega_complex(self) -> complex:
        r = cmath.sqrt(self.n)
        return r if self.omega_kind == "sqrt" else (1 + r) / 2

    @property
    def name(self) -> str:
        return "Q(i)" if self.n == -1 else f"Q(sqrt({self.n}))"


def _squarefree_split(m: int) -> tuple[int, int]:
    """Write m = s**2 * r with r squarefree."""
    s = 1
    r = m
    for p, e in factorint(m).items():
        s *= p ** (e // 2)
        r //= p ** (2 * (e // 2))
    return s, r


@lru_cache(maxsize=None)
def make_field(n: int) -> FieldDescriptor:
    if n not in ADMISSIBLE_N:
        raise ValueError(
            f"n={n} is not one of the imaginary quadratic fields of class number 1 "
            f"{ADMISSIBLE_N}"
        )
    if n % 4 == 1:
        kind, disc = "half", n
    else:
        kind, disc = "sqrt", 4 * n
    w = {-1: 4, -3: 6}.get(n, 2)
    if n == -1:
        units = (QuadInt(1, 0), QuadInt(0, 1), QuadInt(-1, 0), QuadInt(0, -1))
    elif n == -3:
        # omega = exp(i*pi/3) generates the sixth roots of unity
        units = (
            QuadInt(1, 0), QuadInt(0, 1), QuadInt(-1, 1),
            QuadInt(-1, 0), QuadInt(0, -1), QuadInt(1, -1),
        )
    else:
        units = (QuadInt(1, 0), QuadInt(-1, 0))
    return FieldDescriptor(
        n=n, w=w, delta=_squarefree_split(-disc), disc=disc, omega_kind=kind,
        units=units,
    )


def all_fields() -> list[FieldDescriptor]:
    return [make_field(n) for n in ADMISSIBLE_N]


# -- basic arithmetic --------------------------------------------------------

def add(x: QuadInt, y: QuadInt) -> QuadInt:
    return QuadInt(x.a + y.a, x.b + y.b)


def sub(x: QuadInt, y: QuadInt) -> QuadInt:
    return QuadInt(x.a - y.a, x.b - y.b)


def neg(x: QuadInt) -> QuadInt:
    return QuadInt(-x.a, -x.b)


def mul(field: FieldDescriptor, x: QuadInt, y: QuadInt) -> QuadInt:
    a, b = x
    c, d = y
    if field.omega_kind == "sqrt":
        return QuadInt(a * c + field.n * b * d, a * d + b * c)
    # omega**2 = omega + (n - 1)/4
    return QuadInt(a * c + b * d * ((field.n - 1) // 4), a * d + b * c + b * d)


def power(field: FieldDescriptor, x: QuadInt, e: int) -> QuadInt:
    result = ONE
    for _ in range(e):
        result = mul(field, result, x)
    return result


def product(field: FieldDescriptor, xs) -> QuadInt:
    result = ONE
    for x in xs:
        result = mul(field, result, x)
    return result


def conj(field: FieldDescriptor, x: QuadInt) -> QuadInt:
    if field.omega_kind == "sqrt":
        return QuadInt(x.a, -x.b)
    # conj(omega) = 1 - omega
    return QuadInt(x.a + x.b, -x.b)


def norm(field: FieldDescriptor, x: QuadInt) -> int:
    """|sigma(x)|**2, an exact nonnegative integer."""
    a, b = x
    if field.omega_kind == "sqrt":
        return a * a - field.n * b * b
    return a * a + a * b + b * b * ((1 - field.n) // 4)


def to_complex(field: FieldDescriptor, x: QuadInt) -> complex:
    return x.a + x.b * field.omega_complex


def divide_exact(field: FieldDescriptor, x: QuadInt, y: QuadInt) -> QuadInt | None:
    """Return x / y if y divides x in the ring, else None."""
    ny = norm(field, y)
    if ny == 0:
        raise ZeroDivisionError("division by zero element")
    num = mul(field, x, conj(field, y))
    if num.a % ny or num.b % ny:
        return None
    return QuadInt(num.a // ny, num.b // ny)


def divides(field: FieldDescriptor, d: QuadInt, x: QuadInt) -> bool:
    return divide_exact(field, x, d) is not None


def is_unit(field: FieldDescriptor, x: QuadInt) -> bool:
    return norm(field, x) == 1


# -- canonical associates ----------------------------------------------------

def in_sector(field: FieldDescriptor, x: QuadInt) -> bool:
    """True iff arg(x) lies in [0, 2*pi/w); decided on integer coordinates."""
    a, b = x
    if field.w == 4:
        return a > 0 and b >= 0
    if field.w == 6:
        return a > 0 and b >= 0
    # w == 2: upper half plane plus the positive real axis
    if b != 0:
        return b > 0
    return a > 0


def canonical_associate(field: FieldDescriptor, x: QuadInt) -> tuple[QuadInt, QuadInt]:
    """Return ``(canonical, unit)`` with ``canonical == unit * x``."""
    if x == ZERO:
        raise ValueError("zero has no canonical associate")
    for u in field.units:
        y = mul(field, u, x)
        if in_sector(field, y):
            return y, u
    raise AssertionError(f"no associate of {x} in the canonical sector")


def canonical(field: FieldDescriptor, x: QuadInt) -> QuadInt:
    return canonical_associate(field, x)[0]


def associates(field: FieldDescriptor, x: QuadInt) -> list[QuadInt]:
    return [mul(field, u, x) for u in field.units]


# -- gcd via ideal lattices --------------------------------------------------

def _hermite_basis(vectors: list[tuple[int, int]]) -> tuple[tuple[int, int], tuple[int, int]]:
    """Row-reduce integer vectors in Z**2 to an upper triangular 2-basis."""
    # first coordinate: extended gcd over all rows
    rows = [list(v) for v in vectors if v != (0, 0)]
    pivot = None
    rest = []
    for r in rows:
        if pivot is None:
            if r[0] != 0:
                pivot = r
            else:
                rest.append(r)
            continue
        # combine pivot and r so that pivot[0] becomes gcd and r[0] becomes 0
        a, b = pivot[0], r[0]
        if b == 0:
            rest.append(r)
            continue
        g, s, t = _xgcd(a, b)
        new_pivot = [s * pivot[0] + t * r[0], s * pivot[1] + t * r[1]]
        ka, kb = a // g, b // g
        other = [kb * pivot[0] - ka * r[0], kb * pivot[1] - ka * r[1]]
        pivot = new_pivot
        rest.append(other)
    second = 0
    for r in rest:
        assert r[0] == 0
        second = math.gcd(second, r[1])
    if pivot is None or second == 0:
        raise ValueError("vectors do not span a rank-2 lattice")
    return (pivot[0], pivot[1] % second), (0, second)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def _round_div(num: int, den: int) -> int:
    """Nearest integer to num/den for den > 0 (ties rounded up)."""
    return (2 * num + den) // (2 * den)


def _lagrange_reduce(field: FieldDescriptor, u: QuadInt, v: QuadInt) -> tuple[QuadInt, QuadInt]:
    """Gauss/Lagrange reduction of a rank-2 lattice under the norm form."""
    nu, nv = norm(field, u), norm(field, v)
    if nv < nu:
        u, v, nu, nv = v, u, nv, nu
    while True:
        # twice the bilinear form: N(u+v) - N(u) - N(v)
        b2 = norm(field, add(u, v)) - nu - nv
        m = _round_div(b2, 2 * nu)
        if m:
            v = QuadInt(v.a - m * u.a, v.b - m * u.b)
            nv = norm(field, v)
        if nv >= nu:
            return u, v
        u, v, nu, nv = v, u, nv, nu


def gcd(field: FieldDescriptor, x: QuadInt, y: QuadInt) -> QuadInt:
    """Canonical generator of the ideal (x, y)."""
    if x == ZERO and y == ZERO:
        raise ValueError("gcd(0, 0) is undefined")
    if y == ZERO:
        return canonical(field, x)
    if x == ZERO:
        return canonical(field, y)
    omega = QuadInt(0, 1)
    gens = [x, mul(field, x, omega), y, mul(field, y, omega)]
    e1, e2 = _hermite_basis([tuple(g) for g in gens])
    u, _ = _lagrange_reduce(field, QuadInt(*e1), QuadInt(*e2))
    return canonical(field, u)


def gcd_many(field: FieldDescriptor, xs) -> QuadInt:
    g = ZERO
    for x in xs:
        g = x if g == ZERO else gcd(field, g, x)
        if g != ZERO and norm(field, g) == 1:
            return ONE
    return canonical(field, g)


def lcm(field: FieldDescriptor, x: QuadInt, y: QuadInt) -> QuadInt:
    g = gcd(field, x, y)
    return canonical(field, divide_exact(field, mul(field, x, y), g))


def are_coprime(field: FieldDescriptor, x: QuadInt, y: QuadInt) -> bool:
    if math.gcd(norm(field, x), norm(field, y)) == 1:
        return True
    return norm(field, gcd(field, x, y)) == 1


# -- rational primes and their decomposition ---------------------------------

def kronecker_disc(field: FieldDescriptor, p: int) -> int:
    d = field.disc
    if d % p == 0:
        return 0
    if p == 2:
        return 1 if d % 8 == 1 else -1
    return 1 if pow(d % p, (p - 1) // 2, p) == 1 else -1


def splitting_type(field: FieldDescriptor, p: int) -> str:
    if p < 2 or len(factorint(p)) != 1 or factorint(p)[p] != 1:
        raise ValueError(f"{p} is not a rational prime")
    k = kronecker_disc(field, p)
    return {0: "ramified", 1: "split", -1: "inert"}[k]


def solve_norm(field: FieldDescriptor, m: int) -> QuadInt | None:
    """Some element of norm m, by scanning b over the norm ellipse."""
    absn = -field.n
    if field.omega_kind == "sqrt":
        for b in range(math.isqrt(m // absn) + 1):
            r = m - absn * b * b
            a = math.isqrt(r)
            if a * a == r:
                return QuadInt(a, b)
        return None
    # 4*N(a + b*omega) = (2a + b)**2 + |n| b**2
    for b in range(math.isqrt(4 * m // absn) + 1):
        r = 4 * m - absn * b * b
        s = math.isqrt(r)
        if s * s == r and (s - b) % 2 == 0:
            return QuadInt((s - b) // 2, b)
    return None


def _sort_key(field: FieldDescriptor, x: QuadInt) -> tuple[int, int, int]:
    return (norm(field, x), x.a, x.b)


@lru_cache(maxsize=65536)
def primes_above(field: FieldDescriptor, p: int) -> tuple[QuadInt, ...]:
    """Canonical generators of the prime ideals above the rational prime p."""
    kind = splitting_type(field, p)
    if kind == "inert":
        return (QuadInt(p, 0),)
    pi = solve_norm(field, p)
    assert pi is not None, (field.n, p, kind)
    pi = canonical(field, pi)
    if kind == "ramified":
        return (pi,)
    pibar = canonical(field, conj(field, pi))
    assert pibar != pi
    return tuple(sorted((pi, pibar), key=lambda x: _sort_key(field, x)))


# -- factorization and divisors ----------------------------------------------

@dataclass(frozen=True)
class Factorization:
    unit: QuadInt
    factors: tuple[tuple[QuadInt, int], ...]

    def expand(self, field: FieldDescriptor) -> QuadInt:
        result = self.unit
        for pi, e in self.factors:
            result = mul(field, result, power(field, pi, e))
        return result


def factor(field: FieldDescriptor, x: QuadInt) -> Factorization:
    if x == ZERO:
        raise ValueError("cannot factor zero")
    factors = []
    rest = x
    for p, e in sorted(factorint(norm(field, x)).items()):
        for pi in primes_above(field, p):
            k = 0
            while True:
                q = divide_exact(field, rest, pi)
                if q is None:
                    break
                rest = q
                k += 1
            if k:
                factors.append((pi, k))
    assert norm(field, rest) == 1, (x, rest)
    factors.sort(key=lambda f: _sort_key(field, f[0]))
    return Factorization(unit=rest, factors=tuple(factors))


def divisors(field: FieldDescriptor, x: QuadInt) -> list[QuadInt]:
    """All canonical divisors of x, one per divisor ideal."""
    divs = [ONE]
    for pi, e in factor(field, x).factors:
        step = []
        for d in divs:
            cur = d
            step.append(cur)
            for _ in range(e):
                cur = mul(field, cur, pi)
                step.append(cur)
        divs = step
    return sorted((canonical(field, d) for d in divs), key=lambda d: _sort_key(field, d))


def divisor_count(field: FieldDescriptor, x: QuadInt) -> int:
    return math.prod(e + 1 for _, e in factor(field, x).factors)


# -- lattice enumeration -----------------------------------------------------

def ellipse_rows(field: FieldDescriptor, X: int) -> Iterator[tuple[int, int, int]]:
    """Yield ``(b, a_min, a_max)`` covering every a + b*omega with norm <= X."""
    if X < 0:
        return
    absn = -field.n
    if field.omega_kind == "sqrt":
        bmax = math.isqrt(X // absn)
        for b in range(-bmax, bmax + 1):
            amax = math.isqrt(X - absn * b * b)
            yield b, -amax, amax
    else:
        bmax = math.isqrt(4 * X // absn)
        for b in range(-bmax, bmax + 1):
            s = math.isqrt(4 * X - absn * b * b)
            # 2a + b in [-s, s]
            yield b, -((s + b) // 2), (s - b) // 2


def canonical_elements(field: FieldDescriptor, X: int) -> list[QuadInt]:
    """Canonical nonzero elements of norm <= X sorted by (norm, a, b)."""
    X = int(math.floor(X))
    out = []
    for b, a0, a1 in ellipse_rows(field, X):
        if b < 0:
            continue
        for a in range(a0, a1 + 1):
            x = QuadInt(a, b)
            if in_sector(field, x):
                out.append(x)
    out.sort(key=lambda x: _sort_key(field, x))
    return out
