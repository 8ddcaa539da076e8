"""The predicted leading constant c_{S,K,H} and its checkable ingredients."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np
from scipy import integrate

from .polytope import polytope_volume  # noqa: F401  (re-exported)
from .primes import load_or_sieve
from .ring import FieldDescriptor, ellipse_rows, norm

PRECISION_DPS = 40

# sup over 0 < q <= 1/2 of |log((1-q)**7 (1+7q+q**2))| / q**2 is the q -> 0
# limit 27 (checked on a grid in the tests); doubled.
LOG_FACTOR_CONSTANT = 54


def _as_fraction(q) -> Fraction:
    return q if isinstance(q, Fraction) else Fraction(q)


def euler_factor(q) -> mpmath.mpf:
    """(1 - q)**7 (1 + 7q + q**2) for q = 1/norm(p)."""
    q = _as_fraction(q)
    if not 0 < q <= Fraction(1, 2):
        raise ValueError(f"q={q} outside (0, 1/2]")
    exact = (1 - q) ** 7 * (1 + 7 * q + q * q)
    with mpmath.workdps(PRECISION_DPS):
        return mpmath.mpf(exact.numerator) / exact.denominator


def euler_tail_bound(X: int) -> mpmath.mpf:
    """Bound on |log| of the product over prime ideals of norm > X.

    At most two prime ideals have a given prime norm m > X, and an inert ideal
    of norm p**2 > X needs p > sqrt(X); sum 1/m**2 over m > X is below 1/X and
    sum 1/m**4 over m > s below 1/(3 s**3).
    """
    s = math.isqrt(X)
    with mpmath.workdps(PRECISION_DPS):
        return LOG_FACTOR_CONSTANT * (mpmath.mpf(2) / X + mpmath.mpf(1) / (3 * s**3))


def euler_product(field: FieldDescriptor, X: float, cache_dir=None) -> tuple[mpmath.mpf, mpmath.mpf]:
    """Partial Euler product over prime ideals of norm <= X and its tail bound."""
    X = int(math.floor(X))
    with mpmath.workdps(PRECISION_DPS):
        if X < 2:
            return mpmath.mpf(1), mpmath.inf
        partial = mpmath.mpf(1)
        for p in load_or_sieve(field, X, cache_dir):
            partial *= euler_factor(Fraction(1, norm(field, p)))
        return partial, euler_tail_bound(X)


def alpha_value() -> Fraction:
    """alpha of the desingularized surface: alpha(smooth cubic) / #W(3 A_2)."""
    alpha_smooth_cubic = Fraction(1, 120)
    weyl_a2 = math.factorial(3)
    value = alpha_smooth_cubic / weyl_a2**3
    assert value == Fraction(1, 36 * math.factorial(6))
    return value


def _density_integrand(d: int):
    """Integrand of the archimedean density in log-radial coordinates.

    ``d`` is the local degree (1 real, 2 complex): ||y|| = rho**d.  Angles are
    integrated out; the measure per coordinate is 2 drho (two signs) for real
    places and 2 * 2*pi * rho drho (twice Lebesgue, polar) for complex ones.
    With rho = exp(x) the Jacobian rho enters once more.
    """
    def measure(rho):
        return 2.0 if d == 1 else 4.0 * math.pi * rho

    def f(x2, x1):
        r1, r2 = math.exp(x1), math.exp(x2)
        n1, n2 = r1**d, r2**d
        m = max(1.0, n1, n2, 1.0 / (n1 * n2))
        return measure(r1) * measure(r2) * r1 * r2 / (m * n1 * n2)

    return f


def archimedean_density(place_kind: str, cutoff: float = 60.0) -> float:
    """Local density of U at an archimedean place, by 2-d adaptive quadrature.

    The integral runs over |log ||y_i|| | <= cutoff; in those coordinates the
    integrand is exp(-h) with h >= max|log ||y_i|| |/2, so the neglected outer
    region contributes at most 8 (2*cutoff + 4) exp(-cutoff/2).
    """
    if place_kind not in ("real", "complex"):
        raise ValueError(f"unknown place kind {place_kind!r}")
    d = 1 if place_kind == "real" else 2
    f = _density_integrand(d)
    L = cutoff / d  # in x = log(rho) coordinates

    def inner(x1):
        kinks = sorted({0.0, x1, -x1, -2 * x1, -x1 / 2})
        pts = [p for p in kinks if -L < p < L]
        val, _ = integrate.quad(f, -L, L, args=(x1,), points=pts, limit=200, epsabs=1e-13, epsrel=1e-11)
        return val

    value, _ = integrate.quad(inner, -L, L, points=[0.0], limit=200, epsabs=1e-12, epsrel=1e-10)
    return value


@dataclass(frozen=True)
class ConstantBreakdown:
    field_n: int
    euler_bound: int
    alpha: Fraction
    delta: int
    euler_partial: mpmath.mpf
    euler_tail_bound: mpmath.mpf
    closed_form_prefactor: mpmath.mpf
    assembled_general: mpmath.mpf
    c_value: mpmath.mpf

    def as_dict(self) -> dict[str, str | int]:
        def fmt(x):
            return mpmath.nstr(x, 25, min_fixed=-5, max_fixed=5)

        return {
            "field": self.field_n,
            "euler_bound": self.euler_bound,
            "alpha": f"{self.alpha.numerator}/{self.alpha.denominator}",
            "delta": self.delta,
            "euler_partial": fmt(self.euler_partial),
            "euler_tail_bound": fmt(self.euler_tail_bound),
            "closed_form_prefactor": fmt(self.closed_form_prefactor),
            "assembled_general": fmt(self.assembled_general),
            "c_value": fmt(self.c_value),
        }


def closed_form_prefactor(field: FieldDescriptor) -> mpmath.mpf:
    """2**7 pi**9 / (6! w**7 Delta**9)."""
    with mpmath.workdps(PRECISION_DPS):
        delta = field.delta[0] * mpmath.sqrt(field.delta[1])
        return 2**7 * mpmath.pi**9 / (math.factorial(6) * field.w**7 * delta**9)


def general_prefactor(field: FieldDescriptor) -> mpmath.mpf:
    """9**q / (4 6!) (2**r (2 pi)**s / Delta)**9 (h R / w)**7 for any number field data."""
    r, s = field.signature
    with mpmath.workdps(PRECISION_DPS):
        delta = field.delta[0] * mpmath.sqrt(field.delta[1])
        return (
            mpmath.mpf(9) ** field.q / (4 * math.factorial(6))
            * (2**r * (2 * mpmath.pi) ** s / delta) ** 9
            * (mpmath.mpf(field.h * field.regulator) / field.w) ** 7
        )


def leading_constant(field: FieldDescriptor, X: float, cache_dir=None) -> ConstantBreakdown:
    X = int(math.floor(X))
    if X < 2:
        raise ValueError("euler bound must be at least 2")
    partial, tail = euler_product(field, X, cache_dir)
    with mpmath.workdps(PRECISION_DPS):
        closed = closed_form_prefactor(field)
        general = general_prefactor(field)
        if abs(general / closed - 1) > mpmath.mpf(10) ** -12:
            raise ArithmeticError("closed form disagrees with the general assembly")
        return ConstantBreakdown(
            field_n=field.n,
            euler_bound=X,
            alpha=alpha_value(),
            delta=1,
            euler_partial=partial,
            euler_tail_bound=tail,
            closed_form_prefactor=closed,
            assembled_general=general * partial,
            c_value=closed * partial,
        )


# -- lattice point counts in norm discs --------------------------------------

def circle_count(field: FieldDescriptor, C: float) -> int:
    """Nonzero ring elements of norm <= C."""
    if C < 0:
        raise ValueError("C must be nonnegative")
    X = int(math.floor(C))
    return sum(a1 - a0 + 1 for _, a0, a1 in ellipse_rows(field, X)) - 1


def norm_histogram(field: FieldDescriptor, X: int) -> np.ndarray:
    """hist[n] = number of ring elements of norm exactly n, for 0 <= n <= X."""
    absn = -field.n
    rows = []
    for b, a0, a1 in ellipse_rows(field, X):
        a = np.arange(a0, a1 + 1, dtype=np.int64)
        if field.omega_kind == "sqrt":
            rows.append(a * a + absn * b * b)
        else:
            rows.append(a * a + a * b + b * b * ((1 + absn) // 4))
    return np.bincount(np.concatenate(rows), minlength=X + 1)


def power_sum(field: FieldDescriptor, B: float, a: float) -> float:
    """Sum of norm(x)**a over nonzero x with norm(x) <= B."""
    if B < 1 or not -1 <= a <= 0:
        raise ValueError("need B >= 1 and -1 <= a <= 0")
    X = int(math.floor(B))
    hist = norm_histogram(field, X)
    n = np.nonzero(hist[1:])[0] + 1
    return math.fsum((hist[n] * n.astype(float) ** a).tolist())
