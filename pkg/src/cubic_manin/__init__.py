"""Counting rational points of bounded height on the cubic surface x0^3 = x1 x2 x3
over the nine imaginary quadratic fields of class number one, and the predicted
leading constant of Manin's conjecture.
"""

from .constant import (
    ConstantBreakdown,
    alpha_value,
    archimedean_density,
    circle_count,
    euler_factor,
    euler_product,
    leading_constant,
    power_sum,
)
from .counting import count_divisor_oracle, count_moebius_signed, count_torsor9
from .moebius import moebius_polynomial_direct, moebius_polynomial_reduced
from .polytope import polytope_volume
from .primes import primes_up_to
from .ring import FieldDescriptor, QuadInt, all_fields, make_field

__version__ = "0.1.0"

__all__ = [
    "ConstantBreakdown",
    "FieldDescriptor",
    "QuadInt",
    "all_fields",
    "alpha_value",
    "archimedean_density",
    "circle_count",
    "count_divisor_oracle",
    "count_moebius_signed",
    "count_torsor9",
    "euler_factor",
    "euler_product",
    "leading_constant",
    "make_field",
    "moebius_polynomial_direct",
    "moebius_polynomial_reduced",
    "polytope_volume",
    "power_sum",
    "primes_up_to",
]
