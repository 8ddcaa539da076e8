import sympy

from cubic_manin.moebius import moebius_polynomial_direct, moebius_polynomial_reduced


def expected():
    x = sympy.symbols("x")
    poly = sympy.Poly(sympy.expand((1 - x) ** 7 * (1 + 7 * x + x**2)), x)
    return [int(c) for c in reversed(poly.all_coeffs())]


def test_reduced_matches_expansion():
    got = moebius_polynomial_reduced()
    assert got == expected()
    assert got[0] == 1


def test_reduced_vanishes_to_order_seven_at_one():
    x = sympy.symbols("x")
    p = sum(c * x**k for k, c in enumerate(moebius_polynomial_reduced()))
    for k in range(7):
        assert sympy.diff(p, x, k).subs(x, 1) == 0
    assert sympy.diff(p, x, 7).subs(x, 1) != 0


def test_direct_matches_reduced():
    got = moebius_polynomial_direct()
    assert got == moebius_polynomial_reduced() == expected()
    assert got[0] == 1
    assert sum(abs(c) for c in got) <= 2**27
