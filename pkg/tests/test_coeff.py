"""Arithmetic in the point ring: dimensions, products, serialization."""

import itertools

import pytest

from eqcohom.coeff import (
    BiDegree,
    CoeffElement,
    ConeMonomial,
    ONE,
    RHO,
    TAU,
    THETA,
    ZERO,
    coeff_of,
    dim_at,
    monomial_at,
    mul_monomials,
    orbit_dim_at,
)


def cone_dim(p, q):
    # independent two-cone oracle, kept separate from the implementation
    if p >= 0 and q >= p:
        return 1
    if p <= 0 and q <= p - 2:
        return 1
    return 0


def test_dim_at_examples():
    assert dim_at((0, -2)) == 1
    assert dim_at((1, -1)) == 0
    assert dim_at((2, 2)) == 1
    assert dim_at((0, 0)) == 1


def test_dim_at_matches_cone_oracle_on_window():
    for p in range(-6, 7):
        for q in range(-8, 9):
            assert dim_at((p, q)) == cone_dim(p, q), (p, q)


def test_labeled_classes():
    assert dim_at((1, 1)) == 1    # rho
    assert dim_at((0, 1)) == 1    # tau
    assert dim_at((1, 2)) == 1    # tau*rho
    assert dim_at((2, 2)) == 1    # rho^2
    assert dim_at((0, -2)) == 1   # theta
    assert dim_at((0, -3)) == 1   # theta/tau
    assert dim_at((-1, -3)) == 1  # theta/rho
    assert monomial_at((1, 1)) == ConeMonomial.top(1, 0)
    assert monomial_at((0, -2)) == ConeMonomial.bot(0, 0)
    assert monomial_at((0, -3)) == ConeMonomial.bot(0, 1)
    assert monomial_at((-1, -3)) == ConeMonomial.bot(1, 0)
    assert monomial_at((1, -1)) is None


def test_monomial_at_agrees_with_dim_at():
    for p in range(-6, 7):
        for q in range(-8, 9):
            m = monomial_at((p, q))
            assert (m is not None) == bool(dim_at((p, q)))
            if m is not None:
                assert m.degree == BiDegree(p, q)


def test_mul_examples():
    assert RHO * TAU == coeff_of(ConeMonomial.top(1, 1))
    theta_over_rho = coeff_of(ConeMonomial.bot(1, 0))
    assert RHO * theta_over_rho == THETA
    assert TAU * THETA == ZERO
    theta_over_tau = coeff_of(ConeMonomial.bot(0, 1))
    assert THETA * theta_over_tau == ZERO


def all_monomials(bound):
    out = []
    for a in range(bound + 1):
        for b in range(bound + 1):
            out.append(ConeMonomial.top(a, b))
            out.append(ConeMonomial.bot(a, b))
    return out


def test_mul_commutative_exhaustive():
    monos = all_monomials(4)
    for x, y in itertools.product(monos, repeat=2):
        assert mul_monomials(x, y) == mul_monomials(y, x)


def test_mul_associative_exhaustive():
    elements = [coeff_of(m) for m in all_monomials(4)]
    for x, y, z in itertools.product(elements, repeat=3):
        assert (x * y) * z == x * (y * z)


def test_unit_is_two_sided():
    for m in all_monomials(4):
        elt = coeff_of(m)
        assert ONE * elt == elt
        assert elt * ONE == elt


def test_product_degree_and_vanishing():
    for x, y in itertools.product(all_monomials(4), repeat=2):
        prod = mul_monomials(x, y)
        total = x.degree + y.degree
        if prod is not None:
            assert prod.degree == total
        if dim_at(total) == 0:
            assert prod is None


def test_divisibility():
    for a in range(5):
        for b in range(5):
            top = coeff_of(ConeMonomial.top(a, b))
            bot = coeff_of(ConeMonomial.bot(a, b))
            assert top * bot == THETA


def test_bottom_cone_products_vanish():
    for x in all_monomials(3):
        for y in all_monomials(3):
            if x.bottom and y.bottom:
                assert mul_monomials(x, y) is None


def test_orbit_dim():
    assert orbit_dim_at((0, 5)) == 1
    assert orbit_dim_at((1, 0)) == 0
    assert orbit_dim_at((0, -3)) == 1


def test_element_addition_is_mod_two():
    assert RHO + RHO == ZERO
    assert (RHO + TAU) + TAU == RHO
    assert CoeffElement([ConeMonomial.top(1, 0), ConeMonomial.top(1, 0)]) == ZERO


def test_degree_of_homogeneous_and_mixed():
    assert RHO.degree() == BiDegree(1, 1)
    assert ZERO.degree() is None
    with pytest.raises(ValueError):
        (RHO + TAU).degree()


def test_monomial_strings():
    assert str(ConeMonomial.top(0, 0)) == "1"
    assert str(ConeMonomial.top(1, 0)) == "r"
    assert str(ConeMonomial.top(2, 3)) == "r^2 t^3"
    assert str(ConeMonomial.top(1, 1)) == "r t"
    assert str(ConeMonomial.bot(0, 0)) == "th"
    assert str(ConeMonomial.bot(0, 1)) == "th/(t)"
    assert str(ConeMonomial.bot(2, 1)) == "th/(r^2 t)"
    assert ConeMonomial.top(2, 1).expr() == "r^2*t"
    assert ConeMonomial.bot(1, 2).expr() == "th/(r*t^2)"


def test_element_string_is_sorted_and_stable():
    elt = TAU + RHO + THETA
    assert str(elt) == "r + t + th"
    assert str(ZERO) == "0"


def test_negative_exponents_rejected():
    with pytest.raises(ValueError):
        ConeMonomial.top(-1, 0)
    with pytest.raises(ValueError):
        ConeMonomial.bot(0, -2)
