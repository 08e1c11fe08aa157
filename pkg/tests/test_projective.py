"""Truncated projective algebras, tensor products, linear expansion."""

import itertools
import math

import pytest

from eqcohom.coeff import BiDegree, ONE, RHO, TAU, ZERO, coeff_of, monomial_at
from eqcohom.projective import (
    INFINITE,
    ProjElement,
    ProjMonomial,
    TensorElement,
    expand_in_basis,
    rp_basis,
    rp_mul,
    tensor_mul,
)
from eqcohom.rotation import RotElement, admissible_sequences, omega_star


def test_rp_basis_small():
    assert [m.degree for m in rp_basis(3)] == [(0, 0), (1, 1), (2, 1), (3, 2)]
    assert [m for m in rp_basis(1)] == [ProjMonomial(0, 0), ProjMonomial(1, 0)]
    # independent enumeration of eps + 2j <= 4
    expected = sorted(
        ProjMonomial(eps, j)
        for eps in (0, 1)
        for j in range(3)
        if eps + 2 * j <= 4
    )
    assert sorted(rp_basis(4)) == expected
    assert [m.degree for m in rp_basis(4)] == [(0, 0), (1, 1), (2, 1), (3, 2), (4, 2)]


def test_rp_basis_counts():
    for n in range(1, 9):
        assert len(rp_basis(n)) == n + 1
        assert sorted(m.degree for m in rp_basis(n)) == sorted(
            BiDegree(k, (k + 1) // 2) for k in range(n + 1)
        )


def test_rp_basis_infinite_iterates():
    it = rp_basis(INFINITE)
    first = [next(it) for _ in range(5)]
    assert [m.degree for m in first] == [(0, 0), (1, 1), (2, 1), (3, 2), (4, 2)]


def test_rp_basis_rejects_bad_ambient():
    for bad in (0, -1, 1.5, "3"):
        with pytest.raises(ValueError):
            rp_basis(bad)


def test_rp_mul_square_of_a():
    a = ProjElement.gen_a(3)
    b = ProjElement.gen_b(3)
    assert rp_mul(3, a, a) == a.scale(RHO) + b.scale(TAU)
    a1 = ProjElement.gen_a(1)
    assert rp_mul(1, a1, a1) == a1.scale(RHO)
    ainf = ProjElement.gen_a(INFINITE)
    binf = ProjElement.gen_b(INFINITE)
    assert rp_mul(INFINITE, ainf, ainf) == ainf.scale(RHO) + binf.scale(TAU)


def test_rp_mul_truncation():
    b = ProjElement.gen_b(3)
    assert not rp_mul(3, b, b)
    a4 = ProjElement.gen_a(4)
    b4 = ProjElement.gen_b(4)
    ab = rp_mul(4, a4, b4)
    assert not rp_mul(4, ab, b4)
    binf = ProjElement.gen_b(INFINITE)
    assert rp_mul(INFINITE, binf, binf) == ProjElement.monomial(INFINITE, ProjMonomial(0, 2))


def test_rp_mul_ambient_mismatch():
    with pytest.raises(ValueError):
        rp_mul(3, ProjElement.gen_a(3), ProjElement.gen_a(4))


def test_rp_mul_commutative_associative_exhaustive():
    for n in range(1, 7):
        basis = [ProjElement.monomial(n, m) for m in rp_basis(n)]
        for x, y in itertools.combinations_with_replacement(basis, 2):
            assert rp_mul(n, x, y) == rp_mul(n, y, x)
        for x, y, z in itertools.product(basis, repeat=3):
            assert rp_mul(n, rp_mul(n, x, y), z) == rp_mul(n, x, rp_mul(n, y, z))


def test_truncation_compatible_with_infinite():
    for n in range(1, 7):
        basis = rp_basis(n)
        for m1, m2 in itertools.combinations_with_replacement(basis, 2):
            finite = rp_mul(n, ProjElement.monomial(n, m1), ProjElement.monomial(n, m2))
            infinite = rp_mul(
                INFINITE,
                ProjElement.monomial(INFINITE, m1),
                ProjElement.monomial(INFINITE, m2),
            )
            assert infinite.truncate(n) == finite


def test_proj_element_validates_ambient():
    with pytest.raises(ValueError):
        ProjElement(3, {ProjMonomial(0, 2): ONE})
    with pytest.raises(ValueError):
        ProjElement.gen_b(1)


def test_tensor_mul_first_factor_square():
    factors = (3, 2)
    a3 = TensorElement.generator(factors, 0, ProjMonomial(1, 0))
    b3 = TensorElement.generator(factors, 0, ProjMonomial(0, 1))
    assert tensor_mul(a3, a3) == a3.scale(RHO) + b3.scale(TAU)


def test_tensor_mul_disjoint_factors():
    factors = (3, 2)
    a3 = TensorElement.generator(factors, 0, ProjMonomial(1, 0))
    a2 = TensorElement.generator(factors, 1, ProjMonomial(1, 0))
    product = tensor_mul(a3, a2)
    assert product == TensorElement.monomial(
        factors, (ProjMonomial(1, 0), ProjMonomial(1, 0))
    )


def test_tensor_mul_truncates():
    factors = (3, 2)
    b3 = TensorElement.generator(factors, 0, ProjMonomial(0, 1))
    assert not tensor_mul(b3, b3)


def test_tensor_mul_factor_mismatch():
    x = TensorElement.unit((3, 2))
    y = TensorElement.unit((3, 1))
    with pytest.raises(ValueError):
        tensor_mul(x, y)


def test_tensor_mul_general_coefficients():
    # the bottom-cone path exercises the slow lane
    factors = (2,)
    a = TensorElement.generator(factors, 0, ProjMonomial(1, 0))
    theta_like = a.scale(coeff_of(monomial_at((0, -2))))
    product = tensor_mul(theta_like, a)
    # a^2 = rho a + tau b, and theta * rho = theta * tau = 0 in degree reach
    assert not product
    mixed = a.scale(RHO + TAU)
    assert tensor_mul(mixed, TensorElement.unit(factors)) == mixed


def _so42_images():
    p = 4
    seqs = admissible_sequences(p)
    return p, seqs, [omega_star(p, RotElement.basis_class(p, s)) for s in seqs]


def test_expand_in_basis_b1_squared():
    p, seqs, images = _so42_images()
    factors = images[0].factors
    b1 = images[seqs.index((1,))]
    target = tensor_mul(b1, b1)
    coords = expand_in_basis(factors, images, target)
    assert coords is not None
    expected = {(1,): RHO, (2,): TAU}
    for seq, coord in zip(seqs, coords):
        assert coord == expected.get(seq, ZERO), seq


def test_expand_in_basis_identity_and_zero():
    p, seqs, images = _so42_images()
    factors = images[0].factors
    b2 = images[seqs.index((2,))]
    coords = expand_in_basis(factors, images, b2)
    for seq, coord in zip(seqs, coords):
        assert coord == (ONE if seq == (2,) else ZERO)
    square = tensor_mul(b2, b2)
    assert not square
    coords = expand_in_basis(factors, images, square)
    assert coords == [ZERO] * len(images)


def test_expand_in_basis_not_in_span():
    p, seqs, images = _so42_images()
    factors = images[0].factors
    # a3 alone is not the image of anything: at (1,1) the only image is a1+a2+a3
    lone = TensorElement.generator(factors, 0, ProjMonomial(1, 0))
    assert expand_in_basis(factors, images, lone) is None


def test_expand_in_basis_recombines():
    p, seqs, images = _so42_images()
    factors = images[0].factors
    for i, j in itertools.combinations_with_replacement(range(len(seqs)), 2):
        target = tensor_mul(images[i], images[j])
        coords = expand_in_basis(factors, images, target)
        assert coords is not None
        recombined = TensorElement(factors, {})
        for coord, image in zip(coords, images):
            recombined = recombined + image.scale(coord)
        assert recombined == target


def test_expand_in_basis_rejects_inhomogeneous():
    p, seqs, images = _so42_images()
    factors = images[0].factors
    mixed = images[seqs.index((1,))] + images[seqs.index((2,))]
    with pytest.raises(ValueError):
        expand_in_basis(factors, images, mixed)
