"""Admissible bases, omega images, oracle products, presentation audit."""

import itertools
from collections import Counter

import pytest

from eqcohom.coeff import BiDegree, ONE, RHO, TAU
from eqcohom.grading import module_iso_check, sphere_product_module
from eqcohom.projective import ProjMonomial, TensorElement, tensor_mul
from eqcohom.rotation import (
    RotElement,
    admissible_sequences,
    check_presentation,
    exponent_bound,
    omega_factors,
    omega_star,
    sequence_degree,
    so_generators,
    so_mul,
)

SO52_DEGREES = [
    (0, 0), (1, 1), (2, 1), (3, 2), (3, 2), (4, 2), (4, 3), (5, 3),
    (5, 3), (6, 3), (6, 4), (7, 4), (7, 4), (8, 5), (9, 5), (10, 6),
]


def test_admissible_sequences_small():
    assert admissible_sequences(2) == [(), (1,)]
    assert admissible_sequences(3) == [(), (1,), (2,), (2, 1)]
    assert len(admissible_sequences(4)) == 8
    for p in range(2, 11):
        assert len(admissible_sequences(p)) == 1 << (p - 1)


def test_admissible_sequences_rejects_small_p():
    for bad in (1, 0, -3):
        with pytest.raises(ValueError):
            admissible_sequences(bad)


def test_so_generators_examples():
    got = sorted(d for d in so_generators(4).degrees())
    assert got == sorted(
        [(0, 0), (1, 1), (2, 1), (3, 2), (3, 2), (4, 3), (5, 3), (6, 4)]
    )
    assert sorted(so_generators(5).degrees()) == sorted(BiDegree(*d) for d in SO52_DEGREES)
    assert sorted(so_generators(2).degrees()) == [(0, 0), (1, 1)]


def test_exponent_bound():
    assert exponent_bound(2, 5) == 4
    assert exponent_bound(3, 4) == 2
    assert exponent_bound(3, 7) == 4
    assert exponent_bound(2, 4) == 2
    with pytest.raises(ValueError):
        exponent_bound(1, 4)
    with pytest.raises(ValueError):
        exponent_bound(4, 4)


def test_omega_factors():
    assert omega_factors(4) == (3, 2, 1)
    assert omega_factors(2) == (1,)


def _gen_image(p, position, mono):
    return TensorElement.generator(omega_factors(p), position, mono)


def test_omega_star_generators_p4():
    p = 4
    b1 = omega_star(p, RotElement.generator(p, 1))
    expected = (
        _gen_image(p, 0, ProjMonomial(1, 0))
        + _gen_image(p, 1, ProjMonomial(1, 0))
        + _gen_image(p, 2, ProjMonomial(1, 0))
    )
    assert b1 == expected
    b3 = omega_star(p, RotElement.generator(p, 3))
    assert b3 == _gen_image(p, 0, ProjMonomial(1, 1))
    b2 = omega_star(p, RotElement.generator(p, 2))
    assert b2 == _gen_image(p, 0, ProjMonomial(0, 1)) + _gen_image(p, 1, ProjMonomial(0, 1))


def test_omega_star_generator_p5():
    p = 5
    b4 = omega_star(p, RotElement.generator(p, 4))
    assert b4 == _gen_image(p, 0, ProjMonomial(0, 2))


def test_omega_star_is_linear():
    p = 4
    x = RotElement.generator(p, 1).scale(RHO) + RotElement.generator(p, 2).scale(TAU)
    assert omega_star(p, x) == omega_star(p, RotElement.generator(p, 1)).scale(RHO) + omega_star(
        p, RotElement.generator(p, 2)
    ).scale(TAU)


def test_so_mul_pinned_products():
    five = 5
    b1, b2, b3 = (RotElement.generator(five, i) for i in (1, 2, 3))
    assert so_mul(five, b2, b2) == RotElement.generator(five, 4)
    assert so_mul(five, b1, b1) == b1.scale(RHO) + b2.scale(TAU)
    assert so_mul(five, b2, b3) == RotElement.basis_class(five, (3, 2))
    four = 4
    b3_four = RotElement.generator(four, 3)
    assert not so_mul(four, b3_four, b3_four)


def test_so_mul_unit_and_linearity():
    p = 5
    unit = RotElement.unit(p)
    x = RotElement.basis_class(p, (3, 1)).scale(TAU) + RotElement.generator(p, 2)
    assert so_mul(p, unit, x) == x
    assert so_mul(p, x, unit) == x
    y = RotElement.generator(p, 1)
    z = RotElement.generator(p, 3)
    assert so_mul(p, x + y, z) == so_mul(p, x, z) + so_mul(p, y, z)


def test_so_mul_p_mismatch():
    with pytest.raises(ValueError):
        so_mul(4, RotElement.unit(4), RotElement.unit(5))


def test_so_mul_commutative_associative_small():
    for p in (2, 3, 4):
        basis = [RotElement.basis_class(p, s) for s in admissible_sequences(p)]
        for x, y in itertools.combinations_with_replacement(basis, 2):
            assert so_mul(p, x, y) == so_mul(p, y, x)
        for x, y, z in itertools.product(basis, repeat=3):
            assert so_mul(p, so_mul(p, x, y), z) == so_mul(p, x, so_mul(p, y, z))


def test_module_structure_matches_sphere_product():
    for p in range(2, 13):
        spheres = sphere_product_module([(k, (k + 1) // 2) for k in range(1, p)])
        assert module_iso_check(so_generators(p), spheres)


def test_generator_multiset_complement_symmetry():
    for p in range(2, 9):
        degs = Counter(so_generators(p).degrees())
        total = sequence_degree(tuple(range(p - 1, 0, -1)))
        assert degs == Counter({total - d: c for d, c in degs.items()})


def test_check_presentation_matches_through_p5():
    for p in (2, 3, 4, 5):
        report = check_presentation(p)
        assert report.all_match, report.to_text()


def test_check_presentation_p4_p5_rows():
    report = check_presentation(4)
    rows = {row.relation: row for row in report.rows}
    assert rows["B1^2"].computed == RotElement.generator(4, 1).scale(RHO) + RotElement.generator(
        4, 2
    ).scale(TAU)
    assert not rows["B2^2"].computed
    assert not rows["B3^2"].computed
    report5 = check_presentation(5)
    rows5 = {row.relation: row for row in report5.rows}
    assert rows5["B2^2"].computed == RotElement.generator(5, 4)
    assert not rows5["B2^4"].computed
    assert not rows5["B3^2"].computed


def test_check_presentation_p6_reports_oracle_square():
    report = check_presentation(6)
    assert not report.all_match
    rows = {row.relation: row for row in report.rows}
    row = rows["B3^2"]
    assert not row.match
    assert row.computed == RotElement.generator(6, 5).scale(RHO)
    others = [r for r in report.rows if r.relation != "B3^2"]
    assert all(r.match for r in others)


def test_check_presentation_p7_reports_oracle_square():
    report = check_presentation(7)
    rows = {row.relation: row for row in report.rows}
    row = rows["B3^2"]
    assert not row.match
    assert row.computed == RotElement.generator(7, 5).scale(RHO) + RotElement.generator(
        7, 6
    ).scale(TAU)
    # every reported value stays omega-consistent
    for r in report.rows:
        base, _, exponent = r.relation.partition("^")
        image = omega_star(7, RotElement.generator(7, int(base[1:])))
        power = image
        for _ in range(int(exponent) - 1):
            power = tensor_mul(power, image)
        assert omega_star(7, r.computed) == power


def test_check_presentation_respects_maximum():
    with pytest.raises(ValueError):
        check_presentation(9)
    report = check_presentation(9, max_p=9)
    assert report.p == 9


def test_presentation_report_json():
    obj = check_presentation(4).to_json_obj()
    assert obj["p"] == 4
    assert obj["all_match"] is True
    assert {row["relation"] for row in obj["relations"]} >= {"B1^2", "B2^2", "B3^2"}


def test_rot_element_strings():
    p = 5
    x = RotElement.basis_class(p, (3, 2)).scale(TAU) + RotElement.generator(p, 1)
    assert str(x) == "B[1] + t*B[3,2]"
    assert str(RotElement.unit(p)) == "B[0]"
    assert str(RotElement(p, {})) == "0"


def test_basis_class_validation():
    with pytest.raises(ValueError):
        RotElement.basis_class(4, (4,))
    with pytest.raises(ValueError):
        RotElement.basis_class(4, (2, 2))
    assert RotElement.basis_class(4, (1, 3)) == RotElement.basis_class(4, (3, 1))
