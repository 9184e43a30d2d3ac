"""Fixed-point restriction, Euler classes, and the residue pairing with its
normalization and nondegeneracy properties."""

from fractions import Fraction

import pytest

from moment_strata import (GradedPolynomial, NotCoprimeStable,
                           WeylSymmetryRequired, kernel_by_pairing,
                           line_product_model, projective_space_model,
                           quotient_top_degree, raw_residue_sum,
                           residue_pairing, restrict_to_component,
                           weighted_model)
from moment_strata.residues import (component_variables, euler_class,
                                    fixed_components)

from conftest import pn_model


def parse(variables, text):
    return GradedPolynomial.parse(variables, text)


def test_fixed_components_of_p3_are_the_four_points():
    m = pn_model(3)
    comps = fixed_components(m)
    assert [c.values[0] for c in comps] == [Fraction(-3), Fraction(-1),
                                           Fraction(1), Fraction(3)]
    assert all(c.sizes == (1,) for c in comps)
    assert [c.mu for c in comps] == [Fraction(-3), Fraction(-1),
                                    Fraction(1), Fraction(3)]


def test_fixed_components_of_line_products():
    m = line_product_model(2)
    comps = fixed_components(m)
    assert len(comps) == 4
    assert sorted(c.mu for c in comps) == [Fraction(-2), Fraction(0),
                                          Fraction(0), Fraction(2)]


def test_fixed_components_need_rank_one():
    with pytest.raises(ValueError):
        fixed_components(weighted_model(2, [[[1, 0], [0, 1]]]))


def test_restriction_to_point_components():
    m = pn_model(3)
    z = parse(("z", "a"), "z")
    hvars = component_variables(m)
    for comp in fixed_components(m):
        image = restrict_to_component(m, z, comp)
        # z restricts to -v*a on the point with weight v
        expected = GradedPolynomial.var(hvars, "a").scale(-comp.values[0])
        assert image == expected


def test_restriction_is_a_ring_map():
    m = line_product_model(3)
    v = ("z1", "z2", "z3", "a")
    f = parse(v, "z1*z2 + a^2")
    g = parse(v, "z3 - a")
    for comp in fixed_components(m):
        rf = restrict_to_component(m, f, comp)
        rg = restrict_to_component(m, g, comp)
        rfg = restrict_to_component(m, f * g, comp)
        assert rf * rg == rfg


def test_euler_class_of_extreme_point():
    m = pn_model(3)
    comps = fixed_components(m)
    top = comps[-1]
    assert top.values[0] == 3
    e = euler_class(m, top)
    hvars = component_variables(m)
    # normal weights at the top point: (1-3), (-1-3), (-3-3) times a
    assert e == parse(hvars, "-48*a^3")


def test_pairing_values_on_three_lines():
    m = line_product_model(3)
    v = ("z1", "z2", "z3", "a")
    one = parse(v, "1")
    z1z2 = parse(v, "z1*z2")
    assert residue_pairing(m, z1z2, one, "torus") == Fraction(1, 2)
    assert raw_residue_sum(m, z1z2, one, "torus") == Fraction(-1, 4)
    assert residue_pairing(m, one, one, "sl2") == Fraction(1)
    assert raw_residue_sum(m, one, one, "sl2") == Fraction(1)


def test_pairing_normalization_is_constant():
    m = line_product_model(3)
    v = ("z1", "z2", "z3", "a")
    for text_a, text_b in (("z1*z2", "1"), ("z1", "z2"), ("z1*z3", "1")):
        eta, zeta = parse(v, text_a), parse(v, text_b)
        raw = raw_residue_sum(m, eta, zeta, "torus")
        assert residue_pairing(m, eta, zeta, "torus") == raw * Fraction(-2)


def test_pairing_is_symmetric_and_bilinear():
    m = pn_model(3)
    v = ("z", "a")
    z = parse(v, "z")
    za = parse(v, "a")
    assert residue_pairing(m, z, za, "torus") == residue_pairing(m, za, z, "torus")
    lhs = residue_pairing(m, z.scale(3) + za, z, "torus")
    rhs = (residue_pairing(m, z, z, "torus") * 3
           + residue_pairing(m, za, z, "torus"))
    assert lhs == rhs


def test_pairing_vanishes_off_the_top_degree():
    m = pn_model(3)
    v = ("z", "a")
    top = quotient_top_degree(m, "torus")
    assert top == 4
    # degree 2 against degree 0 lands below the fundamental class
    assert residue_pairing(m, parse(v, "z"), parse(v, "1"), "torus") == 0
    # degree sum 8 exceeds it
    assert residue_pairing(m, parse(v, "z^2"), parse(v, "z^2"), "torus") == 0


def test_pairing_requires_coprime_stability():
    m = line_product_model(4)
    v = ("z1", "z2", "z3", "z4", "a")
    with pytest.raises(NotCoprimeStable) as exc:
        residue_pairing(m, parse(v, "1"), parse(v, "1"), "torus")
    assert exc.value.witness["profile"] is not None


def test_sl2_pairing_requires_symmetric_weights():
    m = projective_space_model([2, 1, -1])
    with pytest.raises(WeylSymmetryRequired):
        residue_pairing(m, parse(("z", "a"), "1"), parse(("z", "a"), "1"), "sl2")


def test_pairing_rank_equals_betti_numbers_on_p3():
    m = pn_model(3)
    v = ("z", "a")
    # torus quotient has Poincare polynomial 1 + 2t^2 + t^4
    expected = {0: 1, 2: 2, 4: 1}
    for d, b in expected.items():
        res = kernel_by_pairing(m, v, d, "torus")
        assert res.rank == b
        assert len(res.kernel) == len(res.basis) - res.rank


def test_pairing_kernel_elements_pair_to_zero():
    m = pn_model(3)
    res = kernel_by_pairing(m, ("z", "a"), 2, "torus")
    top = quotient_top_degree(m, "torus")
    for k in res.kernel:
        for comp_basis in res.complementary_basis:
            assert residue_pairing(m, k, comp_basis, "torus") == 0
