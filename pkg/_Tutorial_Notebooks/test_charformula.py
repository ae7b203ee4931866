"""
Tests for the character engine: Weyl dimensions, degrees, Kac and Verma
characters, and simple characters of bounded modules checked against the
sup formula and the lab.
"""

import sys
import os
from fractions import Fraction

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from SuperWeight import charformula, lab, rootdata, suites, weights
from SuperWeight.errors import (ConventionWarning, NotALieAlgebra, NotDominant,
                                SingularIntegralUnsupported)
from SuperWeight.rootdata import Weight


# (component, z) pairs of generic sl(3) weights: no root pairs integrally with lambda + rho
GENERIC_SL3 = [
    (('1/6', '-1/6'), 0),
    (('1/4', '-1/4'), '1/5'),
    (('2/5', '-2/5'), '1/7'),
    (('-1/3', '1/3'), '1/11'),
    (('3/10', '-3/10'), '2/9'),
]


def _sl3_spec(component, t):
    sl3 = rootdata.build_superalgebra('SL', 3, 0)
    par = rootdata.build_parabolic(sl3, ('6', '6', '3'))
    t = Fraction(t)
    z = Weight([t, t, -2 * t])
    lam = par.compose([Weight(component)], z)
    return weights.BoundedModuleSpec(par, (component,), z, lam)


def test_weyl_dimension():
    assert charformula.weyl_dimension('A', (1, 0, -1)) == 8
    assert charformula.weyl_dimension('A', (2, 0)) == 3
    assert charformula.weyl_dimension('C', (1,)) == 2
    assert charformula.weyl_dimension('C', (1, 0)) == 4
    assert charformula.weyl_dimension('C', (1, 1)) == 5
    assert charformula.weyl_dimension('D', (0, 0)) == 1
    assert charformula.weyl_dimension('D', (1, 0)) == 4
    with pytest.raises(NotDominant):
        charformula.weyl_dimension('A', (0, 1))


def test_freudenthal_matches_weyl_dimension():
    for block_type, lam in (('A', (1, 0, -1)), ('A', (2, 0)), ('A', (2, 1, 0)), ('A', (3, 1, 0)),
                            ('C', (1,)), ('C', (1, 0)), ('C', (1, 1)), ('D', (1, 0))):
        character = lab.freudenthal_character(block_type, lam)
        assert sum(character.values()) == charformula.weyl_dimension(block_type, lam)
    assert lab.freudenthal_multiplicity('A', (1, 0, -1), (0, 0, 0)) == 2


def test_degree_of_components():
    assert charformula.degree_d(Weight(['1/6', '-1/6']), 'A') == 1
    assert charformula.degree_d(Weight(['2/9', '8/9', '-10/9']), 'A') == 3
    assert charformula.degree_d(Weight(['1/2']), 'C') == 1
    assert charformula.degree_d(Weight([-1, 1]), 'A') == 1
    assert charformula.degree_d(Weight([-1, 1, 0]), 'A') == 1


def test_degree_of_singular_component():
    with pytest.warns(ConventionWarning):
        assert charformula.degree_d(Weight(['-1/2', '1/2']), 'A') == 1
    with pytest.raises(SingularIntegralUnsupported):
        charformula.degree_d(Weight(['-1/2', '1/2']), 'A', singular='raise')


def test_kac_character_gl11():
    """K(a, b) has the weights (a, b) and (a - 1, b + 1), each once."""
    gl11 = rootdata.build_superalgebra('GL', 1, 1)
    r_char = {Weight(['1/2', 2]): 1}
    assert charformula.kac_character_multiplicity(gl11, r_char, Weight(['1/2', 2])) == 1
    assert charformula.kac_character_multiplicity(gl11, r_char, Weight(['-1/2', 3])) == 1
    assert charformula.kac_character_multiplicity(gl11, r_char, Weight(['-3/2', 4])) == 0


def test_verma_multiplicity_sl3():
    """alpha_1 + alpha_2 has two Kostant partitions."""
    sl3 = rootdata.build_superalgebra('SL', 3, 0)
    basis = rootdata.standard_basis(sl3)
    zero = Weight([0, 0, 0])
    assert charformula.verma_multiplicity(sl3, basis, zero, zero) == 1
    assert charformula.verma_multiplicity(sl3, basis, zero, Weight([-1, 0, 1])) == 2
    assert charformula.verma_multiplicity(sl3, basis, zero, Weight([1, 0, -1])) == 0


@pytest.mark.parametrize('component, t', GENERIC_SL3)
def test_generic_sl3_character(component, t):
    """For generic lambda the character is U(u^-) (x) S: L + 1 weights at level -3L."""
    spec = _sl3_spec(component, t)
    sl3 = spec.system
    assert charformula.degree(spec) == ([1], 1)
    character = charformula.simple_character(spec)
    alpha1 = Weight([1, -1, 0])
    down = Weight([0, -1, 1])
    for k in (-2, 0, 3):
        for L in (-1, 0, 1, 2, 3):
            eta = sl3.canonical(spec.sigma + alpha1 * k + down * L)
            expected = L + 1 if L >= 0 else 0
            assert character.multiplicity(eta) == expected
            if L >= 0:
                assert charformula.mathieu_sup_oracle(spec, eta, 10) == expected


def test_generic_sl3_degree_against_lab():
    spec = _sl3_spec(('1/4', '-1/4'), '1/5')
    alg = lab.lab_algebra('sl(3)')
    module = lab.simple_highest_weight_module(alg, spec.highest, 6)
    coset = rootdata.LatticeBasis([(1, -1, 0)], 3)
    assert lab.coset_degree(module, spec.highest, coset) == charformula.degree(spec)[1]


def test_coefficient_table_of_generic_weight():
    spec = _sl3_spec(('1/6', '-1/6'), 0)
    character = charformula.simple_character(spec)
    assert charformula.coefficient_table(character, 6) == [(spec.highest, 1)]


# (component, z, dim L^eta at levels 0..4); row two has an integral block
# component, rows three and four are linked through eps_1 - eps_3 and eps_2 - eps_3
SUP_GRID = [
    (('1/4', '-1/4'), '1/5', [1, 2, 3, 4, 5]),
    (('-1', '1'), '1/5', [1, 2, 3, 4, 5]),
    (('1/6', '-1/6'), '-1/18', [1, 2, 2, 2, 2]),
    (('1/6', '-1/6'), '1/18', [1, 1, 1, 1, 1]),
]


@pytest.mark.parametrize('component, t, by_level', SUP_GRID)
def test_simple_multiplicity_against_lab_sup(component, t, by_level):
    spec = _sl3_spec(component, t)
    sl3 = spec.system
    module = lab.simple_highest_weight_module(lab.lab_algebra('sl(3)'), spec.highest, 8)
    character = charformula.simple_character(spec)
    alpha1 = Weight([1, -1, 0])
    down = Weight([0, -1, 1])
    for L, expected in enumerate(by_level):
        for k in range(-4, 6):
            eta = sl3.canonical(spec.sigma + alpha1 * k + down * L)
            assert charformula.simple_multiplicity(character, eta) == expected
            assert charformula.mathieu_sup_oracle(spec, eta, 8, source='lab', lab_module=module) == expected


def test_linked_weight_has_a_second_coefficient():
    spec = _sl3_spec(('1/6', '-1/6'), '-1/18')
    assert spec.highest == Weight(['1/9', '-2/9', '1/9'])
    character = charformula.simple_character(spec)
    assert charformula.coefficient_table(character, 6) == [
        (spec.highest, 1), (spec.highest - Weight([2, 0, -2]), -1)]


@pytest.mark.parametrize('component, d', [
    ((-1, 2, -1), 2),
    ((0, 2, -2), 4),
])
def test_regular_integral_degree_against_lab(component, d):
    """mu[1] for mu = (1, 0, -1) and (1, 1, -2): the whole of sl(3) is one block."""
    assert charformula.degree_d(Weight(component), 'A') == d
    alg = lab.lab_algebra('sl(3)')
    module = lab.simple_highest_weight_module(alg, Weight(component), 8)
    roots = rootdata.LatticeBasis([(1, -1, 0), (0, 1, -1)], 3)
    assert lab.coset_degree(module, Weight(component), roots) == d


def test_sup_formula_needs_lie_algebra():
    gl21 = rootdata.build_superalgebra('GL', 2, 1)
    par = rootdata.build_parabolic(gl21, rootdata.parabolic_from_blocks(gl21, eps_sizes=(2,), delta_sizes=(1,)))
    lam = gl21.parse_weight('1/6,-1/6|0')
    spec = weights.BoundedModuleSpec(par, (('1/6', '-1/6'),), Weight([0, 0, 0]), lam)
    with pytest.raises(NotALieAlgebra):
        charformula.mathieu_sup_oracle(spec, lam, 4)


def test_w_typical_simple_is_kac():
    w2 = rootdata.build_superalgebra('W', 2)
    lam = Weight(['1/2', '1/3'])
    for eta in (lam, lam - Weight([1, 0]), lam - Weight([1, 1]), lam - Weight([2, 1])):
        assert charformula.w_simple_multiplicity(w2, lam, eta) == charformula.w_kac_multiplicity(w2, lam, eta)


@pytest.mark.parametrize('lam, expected', [
    ((0, 2), {(0, 2): 1, (-1, 3): 1, (-1, 2): 1, (-2, 3): 1, (0, 1): 0, (0, 0): 0, (-1, 1): 0, (-2, 1): 0}),
    ((0, 1), {(0, 1): 1, (-1, 1): 1, (-2, 2): 1, (0, 0): 0, (-1, 0): 0}),
])
def test_w2_characters_at_second_index(lam, expected):
    """L(a eps_2) has the weights (-m, a + m) and (-1 - m, a + m), each once."""
    w2 = rootdata.build_superalgebra('W', 2)
    for eta, dim in expected.items():
        assert charformula.w_simple_multiplicity(w2, Weight(lam), Weight(eta)) == dim


def test_w2_characters_against_lab():
    report = suites.run_suite('w2-check', depth=4, seed=0)
    assert report['cases'] == 10
    assert report['failures'] == []


def test_sup_formula_against_lab():
    report = suites.run_suite('mathieu-sup', depth=5, seed=0)
    assert report['failures'] == []


def test_kostant_count_over_gl2_parabolic():
    """u^- of the gl(2)-block parabolic of sl(3) is spanned by e3 - e1 and e3 - e2."""
    sl3 = rootdata.build_superalgebra('SL', 3, 0)
    par = rootdata.build_parabolic(sl3, ('6', '6', '3'))
    assert charformula.kostant_dim(par, Weight([0, 0, 0])) == 1
    assert charformula.kostant_dim(par, Weight([-1, 0, 1])) == 1
    assert charformula.kostant_dim(par, Weight([-1, -1, 2])) == 1
    assert charformula.kostant_dim(par, Weight([1, -1, 0])) == 0


def test_induced_multiplicity():
    sl3 = rootdata.build_superalgebra('SL', 3, 0)
    par = rootdata.build_parabolic(sl3, ('6', '6', '3'))
    base = sl3.parse_weight('1/6,-1/6,0')
    induced = charformula.InducedCharacter(charformula.CosetCharacter(base, par.q_a, 3), par)
    assert charformula.induced_multiplicity(induced, base) == 3
    assert charformula.induced_multiplicity(induced, base + Weight([-1, 0, 1])) == 6
    assert charformula.induced_multiplicity(induced, base + Weight([1, 0, -1])) == 0
