"""
Tests for weight predicates: typicality, singularity, block normal forms
and bounded module specs.
"""

import sys
import os
import random

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from SuperWeight import rootdata, weights
from SuperWeight.errors import InvalidParameters, NotBounded, NotRegularIntegral
from SuperWeight.rootdata import Weight


def test_gl11_typicality():
    """a eps_1 + b delta_1 is typical for gl(1|1) exactly when a + b != 0."""
    gl11 = rootdata.build_superalgebra('GL', 1, 1)
    basis = rootdata.standard_basis(gl11)
    rng = random.Random(3)
    for _ in range(50):
        a = rng.randint(-5, 5)
        b = -a if rng.random() < 0.3 else rng.randint(-5, 5)
        typ = weights.is_typical(Weight([a, b]), gl11, basis)
        assert typ.typical == (a + b != 0)
        assert typ.atypical == (not typ.typical)


def test_w2_atypicality_index():
    """5 eps_1 + eps_2 is atypical for W(2) with index 1; a eps_1 + b eps_2 is typical for a != 0, b != 1."""
    w2 = rootdata.build_superalgebra('W', 2)
    basis = rootdata.standard_basis(w2)
    typ = weights.is_typical(Weight([5, 1]), w2, basis)
    assert not typ.typical
    assert typ.witness_i == 1
    assert weights.is_typical(Weight([0, 3]), w2, basis).witness_i == 2
    assert weights.is_typical(Weight([0, 1]), w2, basis).witnesses == (1, 2)
    assert weights.is_typical(Weight([0, 1]), w2, basis).witness_i == 2
    assert weights.is_typical(Weight([2, 0]), w2, basis).typical
    assert weights.is_typical(Weight(['1/2', '1/3']), w2, basis).witness_i is None


def test_singular_sl2():
    """lam + rho is fixed by the reflection exactly when (lam + rho, alpha) = 0."""
    gl2 = rootdata.build_superalgebra('GL', 2, 0)
    basis = rootdata.standard_basis(gl2)
    assert weights.is_singular(Weight([-1, 0]), gl2, basis)
    assert not weights.is_singular(Weight([0, 0]), gl2, basis)
    assert weights.is_singular(Weight([-1, 0]), gl2, basis, method='orbit')
    assert not weights.is_singular(Weight(['1/2', 0]), gl2, basis, method='orbit')


def test_central_character_is_orbit_invariant():
    gl2 = rootdata.build_superalgebra('GL', 2, 0)
    basis = rootdata.standard_basis(gl2)
    a = weights.central_character(Weight([3, 0]), gl2, basis)
    b = weights.central_character(Weight([-1, 4]), gl2, basis)
    assert a == b


def test_normal_forms():
    assert weights.validate_normal_form(Weight(['1/6', '-1/6']), 'A')
    assert not weights.validate_normal_form(Weight([1, -1]), 'A')
    assert weights.validate_normal_form(Weight([-1, 1]), 'A')
    assert not weights.validate_normal_form(Weight(['1/6', '1/6']), 'A')
    assert weights.validate_normal_form(Weight(['1/2']), 'C')
    assert weights.validate_normal_form(Weight(['-1/2']), 'C')
    assert not weights.validate_normal_form(Weight(['-3/2']), 'C')
    assert not weights.validate_normal_form(Weight([1]), 'C')


def test_normal_form_samples_are_valid():
    rng = random.Random(11)
    for block_type, m in (('A', 2), ('A', 3), ('A', 4), ('C', 1), ('C', 2)):
        for _ in range(20):
            assert weights.validate_normal_form(weights.normal_form_sample(block_type, m, rng), block_type)


def test_singular_component_is_a_fixed_reflection():
    rng = random.Random(5)
    for m in (2, 3, 4):
        gl = rootdata.build_superalgebra('GL', m, 0)
        basis = rootdata.standard_basis(gl)
        for _ in range(30):
            comp = weights.normal_form_sample('A', m, rng)
            assert weights.is_singular_component(comp) == weights.is_singular(comp, gl, basis)
    assert weights.is_singular_component(Weight(['-1/2', '1/2']))
    assert weights.is_singular_component(Weight([-2, 1, 0]))
    assert not weights.is_singular_component(Weight([-1, 2, -1]))


def test_partially_finite_and_gamma_injective():
    sl3 = rootdata.build_superalgebra('SL', 3, 0)
    par = rootdata.build_parabolic(sl3, ('6', '6', '3'))
    generic = sl3.parse_weight('1/6,-1/6,0')
    finite = sl3.parse_weight('1,-1,0')
    assert not weights.is_partially_finite(generic, par)
    assert weights.is_gamma_injective(generic, par)
    assert weights.is_partially_finite(finite, par)
    assert not weights.is_gamma_injective(finite, par)


def test_not_bounded_block():
    """A type C component off the half-integers gives no bounded module."""
    assert not weights.is_bounded_component(Weight(['1/3']), 'C')
    osp = rootdata.build_superalgebra('OSP', 2, 2)
    par = rootdata.build_parabolic(osp, (1, 0))
    with pytest.raises(NotBounded):
        weights.is_gamma_injective(Weight([0, '1/3']), par)


def test_bounded_module_spec_validation():
    sl3 = rootdata.build_superalgebra('SL', 3, 0)
    par = rootdata.build_parabolic(sl3, ('6', '6', '3'))
    zero = Weight([0, 0, 0])
    spec = weights.BoundedModuleSpec(par, (('1/6', '-1/6'),), zero, sl3.parse_weight('1/6,-1/6,0'))
    assert spec.highest == sl3.parse_weight('1/6,-1/6,0')
    with pytest.raises(InvalidParameters):
        weights.BoundedModuleSpec(par, ((1, -1),), zero, zero)
    with pytest.raises(InvalidParameters):
        weights.BoundedModuleSpec(par, (('1/6', '-1/6', 0),), zero, zero)
    with pytest.raises(InvalidParameters):
        weights.BoundedModuleSpec(par, (('1/6', '-1/6'),), Weight([1, 0, -1]), zero)


def test_regular_integral_decompose():
    """mu[l] and its inverse on gl(3)."""
    mu = Weight([2, 1, 0])
    for l in (1, 2):
        comp = weights.mu_bracket(mu, l)
        back, pos = weights.regular_integral_decompose(comp)
        assert pos == l
        assert weights.mu_bracket(back, pos) == comp
    assert weights.mu_bracket(mu, 3) is None
    with pytest.raises(NotRegularIntegral):
        weights.regular_integral_decompose(Weight(['-1/2', '1/2']))
    assert weights.regular_integral_decompose(Weight(['1/3', '-1/3'])) is None


def test_block_components():
    sl3 = rootdata.build_superalgebra('SL', 3, 0)
    par = rootdata.build_parabolic(sl3, ('6', '6', '3'))
    lam = par.compose([Weight(['1/4', '-1/4'])], sl3.parse_weight('1/5,1/5,-2/5'))
    assert weights.block_components(lam, par) == [Weight(['1/4', '-1/4'])]
    assert weights.block_components(sl3.parse_weight('1,0,-1'), par) == [Weight(['1/2', '-1/2'])]
