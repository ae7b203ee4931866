"""
Tests for multiplicity providers: strong linkage, inversion inside order
ideals, products over a parabolic, tables, and the W(n) s-coefficients.
"""

import sys
import os
import warnings

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from SuperWeight import mult, rootdata, suites
from SuperWeight.errors import (ConventionWarning, InvariantViolation, ProviderGap, ThirdSumUndefined)
from SuperWeight.rootdata import Weight


@pytest.fixture
def gl2():
    sys_ = rootdata.build_superalgebra('GL', 2, 0)
    return sys_, rootdata.standard_basis(sys_)


def test_linkage_row_gl2(gl2):
    """M(3,0) has the composition factors L(3,0) and L(-1,4)."""
    sys_, basis = gl2
    a = mult.linkage_provider(sys_, basis)
    assert a.support(Weight([3, 0])) == {Weight([3, 0]): 1, Weight([-1, 4]): 1}
    assert a.support(Weight(['1/2', 0])) == {Weight(['1/2', 0]): 1}
    assert a.value(Weight([3, 0]), Weight([0, 3])) == 0


def test_inverse_row_gl2(gl2):
    sys_, basis = gl2
    b = mult.invert_provider(mult.linkage_provider(sys_, basis), basis.lattice)
    assert b.support(Weight([3, 0])) == {Weight([3, 0]): 1, Weight([-1, 4]): -1}
    assert b.value(Weight([3, 0]), Weight([-1, 4])) == -1
    assert b.value(Weight([3, 0]), Weight([4, -1])) == 0


def test_inverse_is_inverse_on_ideals(gl2):
    """sum_kappa a(nu, kappa) b(kappa, mu) = delta(nu, mu) over an order ideal."""
    sys_, basis = gl2
    a = mult.linkage_provider(sys_, basis)
    b = mult.invert_provider(a, basis.lattice)
    for top in (Weight([3, 0]), Weight([5, 1]), Weight(['1/3', 0])):
        ideal = mult.OrderIdeal(top, basis.lattice, depth=8)
        elements = ideal.elements()
        for nu in elements:
            for mu in elements:
                total = sum(v * b.value(kappa, mu) for kappa, v in a.support(nu, ideal).items())
                assert total == int(nu == mu)


def test_order_ideal_bounds(gl2):
    sys_, basis = gl2
    ideal = mult.OrderIdeal(Weight([0, 0]), basis.lattice, depth=3)
    assert len(ideal.elements()) == 4
    assert ideal.contains(Weight([-3, 3]))
    assert not ideal.contains(Weight([-4, 4]))
    assert not ideal.contains(Weight([1, -1]))


def test_product_provider_over_parabolic():
    """The gl(2)-block provider of sl(3) in ambient coordinates."""
    sl3 = rootdata.build_superalgebra('SL', 3, 0)
    par = rootdata.build_parabolic(sl3, ('6', '6', '3'))
    product = mult.product_provider(par)
    generic = sl3.parse_weight('1/6,-1/6,0')
    assert product.support(generic) == {generic: 1}
    integral = sl3.parse_weight('1,-1,0')
    assert product.support(integral) == {integral: 1, sl3.parse_weight('-2,2,0'): 1}
    assert product.value(integral, sl3.parse_weight('-2,2,0')) == 1
    assert product.value(integral, sl3.parse_weight('-2,1,1')) == 0


def test_rank_three_linkage_is_a_gap():
    gl4 = rootdata.build_superalgebra('GL', 4, 0)
    a = mult.linkage_provider(gl4, rootdata.standard_basis(gl4))
    with pytest.raises(ProviderGap):
        a.support(Weight([0, 0, 0, 0]))


def test_table_round_trip_and_inversion(gl2, tmp_path):
    sys_, basis = gl2
    entries = {((3, 0), (3, 0)): 1, ((3, 0), (-1, 4)): 1, ((-1, 4), (-1, 4)): 1}
    table = mult.MultiplicityTable(sys_, entries, kind='a')
    path = mult.save_table(table, tmp_path / 'gl2_a.jsonl')
    loaded = mult.load_table(path)
    assert loaded.kind == 'a'
    assert loaded.entries == table.entries

    provider = mult.table_provider(loaded)
    assert provider.support(Weight([3, 0])) == mult.linkage_provider(sys_, basis).support(Weight([3, 0]))
    with pytest.raises(ProviderGap):
        provider.support(Weight([7, 0]))

    inverse = mult.invert_provider(provider, basis.lattice)
    assert inverse.value(Weight([3, 0]), Weight([-1, 4])) == -1


def test_table_validation(gl2):
    sys_, _ = gl2
    with pytest.raises(InvariantViolation):
        mult.MultiplicityTable(sys_, {((3, 0), (-1, 4)): 1})
    with pytest.raises(InvariantViolation):
        mult.MultiplicityTable(sys_, {((3, 0), (3, 0)): 1, ((3, 0), (-1, 4)): -1}, kind='a')
    with pytest.raises(InvariantViolation):
        mult.MultiplicityTable(sys_, {((3, 0), (3, 0)): 1, ((3, 0), (4, -1)): 1}, kind='a')


def test_w_s_terms_nonintegral():
    """For a outside Z_+ the s-coefficients are the alternating string lambda - j eps_i."""
    w2 = rootdata.build_superalgebra('W', 2)
    lam = Weight(['1/2', 1])
    with warnings.catch_warnings():
        warnings.simplefilter('error', ConventionWarning)
        assert mult.w_s_terms(w2, lam, '3/2') == {lam: 1}
        assert mult.w_s_terms(w2, lam, '1/2') == {Weight(['-1/2', 1]): -1}
        assert mult.w_s_terms(w2, lam, '-1/2') == {Weight(['-3/2', 1]): 1}
        assert mult.w_s_terms(w2, lam, 2) == {}


def test_w_s_terms_positive_integral():
    w2 = rootdata.build_superalgebra('W', 2)
    lam = Weight([2, 1])
    with pytest.warns(ConventionWarning):
        assert mult.w_s_coefficient(w2, lam, lam) == 1
    with pytest.warns(ConventionWarning):
        assert mult.w_s_coefficient(w2, lam, Weight([1, 1])) == -1
    with pytest.warns(ConventionWarning):
        assert mult.w_s_coefficient(w2, lam, Weight([0, 0])) == 1
    with pytest.warns(ConventionWarning):
        assert mult.w_s_coefficient(w2, lam, Weight([0, 0]), literal_sign=True) == -1
    with pytest.raises(ThirdSumUndefined):
        mult.w_s_terms(w2, lam, 0, omit_first_block_sum=False)


def test_w_s_terms_second_index():
    """lambda = 2 eps_2: the eps_1 string carries the sign opposite to the -k eps_2 string."""
    w2 = rootdata.build_superalgebra('W', 2)
    lam = Weight([0, 2])
    with warnings.catch_warnings():
        warnings.simplefilter('error', ConventionWarning)
        assert mult.w_s_terms(w2, lam, 2) == {lam: 1}
        assert mult.w_s_terms(w2, lam, 1) == {Weight([0, 1]): -1}
        assert mult.w_s_terms(w2, lam, 0) == {Weight([0, 0]): 1, Weight([-1, 1]): 1}
        assert mult.w_s_terms(w2, lam, -1) == {Weight([0, -1]): -1, Weight([-2, 1]): -1}
        assert mult.w_s_terms(w2, lam, 0, literal_sign=True) == {Weight([0, 0]): -1, Weight([-1, 1]): -1}


def test_w_s_terms_read_eps_n_with_a_one():
    """eps_2 is 1 eps_2, not 0 eps_1 + eps_2; the zero weight keeps a = 0."""
    w2 = rootdata.build_superalgebra('W', 2)
    with warnings.catch_warnings():
        warnings.simplefilter('error', ConventionWarning)
        assert mult.w_s_terms(w2, Weight([0, 1]), 1) == {Weight([0, 1]): 1}
        assert mult.w_s_terms(w2, Weight([0, 1]), 0) == {Weight([0, 0]): -1, Weight([-1, 1]): -1}
        assert mult.w_s_terms(w2, Weight([0, 0]), -1) == {Weight([0, -1]): -1}


def test_serganova_rule_against_lab():
    for seed in (0, 1):
        report = suites.run_suite('serganova-check', depth=5, seed=seed)
        assert report['cases'] == 3
        assert report['failures'] == []


def test_diagonal_and_sl2_providers():
    diagonal = mult.diagonal_provider()
    assert diagonal.support(Weight([3, 0])) == {Weight([3, 0]): 1}
    assert diagonal.value(Weight([3, 0]), Weight([-1, 4])) == 0

    sl2 = mult.sl2_provider()
    assert sl2.support(Weight([3, 0])) == {Weight([3, 0]): 1, Weight([-1, 4]): 1}
    assert sl2.support(Weight(['1/2', 0])) == {Weight(['1/2', 0]): 1}


def test_composing_b_with_a_gives_delta(gl2):
    sys_, basis = gl2
    a = mult.linkage_provider(sys_, basis)
    b = mult.invert_provider(a, basis.lattice)
    assert mult.compose_mblb(b, a, Weight([3, 0]), Weight([3, 0])) == 1
    assert mult.compose_mblb(b, a, Weight([3, 0]), Weight([-1, 4])) == 0
