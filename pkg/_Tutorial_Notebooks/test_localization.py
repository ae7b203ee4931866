"""
Tests for localization along f = E21 and the twisted modules Psi^c, plus
the lab suites that check submodule correspondences and the Psi series.
"""

import sys
import os
from fractions import Fraction

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from SuperWeight import lab, localization, rootdata, suites
from SuperWeight.errors import InvalidParameters, NotInjective
from SuperWeight.rootdata import Weight


@pytest.fixture
def sl2():
    alg = lab.lab_algebra('sl(2)')
    return alg, alg.index('E21')


def test_binomial_of_rationals():
    assert localization.binomial('1/2', 2) == Fraction(-1, 8)
    assert localization.binomial(5, 2) == 10
    assert localization.binomial(-1, 3) == -1


def test_localized_weights_extend_downwards(sl2):
    alg, f = sl2
    verma = lab.construct_verma(alg, Weight(['1/2', 0]), 6)
    loc = localization.localize(verma, f, extend=3)
    assert all(loc.dim(w) == 1 for w in loc.weights())
    assert Weight(['3/2', -1]) in loc.weights()


def test_twist_simplicity(sl2):
    """Psi^c M(lambda) is simple when neither c nor c - (l1 - l2) is an integer."""
    alg, f = sl2
    verma = lab.construct_verma(alg, Weight(['1/2', 0]), 8)
    assert localization.twist_is_simple(localization.psi(verma, f, '1/3'))
    assert not localization.twist_is_simple(localization.psi(verma, f, '1/2'))


def test_integer_twists_are_conjugation(sl2):
    alg, f = sl2
    loc = localization.localize(lab.construct_verma(alg, Weight(['1/3', 0]), 6), f)
    for n in (-2, -1, 0, 1, 2):
        assert localization.integer_twist_agrees(loc, n)


def test_twists_isomorphic(sl2):
    alg, f = sl2
    loc = localization.localize(lab.construct_verma(alg, Weight(['1/2', 0]), 8), f)
    assert localization.twists_isomorphic(loc, '1/3', '4/3')
    assert not localization.twists_isomorphic(loc, '1/3', '1/2')


def test_localization_needs_injective_f(sl2):
    alg, f = sl2
    simple = lab.simple_highest_weight_module(alg, Weight([2, 0]), 6)
    with pytest.raises(NotInjective):
        localization.localize(simple, f)


def test_localization_needs_even_f():
    gl11 = lab.lab_algebra('gl(1|1)')
    verma = lab.construct_verma(gl11, Weight(['1/2', '1/3']), 2)
    with pytest.raises(InvalidParameters):
        localization.localize(verma, gl11.index('E21'))


@pytest.mark.parametrize('name', ['theta-integer', 'lemma-phi', 'lemma-m1m2', 'series-psi'])
@pytest.mark.parametrize('seed', [0, 1])
def test_sl2_suites(name, seed):
    report = suites.run_suite(name, depth=6, seed=seed)
    assert report['cases'] > 0
    assert report['failures'] == []


def test_twist_commutes_with_invariants():
    report = suites.run_suite('commut-h0', depth=4, seed=0)
    assert report['cases'] == 2
    assert report['failures'] == []


def test_theta_twist_shifts_weights(sl2):
    alg, f = sl2
    loc = localization.localize(lab.construct_verma(alg, Weight(['1/2', 0]), 6), f)
    twisted = localization.theta_twist(loc, '1/3')
    assert twisted.top == Weight(['1/6', '1/3'])
    assert twisted.dim(twisted.top) == 1
    assert len(twisted.weights()) == len(loc.weights())


def test_half_twist_has_a_highest_weight_vector(sl2):
    """E12 kills f^{3/2} v in Psi^{1/2} M(1/2, 0), one step below the twisted top."""
    alg, f = sl2
    verma = lab.construct_verma(alg, Weight(['1/2', 0]), 8)
    twisted = localization.psi(verma, f, '1/2')
    assert twisted.top == Weight([0, '1/2'])
    below = Weight([-1, '3/2'])
    inner = twisted.interior()
    assert below in inner and twisted.top in inner
    e = twisted.action(alg.index('E12'), below)
    assert e.shape == (1, 1) and e[0, 0] == 0
    sub = lab.generated_submodule(twisted, {below: [[1]]})
    assert sub[twisted.top].shape[0] == 0
    assert sub[below].shape[0] == 1


@pytest.fixture
def oscillator():
    """L(1/2, 0, 0) over sl(3): one-dimensional weight spaces, E21 and E31 injective."""
    alg = lab.lab_algebra('sl(3)')
    return alg, lab.simple_highest_weight_module(alg, Weight(['1/2', 0, 0]), 4)


def test_localize_along_commuting_roots(oscillator):
    alg, simple = oscillator
    whole = rootdata.build_parabolic(rootdata.build_superalgebra('SL', 3, 0), ('0', '0', '0'))
    roots = localization.root_vectors(alg, rootdata.find_commuting_basis(whole))
    assert set(roots) == {alg.index('E21'), alg.index('E31')}
    loc = localization.localize(simple, roots, extend=2)
    assert set(loc.roots) == set(roots)
    assert all(loc.dim(w) == 1 for w in loc.weights())
    # reached only by inverting both root vectors
    assert Weight(['5/2', -1, -1]) in loc.weights()


def test_localization_needs_commuting_roots(oscillator):
    alg, simple = oscillator
    with pytest.raises(InvalidParameters):
        localization.localize(simple, (alg.index('E21'), alg.index('E32')))


def test_two_parameter_twist(oscillator):
    alg, simple = oscillator
    roots = (alg.index('E21'), alg.index('E31'))
    twisted = localization.psi(simple, roots, ('1/3', '1/5'), extend=2)
    assert twisted.top == Weight(['-1/30', '1/3', '1/5'])
    for name, coord in (('E11', 0), ('E22', 1), ('E33', 2)):
        act = twisted.action(alg.index(name), twisted.top)
        assert act.shape == (1, 1)
        assert act[0, 0] == twisted.top[coord]
    elements = [alg.index('E12'), alg.index('E21'), alg.index('E23')]
    assert lab.bracket_residual(twisted, elements) == []
    assert localization.integer_twist_agrees(twisted.localized, (1, -1), elements)
    with pytest.raises(InvalidParameters):
        localization.theta_twist(twisted.localized, '1/3')
