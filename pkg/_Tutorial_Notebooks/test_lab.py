"""
Tests for the lab: explicit Verma and Kac modules, simple quotients and the
brute-force composition oracle.
"""

import sys
import os
import random

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from SuperWeight import lab, mult, rootdata, suites, weights
from SuperWeight.errors import DepthTooLarge, InvalidParameters
from SuperWeight.rootdata import Weight


def test_lab_catalog():
    assert len(lab.lab_algebra('gl(2)')) == 4
    assert len(lab.lab_algebra('gl(2|1)')) == 9
    assert len(lab.lab_algebra('W(2)')) == 8
    with pytest.raises(InvalidParameters):
        lab.lab_algebra('E(8)')


def test_verma_dimensions():
    sl2 = lab.lab_algebra('sl(2)')
    verma = lab.construct_verma(sl2, Weight(['1/2', 0]), 5)
    assert verma.total_dimension() == 6
    assert all(verma.dim(w) == 1 for w in verma.weights())

    sl3 = lab.lab_algebra('sl(3)')
    verma = lab.construct_verma(sl3, Weight([0, 0, 0]), 3)
    assert verma.total_dimension() == 13
    assert verma.dim(Weight([-1, 0, 1])) == 2


def test_verma_brackets():
    """The truncated Verma modules satisfy the bracket relations wherever they are defined."""
    for name, lam in (('sl(2)', Weight([2, 0])), ('sl(3)', Weight(['1/3', 0, 0])),
                      ('gl(2|1)', Weight(['1/2', 0, 1]))):
        alg = lab.lab_algebra(name)
        assert lab.bracket_residual(lab.construct_verma(alg, lam, 3)) == []


def test_finite_dimensional_quotient():
    """e f^k v = k (l1 - l2 - k + 1) f^(k-1) v, so L(2, 0) is three dimensional."""
    sl2 = lab.lab_algebra('sl(2)')
    simple = lab.simple_highest_weight_module(sl2, Weight([2, 0]), 6)
    assert simple.total_dimension() == 3
    assert simple.dim(Weight([0, 2])) == 1
    assert simple.dim(Weight([-1, 3])) == 0


def test_composition_oracle_matches_linkage():
    sl2 = lab.lab_algebra('sl(2)')
    factors = lab.verma_composition_oracle(sl2, Weight([2, 0]), 6)
    assert factors == [(Weight([2, 0]), 1), (Weight([-1, 3]), 1)]
    basis = rootdata.standard_basis(sl2.system)
    assert dict(factors) == mult.linkage_provider(sl2.system, basis).support(Weight([2, 0]))


def test_gl11_kac_simplicity():
    """K(a, b) is simple exactly when a + b != 0; otherwise its simple quotient is one dimensional."""
    gl11 = lab.lab_algebra('gl(1|1)')
    basis = rootdata.standard_basis(gl11.system)
    rng = random.Random(5)
    for _ in range(30):
        a = rng.randint(-4, 4)
        b = -a if rng.random() < 0.4 else rng.randint(-4, 4)
        lam = Weight([a, b])
        typical = weights.is_typical(lam, gl11.system, basis).typical
        assert lab.kac_is_simple(gl11, lam) == typical
        quotient = lab.simple_quotient(lab.construct_kac(gl11, lam))
        assert quotient.total_dimension() == (2 if typical else 1)


def test_w2_kac_simplicity():
    w2 = lab.lab_algebra('W(2)')
    assert not lab.kac_is_simple(w2, Weight([1, 1]))
    assert lab.kac_is_simple(w2, Weight([2, 0]))
    assert lab.construct_kac(w2, Weight([1, 1])).total_dimension() == 4


def test_kac_typicality_suite():
    for seed in (0, 1, 2):
        report = suites.run_suite('kac-typicality', depth=4, seed=seed)
        assert report['cases'] == 10
        assert report['failures'] == []


def test_depth_cap():
    sl2 = lab.lab_algebra('sl(2)')
    with pytest.raises(DepthTooLarge):
        lab.construct_verma(sl2, Weight([0, 0]), lab.LAB_DEPTH_CAP + 1)
    with pytest.raises(InvalidParameters):
        lab.construct_verma(sl2, Weight([0, 0]), 0)
