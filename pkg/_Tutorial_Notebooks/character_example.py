"""
Example: Characters of Bounded Simple Modules

This example demonstrates how to:
1. Build sl(3) and the parabolic whose reductive part is a gl(2) block
2. Describe a bounded simple module by its block component, lambda_z and sigma
3. Compute the degree and a few weight multiplicities of the simple module
4. Check typicality and evaluate characters of W(2) modules through Kac modules
"""

import sys
import os
import warnings

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from SuperWeight import rootdata, weights, charformula
from SuperWeight.errors import ConventionWarning
from SuperWeight.rootdata import Weight


def sl3_example():
    print("=== Bounded sl(3) module ===")

    # 1. sl(3) with the gl(2)-block parabolic
    sl3 = rootdata.build_superalgebra('SL', 3, 0)
    par = rootdata.build_parabolic(sl3, rootdata.parabolic_from_blocks(sl3, eps_sizes=(2, 1)))
    print(f"\n1. Reductive blocks: {[b.label for b in par.blocks]}")

    # 2. lambda = (1/4, -1/4) on the block plus lambda_z, sigma = lambda
    z = sl3.parse_weight('1/5,1/5,-2/5')
    lam = par.compose([Weight(['1/4', '-1/4'])], z)
    spec = weights.BoundedModuleSpec(par, (('1/4', '-1/4'),), z, lam)
    print(f"2. Highest weight: {sl3.format_weight(spec.highest)}")

    # 3. Degree and multiplicities along sigma + k alpha_1 + L (eps_3 - eps_2)
    d_blocks, degree = charformula.degree(spec)
    print(f"3. d per block: {d_blocks}, degree: {degree}")
    character = charformula.simple_character(spec)
    alpha1 = Weight([1, -1, 0])
    down = Weight([0, -1, 1])
    for L in range(4):
        for k in (-1, 0, 1):
            eta = sl3.canonical(spec.sigma + alpha1 * k + down * L)
            print(f"   dim L^({sl3.format_weight(eta)}) = {character.multiplicity(eta)}")

    for mu, c in charformula.coefficient_table(character, 6):
        print(f"   c(lambda, {sl3.format_weight(mu)}) = {c}")


def w2_example():
    print("\n=== W(2) characters ===")
    w2 = rootdata.build_superalgebra('W', 2)
    basis = rootdata.standard_basis(w2)

    # 4. typicality and the atypicality index
    for text in ('1/2,1/3', '2,1', '1/2,1'):
        lam = w2.parse_weight(text)
        t = weights.is_typical(lam, w2, basis)
        print(f"\n4. lambda = {text}: typical={t.typical}, witness i={t.witness_i}")

    # ch L(lambda) = sum_mu s(lambda, mu) ch K(mu), one degree at a time
    lam = w2.parse_weight('2,1')
    with warnings.catch_warnings():
        warnings.simplefilter('ignore', ConventionWarning)
        for eta in ([2, 1], [1, 2], [1, 1], [0, 2], [0, 1], [0, 0], [-1, 1]):
            eta = Weight(eta)
            kac = charformula.w_kac_multiplicity(w2, lam, eta)
            simple = charformula.w_simple_multiplicity(w2, lam, eta)
            print(f"   eta = {w2.format_weight(eta)}: dim K^eta = {kac}, dim L^eta = {simple}")


def main():
    sl3_example()
    w2_example()


if __name__ == "__main__":
    main()
