"""
Example: Twisted Localization in the Lab

This example demonstrates how to:
1. Build a truncated sl(2) Verma module as explicit matrices
2. Localize it along f = E21 and twist by a rational c
3. Test simplicity of the twisted module and compare twists that differ by an integer
4. Run one of the built-in property suites
"""

import sys
import os
import json

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from SuperWeight import lab, localization, suites
from SuperWeight.rootdata import Weight


def main():
    print("=== SuperWeight Localization Example ===")

    # 1. M(1/2, 0) up to depth 8
    g = lab.lab_algebra('sl(2)')
    f = g.index('E21')
    verma = lab.construct_verma(g, Weight(['1/2', 0]), 8)
    print(f"\n1. Verma module: {verma.total_dimension()} basis vectors, "
          f"brackets violated at {len(lab.bracket_residual(verma))} places")

    # 2. localization and twists
    loc = localization.localize(verma, f)
    print(f"2. Localized window has {len(loc.weights())} weights")
    for c in ('1/3', '1/2', '2/5'):
        twisted = localization.psi(verma, f, c)
        print(f"   Psi^{c}: simple on the window = {localization.twist_is_simple(twisted)}")

    # 3. integer shifts of the twist parameter give isomorphic modules
    print(f"3. Psi^(1/3) ~ Psi^(4/3): {localization.twists_isomorphic(loc, '1/3', '4/3')}")
    print(f"   Psi^(1/3) ~ Psi^(1/2): {localization.twists_isomorphic(loc, '1/3', '1/2')}")

    # 4. a property suite, as `python -m SuperWeight lab run` would print it
    report = suites.run_suite('theta-integer', depth=6, seed=0)
    print("4. " + json.dumps(report, indent=2))


if __name__ == "__main__":
    main()
