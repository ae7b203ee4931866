##############################################################################
# Python header

__author__ = "SuperWeight developers"
__copyright__ = "Copyright 2026"
__credits__ = ["SuperWeight developers"]
__license__ = "BSD-3-Clause"
__version__ = "0.1.0"
__maintainer__ = "SuperWeight developers"
__status__ = "Dev-Production"

##############################################################################
#Checks module compatibility
try:
    import sympy
    del sympy
except (ImportError, ModuleNotFoundError):
    print('Sympy module not installed, install sympy module using: $ conda install -c conda-forge sympy ')

try:
    import scipy
    del scipy
except (ImportError, ModuleNotFoundError):
    print('Scipy module not installed, install scipy module using: $ conda install -c conda-forge scipy ')

from . import errors, rootdata, weights, mult, charformula, lab, localization, suites
from .rootdata import Weight, build_superalgebra, build_parabolic, parse_weight, format_weight
from .weights import BoundedModuleSpec, is_typical
from .charformula import simple_character, simple_multiplicity, degree
from .lab import lab_algebra, construct_verma, construct_kac
from .localization import localize, psi
from .errors import SuperWeightError

__all__ = ['errors', 'rootdata', 'weights', 'mult', 'charformula', 'lab', 'localization', 'suites',
           'Weight', 'build_superalgebra', 'build_parabolic', 'parse_weight', 'format_weight',
           'BoundedModuleSpec', 'is_typical', 'simple_character', 'simple_multiplicity', 'degree',
           'lab_algebra', 'construct_verma', 'construct_kac', 'localize', 'psi', 'SuperWeightError']
