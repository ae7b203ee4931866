'''
Classification predicates on weights: dominance, normal forms of bounded
components, typicality, singularity, central characters and the regular
integral parametrization lambda = mu[l] of sl-type components.

Block components are passed in local coordinates (see
``Parabolic.local_components``): centered for type A blocks, unshifted for
type C blocks.
'''

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction

from . import rootdata
from .errors import InvalidParameters, NotBounded, NotRegularIntegral
from .rootdata import Weight

LOGGER = logging.getLogger(__name__)


def _is_nonneg_int(x):
    return x.denominator == 1 and x >= 0


def _centered(component):
    x = Weight(component)
    mean = sum(x, Fraction(0)) / len(x)
    return Weight(a - mean for a in x)


@dataclass(frozen=True)
class CentralCharacter:
    '''Dot-orbit representative: lexicographically minimal w(mu + rho) minus rho.'''
    representative: Weight


@dataclass(frozen=True)
class Typicality:
    typical: bool
    witnesses: tuple = ()

    @property
    def atypical(self):
        return not self.typical

    @property
    def witness_i(self):
        '''Largest atypicality index for W(n) (1-based), None otherwise.

        eps_i + ... + eps_n is read with index i and a = 1, never as 0 eps_{i-1} + eps_i + ....
        '''
        ints = [w for w in self.witnesses if isinstance(w, int)]
        return max(ints) if ints else None


@dataclass(frozen=True, eq=False)
class BoundedModuleSpec:
    '''(p, lambda^{a_1}, ..., lambda^{a_k}, lambda^z, sigma) determining L_p(S).'''
    parabolic: rootdata.Parabolic
    components: tuple
    z: Weight
    sigma: Weight

    def __post_init__(self):
        par = self.parabolic
        if len(self.components) != len(par.blocks):
            raise InvalidParameters(f'{len(par.blocks)} block components expected, got {len(self.components)}')
        comps = []
        for b, c in zip(par.blocks, self.components):
            c = Weight(c)
            if len(c) != b.size:
                raise InvalidParameters(f'{b.label} component needs {b.size} coordinates, got {len(c)}')
            if b.type == 'A':
                c = _centered(c)
            if not validate_normal_form(c, b.type):
                raise InvalidParameters(f'{b.label} component {c} is not in normal form')
            comps.append(c)
        object.__setattr__(self, 'components', tuple(comps))
        object.__setattr__(self, 'z', par.system.canonical(self.z))
        object.__setattr__(self, 'sigma', par.system.canonical(self.sigma))
        if par.z_part(self.z) != self.z:
            raise InvalidParameters(f'lambda_z = {self.z} has a nonzero projection on a simple factor')

    @property
    def highest(self):
        '''lambda = sum_i lambda^{a_i} + lambda^z.'''
        return self.parabolic.compose(self.components, self.z)

    @property
    def system(self):
        return self.parabolic.system


# ----------------------------------------------------------------------------
# block predicates
# ----------------------------------------------------------------------------

def is_integral_on_block(component, block_type):
    x = Weight(component)
    if any((x[j] - x[j + 1]).denominator != 1 for j in range(len(x) - 1)):
        return False
    return block_type != 'C' or x[-1].denominator == 1


def is_dominant_integral(component, block_type):
    '''(lambda, alpha^vee) in Z>=0 for the simple roots of an sl (A) or sp (C) block.'''
    x = Weight(component)
    if not all(_is_nonneg_int(x[j] - x[j + 1]) for j in range(len(x) - 1)):
        return False
    # the coroot of 2 eps_m is eps_m
    return block_type != 'C' or _is_nonneg_int(x[-1])


def validate_normal_form(component, block_type):
    '''Normal form of a bounded non-dominant block component.

    Type A: sum zero, l_1 - l_2 not in Z>=0, l_j - l_{j+1} in Z>=0 for j >= 2.
    Type C: l_j in 1/2 + Z and l_1 >= ... >= l_m >= -1/2.
    '''
    x = Weight(component)
    if block_type == 'A':
        if sum(x) != 0 or len(x) < 2:
            return False
        if _is_nonneg_int(x[0] - x[1]):
            return False
        return all(_is_nonneg_int(x[j] - x[j + 1]) for j in range(1, len(x) - 1))
    if block_type == 'C':
        if any((2 * a).denominator != 1 or (2 * a) % 2 != 1 for a in x):
            return False
        return all(x[j] >= x[j + 1] for j in range(len(x) - 1)) and x[-1] >= Fraction(-1, 2)
    raise InvalidParameters(f'unknown block type {block_type!r}')


def block_components(lam, par):
    return par.local_components(lam)


def is_partially_finite(lam, par):
    return any(is_dominant_integral(c, b.type) for b, c in zip(par.blocks, par.local_components(lam)))


def _block_weyl(block_type, m):
    for perm in itertools.permutations(range(m)):
        signs = itertools.product((1, -1), repeat=m) if block_type == 'C' else [(1,) * m]
        for sg in signs:
            yield perm, sg


def block_dot(perm, signs, component, block_type):
    rho = rootdata.block_rho(block_type, len(component))
    t = Weight(component) + rho
    out = [Fraction(0)] * len(t)
    for a, b in enumerate(perm):
        out[b] = signs[a] * t[a]
    return Weight(out) - rho


def is_bounded_component(component, block_type):
    '''Normal forms, their dot-translates and dominant integral components.'''
    if is_dominant_integral(component, block_type):
        return True
    return any(validate_normal_form(block_dot(p, s, component, block_type), block_type)
               for p, s in _block_weyl(block_type, len(component)))


def is_gamma_injective(lam, par):
    for b, c in zip(par.blocks, par.local_components(lam)):
        if not is_bounded_component(c, b.type):
            raise NotBounded(f'{b.label} component {c} does not give a bounded module',
                             {'component': [str(a) for a in c]})
    return not is_partially_finite(lam, par)


# ----------------------------------------------------------------------------
# typicality and singularity
# ----------------------------------------------------------------------------

def is_typical(mu, sys, basis):
    mu = sys.canonical(mu)
    if sys.kind == 'W':
        n = sys.dim
        hits = tuple(i + 1 for i in range(n)
                     if all(mu[k] == 0 for k in range(i)) and all(mu[k] == 1 for k in range(i + 1, n)))
        return Typicality(not hits, hits)
    if sys.kind in ('P', 'SP'):
        t = mu + rootdata.block_rho('A', sys.dim)
        hits = tuple((i + 1, j + 1) for i in range(sys.dim) for j in range(sys.dim)
                     if i != j and t[i] - t[j] == 1)
        return Typicality(not hits, hits)
    shifted = mu + basis.rho
    hits = tuple(r.vector for r in basis.odd_positive
                 if rootdata.bilinear_form(sys, shifted, r.vector) == 0)
    return Typicality(not hits, hits)


def is_singular(mu, sys, basis, method='pairing'):
    '''mu + rho_B has a nontrivial stabilizer in the Weyl group of g0'.'''
    shifted = sys.canonical(mu) + basis.rho
    if method == 'orbit':
        group = rootdata.weyl_group(sys)
        return sum(1 for w in group if group.act(w, shifted) == shifted) > 1
    return any(rootdata.bilinear_form(sys, shifted, r.vector) == 0
               for r in sys.even_roots if sys.in_g0_prime(r))


def central_character(mu, sys, basis, group=None):
    group = group or rootdata.weyl_group(sys)
    shifted = sys.canonical(mu) + basis.rho
    rep = min(group.act(w, shifted) for w in group)
    return CentralCharacter(rep - basis.rho)


# ----------------------------------------------------------------------------
# regular integral parametrization
# ----------------------------------------------------------------------------

def mu_bracket(mu, l, m=None):
    '''mu[l]: move t_{l+1} to the front of t = mu + rho; None (the zero marker) for l >= m.'''
    mu = Weight(mu)
    m = len(mu) if m is None else m
    if l < 1:
        raise InvalidParameters(f'mu[l] needs l >= 1, got {l}')
    if l >= m:
        return None
    mu = _centered(mu)
    if not is_dominant_integral(mu, 'A'):
        raise InvalidParameters(f'{mu} is not dominant integral for sl({m})')
    rho = rootdata.block_rho('A', m)
    t = mu + rho
    shifted = (t[l],) + tuple(t[:l]) + tuple(t[l + 1:])
    return Weight(shifted) - rho


def is_singular_component(component):
    '''Integral type A component with l_1 - l_{j+1} + j = 0 for some j.

    This is (lambda + rho, eps_1 - eps_{j+1}) = 0. On a normal form the entries
    t_2 > ... > t_m of lambda + rho are distinct, so the condition holds exactly
    when lambda + rho is fixed by a reflection (see ``is_singular``).
    '''
    x = Weight(component)
    return any(x[0] - x[j] + j == 0 for j in range(1, len(x)))


def regular_integral_decompose(component):
    '''Inverse of mu_bracket: (mu, l) with 1 <= l <= m - 1, or None for nonintegral input.'''
    x = _centered(component)
    if not is_integral_on_block(x, 'A'):
        return None
    m = len(x)
    rho = rootdata.block_rho('A', m)
    tp = x + rho
    if len(set(tp)) != m:
        raise NotRegularIntegral(f'{x} is singular', {'component': [str(a) for a in x]})
    t = sorted(tp, reverse=True)
    pos = t.index(tp[0])
    rest = t[:pos] + t[pos + 1:]
    if pos < 1 or list(tp[1:]) != rest:
        raise NotRegularIntegral(f'{x} is not of the form mu[l]', {'component': [str(a) for a in x]})
    return Weight(t) - rho, pos


# ----------------------------------------------------------------------------
# test generators
# ----------------------------------------------------------------------------

def normal_form_sample(block_type, m, rng):
    '''Random component in normal form; ``rng`` is a random.Random.'''
    if block_type == 'A':
        if m < 2:
            raise InvalidParameters('type A normal forms need m >= 2')
        tail = [Fraction(rng.randint(-6, 6), rng.choice([1, 2, 3]))]
        for _ in range(m - 2):
            tail.append(tail[-1] - rng.randint(0, 3))
        if rng.random() < 0.5:
            head = tail[0] + Fraction(rng.randint(-9, 9), rng.choice([3, 5, 7]))
            if _is_nonneg_int(head - tail[0]):
                head += Fraction(1, 3)
        else:
            head = tail[0] - rng.randint(1, 4)
        return _centered([head] + tail)
    if block_type == 'C':
        out = [Fraction(-1, 2) + rng.randint(0, 3)]
        for _ in range(m - 1):
            out.insert(0, out[0] + rng.randint(0, 2))
        return Weight(out)
    raise InvalidParameters(f'unknown block type {block_type!r}')
