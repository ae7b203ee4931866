'''
Character engine for simple bounded modules L_p(S).

ch L_p(S) = sum_mu c(lambda, mu) ch M_p(S(mu)), where ch M_p(S(mu)) is the
PBW character of U(u^-) times D on the coset sigma - lambda + mu + Q_a and
c(lambda, mu) = sum_nu b^g(lambda, nu) prod_i a^{a_i}(nu^{a_i}, mu^{a_i}).
Everything is evaluated lazily at a single weight eta.
'''

import functools
import itertools
import logging
import warnings
from dataclasses import dataclass
from fractions import Fraction

from scipy.special import comb

from . import mult, rootdata, weights
from .errors import (ConventionWarning, InvalidParameters, InvariantViolation, NotALieAlgebra,
                     NotDominant, NotDominantAfterTilde, SingularIntegralUnsupported)
from .rootdata import Weight

LOGGER = logging.getLogger(__name__)


# ----------------------------------------------------------------------------
# PBW counting
# ----------------------------------------------------------------------------

class PBWCounter(object):
    '''Dimensions of the weight spaces of U(n) for a set of negative roots.

    ``level`` is a linear function that is a negative integer on every
    generator; weights are grouped by level and enumerated one level at a time.
    '''

    def __init__(self, roots, level):
        self.generators = []
        for r in roots:
            lv = level(r.vector)
            if lv.denominator != 1 or lv >= 0:
                raise InvalidParameters(f'level must be a negative integer on {r.vector}, got {lv}')
            self.generators.append((r.vector, int(lv), r.multiplicity, r.is_odd))
        self.level = level
        self._by_level = {}

    def _ways(self, exponent, multiplicity, odd):
        if odd:
            return int(comb(multiplicity, exponent, exact=True))
        return int(comb(exponent + multiplicity - 1, multiplicity - 1, exact=True))

    def by_level(self, L):
        '''{gamma: dim U^gamma} over all gamma with level(gamma) == L.'''
        L = int(L)
        if L in self._by_level:
            return self._by_level[L]
        if L > 0:
            return {}
        states = {Weight.zero(len(self.generators[0][0])) if self.generators else Weight(): (0, 1)}
        for vec, lv, mul, odd in self.generators:
            nxt = {}
            for gamma, (glv, count) in states.items():
                e = 0
                while glv + e * lv >= L:
                    if odd and e > mul:
                        break
                    w = self._ways(e, mul, odd)
                    if w:
                        key = gamma + vec * e if e else gamma
                        old = nxt.get(key, (glv + e * lv, 0))
                        nxt[key] = (old[0], old[1] + count * w)
                    e += 1
            states = nxt
        out = {g: c for g, (glv, c) in states.items() if glv == L and c}
        self._by_level.setdefault(L, out)
        LOGGER.debug(f'PBW level {L}: {len(out)} weights')
        return self._by_level[L]

    def count(self, gamma):
        gamma = Weight(gamma)
        if not self.generators:
            return int(gamma.is_zero())
        lv = self.level(gamma)
        if lv.denominator != 1:
            return 0
        return self.by_level(lv).get(gamma, 0)


def pbw_counter(par):
    return PBWCounter(par.u_minus_roots, par.level)


def kostant_dim(par, gamma):
    '''Number of PBW monomials of U(u^-) of weight gamma.'''
    return pbw_counter(par).count(par.system.canonical(gamma))


def verma_counter(sys, basis):
    negatives = [rootdata.Root(-r.vector, -r.raw, r.parity, r.multiplicity, -r.degree)
                 for r in basis.even_positive + basis.odd_positive]
    return PBWCounter(negatives, basis.height)


def verma_multiplicity(sys, basis, lam, eta, counter=None):
    '''dim M_B(lam)^eta.'''
    counter = counter or verma_counter(sys, basis)
    return counter.count(sys.canonical(eta) - sys.canonical(lam))


def kac_character_multiplicity(sys, r_char, eta):
    '''dim K(R)^eta for a g0-character R given as {weight: multiplicity}.'''
    if sys.kind == 'W' or sys.is_lie_algebra:
        raise InvalidParameters(f'Kac modules need a type I superalgebra, got {sys.label}')
    odd = [r.vector for r in sys.odd_minus for _ in range(r.multiplicity)]
    eta = sys.canonical(eta)
    total = 0
    for k in range(len(odd) + 1):
        for subset in itertools.combinations(odd, k):
            gamma = Weight.zero(sys.dim)
            for v in subset:
                gamma = gamma + v
            total += r_char.get(sys.canonical(eta - gamma), 0)
    return total


# ----------------------------------------------------------------------------
# Weyl dimensions and degrees
# ----------------------------------------------------------------------------

def _is_dominant(block_type, lam):
    x = Weight(lam)
    m = len(x)
    steps = [x[j] - x[j + 1] for j in range(m - 1)]
    if block_type == 'D':
        if m >= 2:
            steps[-1] = x[m - 2] + x[m - 1]
            steps.append(x[m - 2] - x[m - 1])
        if any((2 * a).denominator != 1 for a in x):
            return False
    if block_type == 'C':
        steps.append(x[-1])
    return all(s.denominator == 1 and s >= 0 for s in steps)


def weyl_dimension(block_type, lam):
    '''prod over positive roots of (lam + rho, alpha) / (rho, alpha) for gl (A), sp (C), so(2m) (D).'''
    lam = Weight(lam)
    if not _is_dominant(block_type, lam):
        raise NotDominant(f'{lam} is not dominant integral for type {block_type}',
                          {'lambda': [str(a) for a in lam]})
    rho = rootdata.block_rho(block_type, len(lam))
    shifted = lam + rho
    out = Fraction(1)
    for alpha in rootdata.block_positive_roots(block_type, len(lam)):
        out *= shifted.dot(alpha) / rho.dot(alpha)
    if out.denominator != 1 or out < 1:
        raise InvariantViolation(f'Weyl dimension of {lam} evaluated to {out}')
    return int(out)


def tilde(component, block_type):
    '''(l_2, ..., l_m) in gl(m-1) for type A; (l_1 + 1, ..., l_m + 1) in so(2m) for type C.'''
    x = Weight(component)
    if block_type == 'A':
        out, target = Weight(x[1:]), 'A'
    elif block_type == 'C':
        out, target = Weight(a + 1 for a in x), 'D'
    else:
        raise InvalidParameters(f'unknown block type {block_type!r}')
    if not _is_dominant(target, out):
        raise NotDominantAfterTilde(f'{out} is not dominant for the reduced algebra',
                                    {'component': [str(a) for a in x]})
    return out


def degree_d(component, block_type, singular='generic'):
    x = Weight(component)
    if block_type == 'C':
        total = Fraction(weyl_dimension('D', tilde(x, 'C')), 2 ** (len(x) - 1))
        if total.denominator != 1:
            raise InvariantViolation(f'degree of {x} is not an integer: {total}')
        d = int(total)
    elif weights.is_integral_on_block(x, 'A') and weights.is_singular_component(x):
        if singular == 'raise':
            raise SingularIntegralUnsupported(f'{x} is singular integral',
                                              {'component': [str(a) for a in x]})
        LOGGER.debug(f'singular integral component {x}: generic degree branch')
        warnings.warn(f'degree of the singular integral component {x} uses the generic branch',
                      ConventionWarning)
        d = weyl_dimension('A', tilde(x, 'A'))
    elif weights.is_integral_on_block(x, 'A'):
        mu, l = weights.regular_integral_decompose(x)
        m = len(x)
        d = sum((-1) ** (j - l) * weyl_dimension('A', tilde(weights.mu_bracket(mu, j, m), 'A'))
                for j in range(l, m))
    else:
        d = weyl_dimension('A', tilde(x, 'A'))
    if d < 1:
        raise InvariantViolation(f'degree of {x} must be positive, got {d}')
    return d


def degree(spec, singular='generic'):
    '''(d(lambda^{a_i}) per block, their product D).'''
    ds = [degree_d(c, b.type, singular) for b, c in zip(spec.parabolic.blocks, spec.components)]
    total = 1
    for d in ds:
        total *= d
    return ds, total


# ----------------------------------------------------------------------------
# characters
# ----------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class CosetCharacter:
    '''D times the sum of e^beta over beta in base + Q_a.'''
    base: Weight
    lattice: rootdata.LatticeBasis
    degree: int

    def contains(self, eta):
        return self.lattice.contains(Weight(eta) - self.base)

    def multiplicity(self, eta):
        return self.degree if self.contains(eta) else 0


class InducedCharacter(object):
    '''Character of M_p(S) = U(u^-) (x) S for a cuspidal-type S with coset character.'''

    def __init__(self, coset, parabolic, counter=None):
        self.coset = coset
        self.parabolic = parabolic
        self.counter = counter or pbw_counter(parabolic)

    def multiplicity(self, eta):
        par = self.parabolic
        eta = par.system.canonical(eta)
        L = par.level(eta) - par.level(self.coset.base)
        if L > 0 or L.denominator != 1:
            return 0
        if L == 0:
            return self.coset.multiplicity(eta)
        if not self.counter.generators:
            return 0
        total = 0
        for gamma, count in self.counter.by_level(L).items():
            if self.coset.contains(eta - gamma):
                total += count
        return total * self.coset.degree


def induced_multiplicity(induced, eta):
    return induced.multiplicity(eta)


class SimpleCharacter(object):
    '''Lazily evaluated character of L_p(S) for a BoundedModuleSpec.

    ``b_provider`` gives b^g(lambda, .); ``a_providers`` give a^{a_i} on
    block-local coordinates (strong linkage by default).
    '''

    def __init__(self, spec, b_provider, a_providers=None):
        self.spec = spec
        self.parabolic = spec.parabolic
        self.system = spec.system
        self.lam = spec.highest
        self.b_provider = b_provider
        self.a_product = mult.product_provider(self.parabolic, a_providers)
        self.basis = self.parabolic.basis
        self.counter = pbw_counter(self.parabolic)
        self.d_blocks, self.degree = degree(spec)
        self._coefficients = {}

    def ideal(self, level):
        return mult.OrderIdeal(self.lam, self.basis.lattice, functional=self.parabolic.functional, level=level)

    def c_coefficient(self, mu, ideal=None):
        mu = self.system.canonical(mu)
        if mu in self._coefficients:
            return self._coefficients[mu]
        if weights.is_partially_finite(mu, self.parabolic):
            value = 0
        else:
            ideal = ideal or self.ideal(self.parabolic.level(self.lam - mu))
            value = sum(b * self.a_product.value(nu, mu)
                        for nu, b in self.b_provider.support(self.lam, ideal).items())
        return self._coefficients.setdefault(mu, value)

    def candidates(self, level):
        '''mu with possibly nonzero c(lambda, mu) and level(lambda - mu) <= level.'''
        if level < 0:
            return []
        ideal = self.ideal(level)
        out = set()
        for nu in self.b_provider.support(self.lam, ideal):
            out.update(self.a_product.support(nu, ideal))
        return sorted(out, key=lambda mu: (self.parabolic.level(self.lam - mu), mu))

    def coset_for(self, mu):
        base = self.system.canonical(self.spec.sigma - self.lam + mu)
        return CosetCharacter(base, self.parabolic.q_a, self.degree)

    def terms(self, eta):
        eta = self.system.canonical(eta)
        level = self.parabolic.level(self.spec.sigma - eta)
        out = []
        for mu in self.candidates(level):
            c = self.c_coefficient(mu, self.ideal(level))
            if not c:
                continue
            induced = InducedCharacter(self.coset_for(mu), self.parabolic, self.counter).multiplicity(eta)
            if induced:
                out.append((mu, c, induced))
        return out

    def multiplicity(self, eta):
        total = sum(c * m for _, c, m in self.terms(eta))
        if total < 0:
            raise InvariantViolation(f'negative multiplicity {total} at {eta}',
                                     {'eta': self.system.format_weight(self.system.canonical(eta))})
        return total


def c_coefficient(character, mu):
    return character.c_coefficient(mu)


def simple_multiplicity(character, eta):
    return character.multiplicity(eta)


def coefficient_table(character, depth):
    '''[(mu, c(lambda, mu))] over mu with level(lambda - mu) <= depth and c != 0.'''
    out = []
    for mu in character.candidates(depth):
        c = character.c_coefficient(mu, character.ideal(depth))
        if c:
            out.append((mu, c))
    return out


def default_b_provider(sys, basis):
    '''b^g for the algebras with built-in data: Lie algebras, gl/sl(m|1), W(n).'''
    if sys.kind == 'W':
        return mult.w_inverse_provider(sys)
    if sys.is_lie_algebra:
        return mult.invert_provider(mult.linkage_provider(sys, basis), basis.lattice)
    if sys.kind in ('GL', 'SL') and sys.n_delta == 1:
        return mult.invert_provider(mult.serganova_provider(sys, basis), basis.lattice)
    raise InvalidParameters(f'no built-in multiplicity data for {sys.label}; import a table')


def simple_character(spec, b_provider=None, a_providers=None):
    b_provider = b_provider or default_b_provider(spec.system, spec.parabolic.basis)
    return SimpleCharacter(spec, b_provider, a_providers)


# ----------------------------------------------------------------------------
# sup formula for Lie algebras
# ----------------------------------------------------------------------------

def highest_weight_multiplicity(sys, basis, lam, nu, b_provider=None, counter=None):
    '''dim L_B(lam)^nu = sum_kappa b(lam, kappa) dim M_B(kappa)^nu.'''
    b_provider = b_provider or mult.invert_provider(mult.linkage_provider(sys, basis), basis.lattice)
    counter = counter or verma_counter(sys, basis)
    ideal = mult.OrderIdeal(lam, basis.lattice, depth=basis.height(lam - nu))
    return sum(b * counter.count(nu - kappa) for kappa, b in b_provider.support(lam, ideal).items())


def mathieu_sup_oracle(spec, eta, depth, source='provider', lab_module=None):
    '''sup over zeta in Q_a of dim L_B(lambda)^{lambda - sigma + eta + zeta}, zeta within ``depth``.

    ``source='lab'`` reads the weight dimensions from an explicit quotient
    module (``lab_module`` from ``lab.simple_highest_weight_module``).
    '''
    sys = spec.system
    if not sys.is_lie_algebra:
        raise NotALieAlgebra(f'the sup formula needs a Lie algebra, got {sys.label}')
    par = spec.parabolic
    basis = par.basis
    lam = spec.highest
    target = sys.canonical(lam - spec.sigma + eta)
    ideal = mult.OrderIdeal(lam, basis.lattice, depth=depth)
    if source == 'lab':
        if lab_module is None:
            raise InvalidParameters('source="lab" needs the explicit module')
        dim_at = lab_module.weight_dimension
    elif source == 'provider':
        b_provider = mult.invert_provider(mult.linkage_provider(sys, basis), basis.lattice)
        counter = verma_counter(sys, basis)
        dim_at = lambda nu: highest_weight_multiplicity(sys, basis, lam, nu, b_provider, counter)
    else:
        raise InvalidParameters(f'unknown source {source!r}')
    best = 0
    for nu in ideal.elements():
        if par.q_a.contains(nu - target):
            best = max(best, dim_at(nu))
    return best


# ----------------------------------------------------------------------------
# W(n) through generalized Kac modules
# ----------------------------------------------------------------------------

@functools.lru_cache(maxsize=None)
def _gl_data(n):
    gl = rootdata.build_superalgebra('GL', n, 0)
    basis = rootdata.standard_basis(gl)
    provider = mult.invert_provider(mult.linkage_provider(gl, basis), basis.lattice)
    return gl, basis, provider, verma_counter(gl, basis)


def gl_simple_multiplicity(n, mu, nu):
    '''dim L_gl(n)(mu)^nu.'''
    gl, basis, provider, counter = _gl_data(n)
    mu, nu = Weight(mu), Weight(nu)
    if not basis.leq(nu, mu):
        return 0
    return highest_weight_multiplicity(gl, basis, mu, nu, provider, counter)


def w_kac_multiplicity(sys, mu, eta):
    '''dim K(mu)^eta for K(mu) = Lambda(W_{-1}) (x) L_gl(n)(mu).'''
    n = sys.dim
    eta = Weight(eta)
    total = 0
    for k in range(n + 1):
        for subset in itertools.combinations(range(n), k):
            nu = eta
            for j in subset:
                nu = nu + Weight.unit(n, j)
            total += gl_simple_multiplicity(n, mu, nu)
    return total


def w_simple_multiplicity(sys, lam, eta, omit_first_block_sum=True, literal_sign=False):
    '''dim L(lam)^eta = sum_mu s^W(lam, mu) dim K(mu)^eta.'''
    if sys.kind != 'W':
        raise InvalidParameters(f'expected W(n), got {sys.label}')
    lam, eta = Weight(lam), Weight(eta)
    typical = weights.is_typical(lam, sys, None).typical
    total = 0
    # K(mu)^eta needs sum(eta) <= sum(mu) <= sum(eta) + n
    for k in range(sys.dim + 1):
        degree = sum(eta) + k
        if typical:
            terms = {lam: 1} if sum(lam) == degree else {}
        else:
            terms = mult.w_s_terms(sys, lam, degree, omit_first_block_sum, literal_sign)
        for mu, s in terms.items():
            total += s * w_kac_multiplicity(sys, mu, eta)
    if total < 0:
        raise InvariantViolation(f'negative multiplicity {total} at {eta}')
    return total
