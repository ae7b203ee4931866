'''
Composition multiplicities [M(nu) : L(mu)] and their inverse matrices.

A provider answers ``value(nu, mu)`` and ``support(nu, ideal)``; supports
are always finite. Forward providers (kind "a") are built from strong
linkage, the two-term sl(m|1) rule or imported tables; inverse providers
(kind "b") are obtained by triangular back-substitution inside an order
ideal, or for W(n) by convolving the s-coefficients with the gl(n) inverse.
'''

import json
import logging
import math
import warnings
from fractions import Fraction

from . import _linalg, rootdata, weights
from .errors import (ConventionWarning, IdealNotFinite, InvalidParameters, InvariantViolation,
                     ParseError, ProviderGap, SingularAtypicalUnsupported, ThirdSumUndefined)
from .rootdata import LatticeBasis, Weight

LOGGER = logging.getLogger(__name__)

INVERSION_CAP = 20000


# ----------------------------------------------------------------------------
# order ideals
# ----------------------------------------------------------------------------

class OrderIdeal(object):
    '''{x <= top} cut down by a height bound (depth) and/or a level bound l(top - x) <= level.'''

    def __init__(self, top, lattice, depth=None, functional=None, level=None):
        if depth is None and level is None:
            raise InvalidParameters('an order ideal needs a depth or a level bound')
        if level is not None and functional is None:
            raise InvalidParameters('a level bound needs the defining functional')
        self.top = Weight(top)
        self.lattice = lattice
        self.depth = depth
        self.functional = functional
        self.level = level

    @property
    def finite(self):
        if self.depth is not None:
            return True
        return all(v.dot(self.functional) > 0 for v in self.lattice.vectors)

    def contains(self, x):
        diff = self.top - Weight(x)
        c = self.lattice.coordinates(diff)
        if c is None or any(a.denominator != 1 or a < 0 for a in c):
            return False
        if self.depth is not None and sum(c) > self.depth:
            return False
        if self.level is not None and diff.dot(self.functional) > self.level:
            return False
        return True

    def elements(self, cap=INVERSION_CAP):
        seen = {self.top}
        frontier = [self.top]
        while frontier:
            nxt = []
            for x in frontier:
                for v in self.lattice.vectors:
                    y = x - v
                    if y not in seen and self.contains(y):
                        seen.add(y)
                        nxt.append(y)
                        if len(seen) > cap:
                            raise IdealNotFinite(f'order ideal below {self.top} exceeds {cap} elements',
                                                 {'cap': cap})
            frontier = nxt
        return sorted(seen, key=lambda x: sum(self.lattice.coordinates(self.top - x)))


# ----------------------------------------------------------------------------
# providers
# ----------------------------------------------------------------------------

class MultiplicityProvider(object):
    '''Finitely supported (nu, mu) -> multiplicity map.'''
    kind = 'a'

    def __init__(self, name='provider'):
        self.name = name

    def support(self, nu, ideal=None):
        raise NotImplementedError

    def value(self, nu, mu):
        return self.support(nu).get(Weight(mu), 0)

    @staticmethod
    def _filter(row, ideal):
        if ideal is None:
            return row
        return {mu: v for mu, v in row.items() if ideal.contains(mu)}


class DiagonalProvider(MultiplicityProvider):

    def __init__(self):
        super().__init__('diagonal')

    def support(self, nu, ideal=None):
        return {Weight(nu): 1}

    def value(self, nu, mu):
        return int(Weight(nu) == Weight(mu))


def diagonal_provider():
    return DiagonalProvider()


def euclidean(a, b):
    return Weight(a).dot(b)


class LinkageProvider(MultiplicityProvider):
    '''Verma multiplicities of a reductive Lie algebra from strong linkage.

    Values are 1 on the strongly linked set below nu, which is exact when the
    integral root subsystem at nu has rank at most two.
    '''

    def __init__(self, positive_roots, rho, form=euclidean, name='linkage'):
        super().__init__(name)
        self.positive_roots = tuple(Weight(b) for b in positive_roots)
        self.rho = Weight(rho)
        self.form = form
        self._cache = {}

    def pairing(self, x, beta):
        return 2 * self.form(x + self.rho, beta) / self.form(beta, beta)

    def integral_rank(self, nu):
        integral = [b for b in self.positive_roots if self.pairing(Weight(nu), b).denominator == 1]
        if not integral:
            return 0
        return _linalg.rank(_linalg.array(integral))

    def support(self, nu, ideal=None):
        nu = Weight(nu)
        if nu not in self._cache:
            rank = self.integral_rank(nu)
            if rank > 2:
                raise ProviderGap(f'{self.name}: integral root subsystem at {nu} has rank {rank}',
                                  {'nu': [str(a) for a in nu], 'rank': rank})
            seen = {nu}
            frontier = [nu]
            while frontier:
                nxt = []
                for x in frontier:
                    for b in self.positive_roots:
                        k = self.pairing(x, b)
                        if k.denominator == 1 and k > 0:
                            y = x - b * k
                            if y not in seen:
                                seen.add(y)
                                nxt.append(y)
                frontier = nxt
            self._cache.setdefault(nu, {x: 1 for x in seen})
        return self._filter(self._cache[nu], ideal)


def block_provider(block_type, m):
    '''Linkage provider of an sl(m) (A) or sp(2m) (C) block in local coordinates.'''
    return LinkageProvider(rootdata.block_positive_roots(block_type, m),
                           rootdata.block_rho(block_type, m),
                           name=f'{block_type}{m}')


def sl2_provider():
    return block_provider('A', 2)


def linkage_provider(sys, basis, even_rho=False):
    '''Provider over the even part g0' of ``sys`` in ambient coordinates.'''
    roots = [r.vector for r in basis.even_positive if sys.in_g0_prime(r)]
    rho = basis.rho
    if even_rho:
        rho = sys.canonical(sum((r.raw * Fraction(r.multiplicity, 2) for r in basis.even_positive),
                                Weight.zero(sys.dim)))
    return LinkageProvider(roots, rho, form=lambda a, b: rootdata.bilinear_form(sys, a, b),
                           name=f'{sys.label}-even')


class ProductProvider(MultiplicityProvider):
    '''a(nu, mu) = prod_i a^{a_i}(nu^{a_i}, mu^{a_i}) when nu^z = mu^z, else 0.'''

    def __init__(self, parabolic, providers):
        super().__init__('product')
        if len(providers) != len(parabolic.blocks):
            raise InvalidParameters(f'{len(parabolic.blocks)} block providers expected, got {len(providers)}')
        self.parabolic = parabolic
        self.providers = tuple(providers)
        self.kind = providers[0].kind if providers else 'a'

    def value(self, nu, mu):
        par = self.parabolic
        if par.z_part(nu) != par.z_part(mu):
            return 0
        out = 1
        for p, a, b in zip(self.providers, par.local_components(nu), par.local_components(mu)):
            out *= p.value(a, b)
            if out == 0:
                break
        return out

    def support(self, nu, ideal=None):
        par = self.parabolic
        z = par.z_part(nu)
        rows = [p.support(c) for p, c in zip(self.providers, par.local_components(nu))]
        out = {Weight(z): 1}
        for blk, row in zip(par.blocks, rows):
            nxt = {}
            for acc, v in out.items():
                for loc, w in row.items():
                    if w:
                        key = acc + blk.embed(loc, par.system.dim)
                        nxt[key] = nxt.get(key, 0) + v * w
            out = nxt
        out = {par.system.canonical(k): v for k, v in out.items() if v}
        return self._filter(out, ideal)


def product_provider(parabolic, providers=None):
    if providers is None:
        providers = [block_provider(b.type, b.size) for b in parabolic.blocks]
    return ProductProvider(parabolic, providers)


class InverseProvider(MultiplicityProvider):
    '''b = a^{-1} by forward accumulation over the a-closure of nu inside an ideal.'''
    kind = 'b'

    def __init__(self, provider, lattice, cap=INVERSION_CAP):
        super().__init__(f'inverse({provider.name})')
        self.provider = provider
        self.lattice = lattice
        self.cap = cap
        self._cache = {}

    def _height(self, top, x):
        c = self.lattice.coordinates(top - x)
        if c is None or any(a.denominator != 1 or a < 0 for a in c):
            raise InvariantViolation(f'{self.provider.name}: {x} is not below {top}')
        return sum(c)

    def row(self, nu, ideal=None):
        nu = Weight(nu)
        key = (nu, None if ideal is None else (ideal.depth, ideal.level))
        if key in self._cache:
            return self._cache[key]
        closure = {nu}
        frontier = [nu]
        while frontier:
            nxt = []
            for x in frontier:
                for y, v in self.provider.support(x).items():
                    if v and y not in closure and (ideal is None or ideal.contains(y)):
                        closure.add(y)
                        nxt.append(y)
                        if len(closure) > self.cap:
                            raise IdealNotFinite(f'{self.name}: closure below {nu} exceeds {self.cap}; '
                                                 'pass a finite order ideal', {'cap': self.cap})
            frontier = nxt
        order = sorted(closure, key=lambda x: self._height(nu, x))
        LOGGER.debug(f'{self.name}: inverting over {len(order)} weights below {nu}')
        acc = {}
        row = {}
        for kappa in order:
            b = 1 if kappa == nu else -acc.get(kappa, 0)
            if b:
                row[kappa] = b
                for mu, a in self.provider.support(kappa).items():
                    if mu != kappa and mu in closure:
                        acc[mu] = acc.get(mu, 0) + b * a
        self._cache.setdefault(key, row)
        return self._cache[key]

    def support(self, nu, ideal=None):
        return self.row(nu, ideal)

    def value(self, nu, mu):
        nu, mu = Weight(nu), Weight(mu)
        c = self.lattice.coordinates(nu - mu)
        if c is None or any(a.denominator != 1 or a < 0 for a in c):
            return 0
        ideal = OrderIdeal(nu, self.lattice, depth=sum(c))
        return self.row(nu, ideal).get(mu, 0)


def invert_provider(provider, lattice, cap=INVERSION_CAP):
    return InverseProvider(provider, lattice, cap)


def block_lattice(block_type, m):
    return LatticeBasis(rootdata.block_basis(block_type, m), m)


# ----------------------------------------------------------------------------
# sl(m|1)
# ----------------------------------------------------------------------------

class SerganovaProvider(MultiplicityProvider):
    '''a^{sl(m|1)}(nu, .) = a^{gl(m)}(nu, .) + a^{gl(m)}(nu - alpha, .) for nonsingular alpha-atypical nu.'''

    def __init__(self, sys, basis, even=None):
        super().__init__(f'serganova-{sys.label}')
        if sys.kind not in ('GL', 'SL') or sys.n_delta != 1:
            raise InvalidParameters(f'the two-term rule needs gl(m|1) or sl(m|1), got {sys.label}')
        self.sys = sys
        self.basis = basis
        self.even = even or linkage_provider(sys, basis, even_rho=True)
        self.simple_odd = frozenset(r.vector for r in basis.simple if r.is_odd)

    def support(self, nu, ideal=None):
        nu = self.sys.canonical(nu)
        typ = weights.is_typical(nu, self.sys, self.basis)
        if typ.typical:
            return self._filter(dict(self.even.support(nu)), ideal)
        if weights.is_singular(nu, self.sys, self.basis):
            raise SingularAtypicalUnsupported(f'{nu} is singular and atypical',
                                              {'nu': self.sys.format_weight(nu)})
        witness = [a for a in typ.witnesses if a in self.simple_odd]
        if not witness:
            raise ProviderGap(f'{nu} is atypical only for non-simple odd roots',
                              {'nu': self.sys.format_weight(nu)})
        out = dict(self.even.support(nu))
        for mu, v in self.even.support(nu - witness[0]).items():
            out[mu] = out.get(mu, 0) + v
        return self._filter(out, ideal)


def serganova_provider(sys, basis, even=None):
    return SerganovaProvider(sys, basis, even)


# ----------------------------------------------------------------------------
# W(n)
# ----------------------------------------------------------------------------

def _w_atypical_form(sys, lam):
    typ = weights.is_typical(lam, sys, None)
    if typ.typical:
        raise InvalidParameters(f'{lam} is typical for {sys.label}')
    i = typ.witness_i
    return i, lam[i - 1]


def w_s_terms(sys, lam, degree, omit_first_block_sum=True, literal_sign=False):
    '''Nonzero s(lam, mu) over the weights mu with coordinate sum ``degree`` (at most three).'''
    lam = Weight(lam)
    n = sys.dim
    i, a = _w_atypical_form(sys, lam)
    degree = _linalg.frac(degree)
    total = sum(lam)
    out = {}

    def add(mu, v):
        out[mu] = out.get(mu, 0) + v

    e_i = Weight.unit(n, i - 1)
    positive = a.denominator == 1 and a > 0
    j = total - degree
    if not positive:
        if j.denominator == 1 and j >= 0:
            add(lam - e_i * j, (-1) ** int(j))
        return {k: v for k, v in out.items() if v}
    a = int(a)
    if j.denominator == 1 and 0 <= j <= a - 1:
        add(lam - e_i * j, (-1) ** int(j))
    k = -degree
    sign = -1 if literal_sign else 1
    if k.denominator == 1 and k >= 0:
        add(Weight.unit(n, n - 1, -k), sign * (-1) ** (a + int(k)))
    if i == 1:
        if not omit_first_block_sum:
            raise ThirdSumUndefined(f'the eps_(i-1) sum is undefined for i = 1 (lambda = {lam})')
        LOGGER.debug(f'omitting the eps_(i-1) sum of s({lam}, .) at i = 1')
        warnings.warn('s-coefficient at i = 1: the eps_(i-1) sum is omitted', ConventionWarning)
    else:
        # carries the opposite sign of the -k eps_n chain
        l = total - (a - 1) - degree
        if l.denominator == 1 and l > 0:
            mu = lam - Weight.unit(n, i - 2, l) - e_i * (a - 1)
            add(mu, -sign * (-1) ** (a + int(l)))
    return {k: v for k, v in out.items() if v}


def w_s_coefficient(sys, lam, mu, omit_first_block_sum=True, literal_sign=False):
    '''s^W(lam, mu) for atypical lam = a eps_i + eps_{i+1} + ... + eps_n.'''
    mu = Weight(mu)
    terms = w_s_terms(sys, lam, sum(mu), omit_first_block_sum, literal_sign)
    return terms.get(mu, 0)


def gl_inverse_provider(n):
    '''b^{gl(n)} in the ambient eps coordinates.'''
    roots = rootdata.block_positive_roots('A', n)
    lattice = LatticeBasis(rootdata.block_basis('A', n), n)
    return InverseProvider(LinkageProvider(roots, rootdata.block_rho('A', n), name=f'gl({n})'), lattice)


class WInverseProvider(MultiplicityProvider):
    '''b^W(lam, mu) = sum_nu s^W(lam, nu) b^{gl(n)}(nu, mu); s = delta for typical lam.'''
    kind = 'b'

    def __init__(self, sys, gl_inverse=None, omit_first_block_sum=True, literal_sign=False):
        super().__init__(f'w-inverse-{sys.label}')
        if sys.kind != 'W':
            raise InvalidParameters(f'expected W(n), got {sys.label}')
        self.sys = sys
        self.gl_inverse = gl_inverse or gl_inverse_provider(sys.dim)
        self.flags = dict(omit_first_block_sum=omit_first_block_sum, literal_sign=literal_sign)

    def _s_terms(self, lam, degree):
        if weights.is_typical(lam, self.sys, None).typical:
            return {lam: 1} if sum(lam) == degree else {}
        return w_s_terms(self.sys, lam, degree, **self.flags)

    def value(self, lam, mu):
        return w_b_coefficient(self.sys, lam, mu, self.gl_inverse, **self.flags)

    def support(self, lam, ideal=None):
        lam = Weight(lam)
        if ideal is None:
            raise IdealNotFinite('b^W rows are infinite; pass an order ideal')
        if ideal.depth is not None:
            drop = ideal.depth
        else:
            step = min(Weight.unit(self.sys.dim, i).dot(ideal.functional) for i in range(self.sys.dim))
            if step <= 0:
                raise IdealNotFinite('level bound does not bound the degree of W(n) weights')
            drop = math.floor(ideal.level / step)
        out = {}
        for t in range(int(drop) + 1):
            for nu, s in self._s_terms(lam, sum(lam) - t).items():
                for mu, b in self.gl_inverse.row(nu).items():
                    out[mu] = out.get(mu, 0) + s * b
        return {mu: v for mu, v in out.items() if v and ideal.contains(mu)}


def w_b_coefficient(sys, lam, mu, gl_inverse=None, omit_first_block_sum=True, literal_sign=False):
    lam, mu = Weight(lam), Weight(mu)
    gl_inverse = gl_inverse or gl_inverse_provider(sys.dim)
    if weights.is_typical(lam, sys, None).typical:
        return gl_inverse.value(lam, mu)
    terms = w_s_terms(sys, lam, sum(mu), omit_first_block_sum, literal_sign)
    return sum(s * gl_inverse.value(nu, mu) for nu, s in terms.items())


def w_inverse_provider(sys, **flags):
    return WInverseProvider(sys, **flags)


# ----------------------------------------------------------------------------
# composition through a parabolic
# ----------------------------------------------------------------------------

def compose_mblb(first, second, lam, mu, ideal=None):
    '''sum_nu first(lam, nu) * second(nu, mu).'''
    mu = Weight(mu)
    return sum(v * second.value(nu, mu) for nu, v in first.support(lam, ideal).items())


class ComposedProvider(MultiplicityProvider):

    def __init__(self, first, second, name='composed'):
        super().__init__(name)
        self.first = first
        self.second = second

    def support(self, nu, ideal=None):
        out = {}
        for kappa, b in self.first.support(nu, ideal).items():
            for mu, a in self.second.support(kappa, ideal).items():
                out[mu] = out.get(mu, 0) + b * a
        return {mu: v for mu, v in out.items() if v}

    def value(self, nu, mu):
        return compose_mblb(self.first, self.second, nu, mu)


def mp_provider(b_a, a_g):
    '''[M_p(nu) : L_B(mu)] = sum_kappa b^a(nu, kappa) a^g(kappa, mu).'''
    return ComposedProvider(b_a, a_g, name='induced')


# ----------------------------------------------------------------------------
# tables
# ----------------------------------------------------------------------------

class MultiplicityTable(object):
    '''Imported (nu, mu, value) triples with block metadata.'''

    def __init__(self, system, entries, kind='a', basis='standard'):
        if kind not in ('a', 'b'):
            raise InvalidParameters(f'table kind must be "a" or "b", got {kind!r}')
        self.system = system
        self.kind = kind
        self.basis = basis
        self.entries = {(Weight(nu), Weight(mu)): int(v) for (nu, mu), v in entries.items()}
        self.validate()

    @property
    def tops(self):
        return sorted({nu for nu, _ in self.entries})

    def validate(self):
        order = rootdata.standard_basis(self.system)
        for nu in self.tops:
            if self.entries.get((nu, nu)) != 1:
                raise InvariantViolation(f'table entry ({nu}, {nu}) must be 1',
                                         {'nu': self.system.format_weight(nu)})
        for (nu, mu), v in self.entries.items():
            if v and not order.leq(mu, nu):
                raise InvariantViolation(f'table support {mu} is not below {nu}',
                                         {'nu': self.system.format_weight(nu), 'mu': self.system.format_weight(mu)})
            if self.kind == 'a' and v < 0:
                raise InvariantViolation(f'negative multiplicity {v} at ({nu}, {mu})')


class TableProvider(MultiplicityProvider):

    def __init__(self, table):
        super().__init__('table')
        self.table = table
        self.kind = table.kind
        self._rows = {}
        for (nu, mu), v in table.entries.items():
            if v:
                self._rows.setdefault(nu, {})[mu] = v

    def support(self, nu, ideal=None):
        nu = Weight(nu)
        if nu not in self._rows:
            raise ProviderGap(f'no table data for nu = {self.table.system.format_weight(nu)}',
                              {'nu': self.table.system.format_weight(nu)})
        return self._filter(dict(self._rows[nu]), ideal)


def table_provider(table):
    return TableProvider(table)


def load_table(path):
    records = []
    try:
        with open(path) as f:
            for line in f:
                if line.strip():
                    records.append(json.loads(line))
    except json.JSONDecodeError as e:
        raise ParseError(f'{path}: {e}')
    except OSError as e:
        raise ParseError(f'cannot read {path}: {e}')
    if not records or 'algebra' not in records[0]:
        raise ParseError(f'{path}: the first record must be the header with "algebra", "basis", "kind"')
    header = records[0]
    sys = rootdata.from_descriptor(header['algebra'])
    entries = {}
    for rec in records[1:]:
        try:
            key = (sys.parse_weight(rec['nu']), sys.parse_weight(rec['mu']))
            entries[key] = int(rec['value'])
        except (KeyError, TypeError, ValueError) as e:
            raise ParseError(f'{path}: bad record {rec!r}: {e}')
    LOGGER.info(f'loaded {len(entries)} {header.get("kind", "a")}-entries for {sys.label} from {path}')
    return MultiplicityTable(sys, entries, header.get('kind', 'a'), header.get('basis', 'standard'))


def save_table(table, path):
    sys = table.system
    with open(path, 'w') as f:
        f.write(json.dumps({'algebra': sys.descriptor(), 'basis': table.basis, 'kind': table.kind}) + '\n')
        for (nu, mu), v in sorted(table.entries.items()):
            f.write(json.dumps({'nu': sys.format_weight(nu), 'mu': sys.format_weight(mu), 'value': v}) + '\n')
    return path
