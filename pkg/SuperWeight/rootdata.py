'''
Root data for the type I Lie superalgebras gl(m|n), sl(m|n), psl(m|m),
osp(2|2q), p(m), sp(m) and for the Cartan type superalgebra W(n).

Weights are exact rational vectors in the (eps_1..eps_m, delta_1..delta_n)
basis. Quotient spaces (sl, psl, sp) are handled by storing canonical
representatives, so weight equality is tuple equality. W(n) is modelled by
its monomial superderivations xi_S d_j acting on the Grassmann algebra; the
same model feeds the lab realization of W(2).
'''

import itertools
import logging
import math
import os
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np
from scipy.special import comb

from . import _linalg
from .errors import (CatalogMismatch, GroupTooLarge, InvalidParameters, NoneFound,
                     NotParabolic, ParseError)

LOGGER = logging.getLogger(__name__)

KINDS = ('GL', 'SL', 'PSL', 'OSP', 'P', 'SP', 'W')
WEYL_GROUP_CAP = int(os.environ.get('SUPERWEIGHT_WEYL_CAP', 10**5))

# reductive block types allowed in the zero level of a parabolic, per family
_CATALOG = {'GL': {'A'}, 'SL': {'A'}, 'PSL': {'A'}, 'OSP': {'A', 'C'},
            'P': {'A'}, 'SP': {'A'}, 'W': {'A'}}


class Weight(tuple):
    '''Exact rational coordinate vector with vector-space arithmetic.'''

    def __new__(cls, coords=()):
        return super().__new__(cls, tuple(_linalg.frac(c) for c in coords))

    @classmethod
    def zero(cls, dim):
        return cls([0] * dim)

    @classmethod
    def unit(cls, dim, index, scale=1):
        coords = [0] * dim
        coords[index] = scale
        return cls(coords)

    def __add__(self, other):
        if len(self) != len(other):
            raise InvalidParameters(f'weight dimensions differ: {len(self)} vs {len(other)}')
        return Weight(a + b for a, b in zip(self, other))

    def __sub__(self, other):
        if len(self) != len(other):
            raise InvalidParameters(f'weight dimensions differ: {len(self)} vs {len(other)}')
        return Weight(a - b for a, b in zip(self, other))

    def __neg__(self):
        return Weight(-a for a in self)

    def __mul__(self, scalar):
        s = _linalg.frac(scalar)
        return Weight(a * s for a in self)

    __rmul__ = __mul__

    def dot(self, functional):
        return sum((a * _linalg.frac(b) for a, b in zip(self, functional)), Fraction(0))

    def is_zero(self):
        return all(a == 0 for a in self)

    def __repr__(self):
        return 'Weight(' + ','.join(str(a) for a in self) + ')'


@dataclass(frozen=True)
class Root:
    vector: Weight
    raw: Weight
    parity: int
    multiplicity: int = 1
    degree: int = 0

    @property
    def is_odd(self):
        return self.parity == 1


@dataclass(frozen=True)
class Superderivation:
    '''Monomial superderivation xi_S d_j of the Grassmann algebra on n generators.'''
    support: tuple
    target: int
    n: int

    @property
    def weight(self):
        coords = [0] * self.n
        for i in self.support:
            coords[i] += 1
        coords[self.target] -= 1
        return Weight(coords)

    @property
    def parity(self):
        return (len(self.support) + 1) % 2

    @property
    def degree(self):
        return len(self.support) - 1

    @property
    def name(self):
        xi = ''.join(f'x{i + 1}' for i in self.support)
        return f'{xi or "1"}d{self.target + 1}'


def grassmann_basis(n):
    '''Monomials xi_T of the Grassmann algebra, ordered by degree then lexicographically.'''
    return [t for k in range(n + 1) for t in itertools.combinations(range(n), k)]


def _grassmann_product(s, t):
    '''(sign, monomial) of xi_s * xi_t, sign 0 when the product vanishes.'''
    if set(s) & set(t):
        return 0, ()
    seq = list(s) + list(t)
    inversions = sum(1 for a in range(len(seq)) for b in range(a + 1, len(seq)) if seq[a] > seq[b])
    return (-1) ** inversions, tuple(sorted(seq))


def superderivation_matrix(der):
    '''Matrix of xi_S d_j on the Grassmann basis (columns are images of basis monomials).'''
    basis = grassmann_basis(der.n)
    index = {t: i for i, t in enumerate(basis)}
    out = _linalg.zeros(len(basis), len(basis))
    for col, t in enumerate(basis):
        if der.target not in t:
            continue
        pos = t.index(der.target)
        rest = t[:pos] + t[pos + 1:]
        sign, mono = _grassmann_product(der.support, rest)
        if sign:
            out[index[mono], col] += Fraction((-1) ** pos * sign)
    return out


def superderivations(n):
    return [Superderivation(tuple(s), j, n)
            for k in range(n + 1) for s in itertools.combinations(range(n), k)
            for j in range(n)]


@dataclass(frozen=True, eq=False)
class SuperRootSystem:
    '''Root datum of one catalog algebra; see build_superalgebra.'''
    kind: str
    params: tuple
    n_eps: int
    n_delta: int
    roots: tuple
    relation: tuple = ()
    gram: tuple = ()
    even_blocks: tuple = ()
    derivations: tuple = field(default=(), repr=False)

    @property
    def dim(self):
        return self.n_eps + self.n_delta

    @property
    def label(self):
        if self.kind == 'W':
            return f'W({self.params[0]})'
        if self.kind in ('P', 'SP'):
            return f'{self.kind.lower()}({self.params[0]})'
        return f'{self.kind.lower()}({self.params[0]}|{self.params[1]})'

    def descriptor(self):
        if self.kind == 'W':
            return {'kind': 'W', 'n': self.params[0]}
        if self.kind in ('P', 'SP'):
            return {'kind': self.kind, 'm': self.params[0]}
        return {'kind': self.kind, 'm': self.params[0], 'n': self.params[1]}

    @property
    def is_lie_algebra(self):
        return not any(r.is_odd for r in self.roots)

    @property
    def cartan_dimension(self):
        if self.kind in ('SL', 'SP'):
            return self.dim - 1
        if self.kind == 'PSL':
            return self.dim - 2
        return self.dim

    # ------------------------------------------------------------------
    # weights
    # ------------------------------------------------------------------

    def canonical(self, coords):
        v = Weight(coords)
        if len(v) != self.dim:
            raise InvalidParameters(f'{self.label} weights have {self.dim} coordinates, got {len(v)}')
        if self.kind == 'SL':
            r = Weight(self.relation)
            num = bilinear_form(self, v, r, canonical=False)
            den = bilinear_form(self, r, r, canonical=False)
            return v - r * (num / den)
        if self.kind == 'PSL':
            if sum(v) != 0:
                raise InvalidParameters(f'{v} is not a psl weight: coordinates must sum to zero')
            return v + Weight(self.relation) * v[-1]
        if self.kind == 'SP':
            mean = sum(v) / len(v)
            return Weight(a - mean for a in v)
        return v

    def weight(self, coords):
        return self.canonical(coords)

    def eps(self, i, scale=1):
        return self.canonical(Weight.unit(self.dim, i, scale))

    def delta(self, k, scale=1):
        return self.canonical(Weight.unit(self.dim, self.n_eps + k, scale))

    # ------------------------------------------------------------------
    # roots
    # ------------------------------------------------------------------

    @cached_property
    def even_roots(self):
        return tuple(r for r in self.roots if not r.is_odd)

    @cached_property
    def odd_roots(self):
        return tuple(r for r in self.roots if r.is_odd)

    @cached_property
    def odd_plus(self):
        return tuple(r for r in self.odd_roots if r.degree > 0)

    @cached_property
    def odd_minus(self):
        return tuple(r for r in self.odd_roots if r.degree < 0)

    @cached_property
    def root_vectors(self):
        return frozenset(r.vector for r in self.roots)

    def in_g0_prime(self, root):
        '''Even roots of the reductive Lie algebra g0' (degree zero for W(n)).'''
        return not root.is_odd and (self.kind != 'W' or root.degree == 0)

    def total_dimension(self):
        return sum(r.multiplicity for r in self.roots) + self.cartan_dimension

    def even_dimension(self):
        return sum(r.multiplicity for r in self.even_roots) + self.cartan_dimension

    def g0_double_prime_dimension(self):
        '''Dimension of the complement of g0' in the even part.'''
        g0p = sum(r.multiplicity for r in self.even_roots if self.in_g0_prime(r))
        return self.even_dimension() - g0p - self.cartan_dimension

    # ------------------------------------------------------------------
    # weight strings
    # ------------------------------------------------------------------

    def parse_weight(self, text):
        return parse_weight(self, text)

    def format_weight(self, weight):
        return format_weight(self, weight)


# ----------------------------------------------------------------------------
# construction
# ----------------------------------------------------------------------------

def _gl_roots(m, n, canon):
    dim = m + n
    roots = []
    e = lambda i: Weight.unit(dim, i)
    for block in (range(m), range(m, m + n)):
        for i in block:
            for j in block:
                if i != j:
                    raw = e(i) - e(j)
                    roots.append(Root(canon(raw), raw, 0, 1, 0))
    for i in range(m):
        for k in range(m, m + n):
            raw = e(i) - e(k)
            roots.append(Root(canon(raw), raw, 1, 1, 1))
            roots.append(Root(canon(-raw), -raw, 1, 1, -1))
    return roots


def build_superalgebra(kind, *sizes):
    '''Return the SuperRootSystem of one catalog algebra.

    Sizes: GL/SL (m, n); PSL (m) or (m, m); OSP (2, n) with n even;
    P/SP (m); W (n).
    '''
    kind = str(kind).upper()
    if kind not in KINDS:
        raise InvalidParameters(f'unknown algebra kind {kind!r}, expected one of {KINDS}')
    try:
        sizes = tuple(int(s) for s in sizes)
    except (TypeError, ValueError):
        raise InvalidParameters(f'size parameters must be integers, got {sizes!r}')
    if not sizes or any(s < 0 for s in sizes):
        raise InvalidParameters(f'invalid size parameters {sizes!r} for {kind}')

    if kind in ('GL', 'SL'):
        m, n = (sizes + (0,))[:2]
        if m < 1:
            raise InvalidParameters(f'{kind}(m|n) needs m >= 1')
        if kind == 'SL' and m == n:
            raise InvalidParameters('SL(m|n) requires m != n; use PSL for m = n')
        relation = tuple([1] * m + [-1] * n) if kind == 'SL' else ()
        sys = _make(kind, (m, n), m, n, relation, [('A', tuple(range(m))), ('A', tuple(range(m, m + n)))])
        return _with_roots(sys, _gl_roots(m, n, sys.canonical))

    if kind == 'PSL':
        m = sizes[0]
        if len(sizes) > 1 and sizes[1] != m:
            raise InvalidParameters('PSL(m|n) requires m = n')
        if m < 2:
            raise InvalidParameters('PSL(m|m) requires m >= 2')
        relation = tuple([1] * m + [-1] * m)
        sys = _make('PSL', (m, m), m, m, relation, [('A', tuple(range(m))), ('A', tuple(range(m, 2 * m)))])
        return _with_roots(sys, _gl_roots(m, m, sys.canonical))

    if kind == 'OSP':
        if len(sizes) == 1:
            sizes = (2,) + sizes
        m, n = sizes[:2]
        if m != 2:
            raise InvalidParameters('only osp(2|n) is supported')
        if n < 2 or n % 2:
            raise InvalidParameters(f'OSP(2|n) requires n even and positive, got n = {n}')
        q = n // 2
        dim = q + 1
        sys = _make('OSP', (2, n), 1, q, (), [('C', tuple(range(1, dim)))])
        e = lambda i: Weight.unit(dim, i)
        roots = []
        for k in range(1, dim):
            for s in (1, -1):
                roots.append(Root(e(k) * (2 * s), e(k) * (2 * s), 0))
            for l in range(k + 1, dim):
                for s, t in itertools.product((1, -1), repeat=2):
                    v = e(k) * s + e(l) * t
                    roots.append(Root(v, v, 0))
            for s, t in itertools.product((1, -1), repeat=2):
                v = e(0) * s + e(k) * t
                roots.append(Root(v, v, 1, 1, s))
        return _with_roots(sys, roots)

    if kind in ('P', 'SP'):
        m = sizes[0]
        if m < 1 or (kind == 'SP' and m < 3):
            raise InvalidParameters(f'{kind}(m) requires m >= {3 if kind == "SP" else 1}')
        relation = tuple([1] * m) if kind == 'SP' else ()
        sys = _make(kind, (m,), m, 0, relation, [('A', tuple(range(m)))])
        e = lambda i: Weight.unit(m, i)
        roots = []
        for i in range(m):
            for j in range(m):
                if i != j:
                    raw = e(i) - e(j)
                    roots.append(Root(sys.canonical(raw), raw, 0))
        for i in range(m):
            raw = e(i) * 2
            roots.append(Root(sys.canonical(raw), raw, 1, 1, 1))
            for j in range(i + 1, m):
                raw = e(i) + e(j)
                roots.append(Root(sys.canonical(raw), raw, 1, 1, 1))
                roots.append(Root(sys.canonical(-raw), -raw, 1, 1, -1))
        return _with_roots(sys, roots)

    # W(n)
    n = sizes[0]
    if n < 1:
        raise InvalidParameters('W(n) requires n >= 1')
    ders = superderivations(n)
    grouped = {}
    for d in ders:
        w = d.weight
        if w.is_zero():
            continue
        grouped.setdefault(w, []).append(d)
    roots = [Root(w, w, ds[0].parity, len(ds), ds[0].degree) for w, ds in sorted(grouped.items())]
    sys = _make('W', (n,), n, 0, (), [('A', tuple(range(n)))], derivations=tuple(ders))
    return _with_roots(sys, roots)


def _make(kind, params, n_eps, n_delta, relation, blocks, derivations=()):
    if kind in ('P', 'SP', 'W'):
        gram = tuple([1] * n_eps)
    else:
        gram = tuple([1] * n_eps + [-1] * n_delta)
    blocks = tuple((t, c) for t, c in blocks if len(c) >= 1)
    return SuperRootSystem(kind, params, n_eps, n_delta, (), tuple(relation), gram, blocks, derivations)


def _with_roots(sys, roots):
    out = SuperRootSystem(sys.kind, sys.params, sys.n_eps, sys.n_delta, tuple(roots),
                          sys.relation, sys.gram, sys.even_blocks, sys.derivations)
    LOGGER.debug(f'built {out.label}: {len(out.even_roots)} even and {len(out.odd_roots)} odd roots')
    return out


def from_descriptor(desc):
    '''Build from a JSON descriptor {"kind": ..., "m": ..., "n": ...}.'''
    if not isinstance(desc, dict) or 'kind' not in desc:
        raise InvalidParameters(f'algebra descriptor must be an object with a "kind", got {desc!r}')
    kind = str(desc['kind']).upper()
    m, n = desc.get('m'), desc.get('n')
    if kind == 'W':
        return build_superalgebra('W', n if n is not None else m)
    if kind in ('P', 'SP'):
        return build_superalgebra(kind, m if m is not None else n)
    if kind == 'PSL':
        return build_superalgebra('PSL', m if m is not None else n)
    return build_superalgebra(kind, m, 0 if n is None else n)


def root_multiplicity(sys, alpha):
    '''Number of root vectors of weight alpha (0 when alpha is not a root).'''
    alpha = sys.canonical(alpha)
    return sum(r.multiplicity for r in sys.roots if r.vector == alpha)


def grading_dimensions(sys):
    '''Dimensions of the graded pieces g^k of the natural Z-grading.'''
    if sys.kind == 'W':
        n = sys.params[0]
        dims = {k: 0 for k in range(-1, n)}
        for d in sys.derivations:
            dims[d.degree] += 1
        for k, v in dims.items():
            expected = n * int(comb(n, k + 1, exact=True))
            if v != expected:
                raise InvalidParameters(f'W({n}) grading mismatch at degree {k}: {v} != {expected}')
        return dims
    return {-1: sum(r.multiplicity for r in sys.odd_minus),
            0: sys.even_dimension(),
            1: sum(r.multiplicity for r in sys.odd_plus)}


# ----------------------------------------------------------------------------
# weight strings
# ----------------------------------------------------------------------------

_NUMBER = re.compile(r'^[+-]?\d+(/\d+)?$')


def _parse_number(tok):
    tok = tok.strip().replace('−', '-')
    if not _NUMBER.match(tok):
        raise ParseError(f'cannot parse rational {tok!r}')
    return Fraction(tok)


def parse_weight(sys, text):
    '''Parse "1/2,0|-3/2" into a canonical weight of ``sys``.'''
    if not isinstance(text, str):
        raise ParseError(f'weight must be a string, got {text!r}')
    parts = text.strip().split('|')
    if sys.n_delta == 0 and len(parts) == 1:
        eps, dlt = parts[0], ''
    elif len(parts) == 2:
        eps, dlt = parts
    else:
        raise ParseError(f'weight {text!r} must have the form "eps|delta" for {sys.label}')
    e_vals = [_parse_number(t) for t in eps.split(',')] if eps.strip() else []
    d_vals = [_parse_number(t) for t in dlt.split(',')] if dlt.strip() else []
    if len(e_vals) != sys.n_eps or len(d_vals) != sys.n_delta:
        raise ParseError(f'weight {text!r} needs {sys.n_eps} eps and {sys.n_delta} delta coordinates')
    return sys.canonical(e_vals + d_vals)


def format_weight(sys, weight):
    eps = ','.join(str(a) for a in weight[:sys.n_eps])
    if sys.n_delta == 0:
        return eps
    return eps + '|' + ','.join(str(a) for a in weight[sys.n_eps:])


# ----------------------------------------------------------------------------
# bilinear form and Weyl group
# ----------------------------------------------------------------------------

def bilinear_form(sys, lam, mu, canonical=True):
    '''Supertrace form: (eps_i, eps_j) = delta_ij, (delta_k, delta_l) = -delta_kl.'''
    if canonical:
        lam, mu = sys.canonical(lam), sys.canonical(mu)
    val = np.dot(np.array(lam, dtype=object) * np.array(sys.gram, dtype=object),
                 np.array(mu, dtype=object))
    return _linalg.frac(val)


def coroot_pairing(sys, lam, alpha):
    '''(lam, alpha^vee) = 2 (lam, alpha) / (alpha, alpha) for a non-isotropic root.'''
    norm = bilinear_form(sys, alpha, alpha)
    if norm == 0:
        raise InvalidParameters(f'root {alpha} is isotropic and has no coroot')
    return 2 * bilinear_form(sys, lam, alpha) / norm


class WeylGroup(object):
    '''Explicit Weyl group of g0' as signed permutation matrices.'''

    def __init__(self, sys, cap=None):
        cap = WEYL_GROUP_CAP if cap is None else cap
        self.sys = sys
        order = 1
        for t, coords in sys.even_blocks:
            k = len(coords)
            order *= math.factorial(k) * (2 ** k if t == 'C' else 1)
        if order > cap:
            raise GroupTooLarge(f'|W| = {order} exceeds the cap {cap}', {'order': order, 'cap': cap})
        self.order = order
        per_block = []
        for t, coords in sys.even_blocks:
            opts = []
            for perm in itertools.permutations(range(len(coords))):
                signs = itertools.product((1, -1), repeat=len(coords)) if t == 'C' else [(1,) * len(coords)]
                for sg in signs:
                    opts.append((coords, perm, sg))
            per_block.append(opts)
        self.elements = []
        for combo in itertools.product(*per_block):
            mat = np.eye(sys.dim, dtype=int)
            for coords, perm, sg in combo:
                for a, b in enumerate(perm):
                    mat[coords[a], coords[a]] = 0
                for a, b in enumerate(perm):
                    mat[coords[b], coords[a]] = sg[a]
            self.elements.append(mat)
        LOGGER.debug(f'enumerated Weyl group of {sys.label} with {len(self.elements)} elements')

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def act(self, w, lam):
        return self.sys.canonical(np.dot(w, np.array(lam, dtype=object)))

    def dot(self, w, lam, basis):
        return self.act(w, lam + basis.rho) - basis.rho


def weyl_group(sys, cap=None):
    return WeylGroup(sys, cap)


# ----------------------------------------------------------------------------
# lattices and bases
# ----------------------------------------------------------------------------

class LatticeBasis(object):
    '''Exact coordinates with respect to a linearly independent list of vectors.'''

    def __init__(self, vectors, dim=None):
        self.vectors = tuple(Weight(v) for v in vectors)
        self.dim = dim if dim is not None else (len(self.vectors[0]) if self.vectors else 0)
        self._rows = _linalg.array(self.vectors, self.dim)
        if self.vectors and _linalg.rank(self._rows) != len(self.vectors):
            raise InvalidParameters('lattice basis vectors are linearly dependent')

    def __len__(self):
        return len(self.vectors)

    def coordinates(self, v):
        coef = _linalg.solve(self._rows, list(Weight(v)))
        return None if coef is None else tuple(coef)

    def contains(self, v):
        coef = self.coordinates(v)
        return coef is not None and all(c.denominator == 1 for c in coef)

    def unimodular(self, vectors):
        '''True when ``vectors`` form a Z-basis of this lattice.'''
        if len(vectors) != len(self.vectors):
            return False
        rows = []
        for v in vectors:
            c = self.coordinates(v)
            if c is None or any(x.denominator != 1 for x in c):
                return False
            rows.append(c)
        if not rows:
            return True
        return abs(_linalg.determinant(_linalg.array(rows))) == 1


@dataclass(frozen=True, eq=False)
class RootBasis:
    '''Simple roots B, the induced positive system and rho_B.'''
    system: SuperRootSystem
    simple: tuple
    even_positive: tuple
    odd_positive: tuple
    rho: Weight
    positive_vectors: frozenset = field(repr=False, default=frozenset())

    @cached_property
    def lattice(self):
        if self.system.kind == 'SP':
            raise InvalidParameters('sp(m) simple roots are dependent in the quotient; use P(m) for order computations')
        return LatticeBasis([r.vector for r in self.simple], self.system.dim)

    def coordinates(self, v):
        return self.lattice.coordinates(v)

    def height(self, v):
        c = self.coordinates(v)
        if c is None:
            raise InvalidParameters(f'{v} is not in the span of the simple roots')
        return sum(c, Fraction(0))

    def leq(self, mu, nu):
        '''mu <= nu in the B-order: nu - mu is a non-negative integer combination of B.'''
        c = self.coordinates(nu - mu)
        return c is not None and all(x.denominator == 1 and x >= 0 for x in c)

    def is_positive(self, root):
        return root.vector in self.positive_vectors

    @property
    def simple_even(self):
        return tuple(r for r in self.simple if self.system.in_g0_prime(r))


def _std_values(sys):
    '''Generic functional on raw coordinates that fixes the standard positive system.'''
    if sys.kind == 'W':
        n = sys.params[0]
        big = n * (n + 1) // 2 + 1
        return lambda r: big * r.degree + r.raw.dot(range(n, 0, -1))
    return lambda r: r.raw.dot(range(sys.dim, 0, -1))


def basis_from_values(sys, value):
    '''RootBasis for the positive system {alpha : value(alpha) > 0}.'''
    positive = []
    for r in sys.roots:
        v = value(r)
        if v == 0:
            raise InvalidParameters(f'functional vanishes on the root {r.vector}')
        if v > 0:
            positive.append(r)
    pos_vectors = frozenset(r.vector for r in positive)
    decomposable = set()
    vecs = sorted(pos_vectors)
    for i, a in enumerate(vecs):
        for b in vecs[i:]:
            s = a + b
            if s in pos_vectors:
                decomposable.add(s)
    simple, seen = [], set()
    for r in sorted(positive, key=value):
        if r.vector not in decomposable and r.vector not in seen:
            simple.append(r)
            seen.add(r.vector)
    even_pos = tuple(r for r in positive if not r.is_odd)
    odd_pos = tuple(r for r in positive if r.is_odd)
    rho_raw = Weight.zero(sys.dim)
    for r in even_pos:
        rho_raw = rho_raw + r.raw * (Fraction(r.multiplicity, 2))
    for r in odd_pos:
        rho_raw = rho_raw - r.raw * (Fraction(r.multiplicity, 2))
    return RootBasis(sys, tuple(simple), even_pos, odd_pos, sys.canonical(rho_raw), pos_vectors)


def standard_basis(sys):
    '''Distinguished basis: eps_1 - eps_2, ..., eps_m - delta_1, ... for gl-type,
    eps_1 - delta_1, ..., 2 delta_q for osp, eps_i - eps_{i+1}, 2 eps_m for p,
    eps_i - eps_{i+1}, eps_n for W(n) (for n <= 2).'''
    return basis_from_values(sys, _std_values(sys))


def block_basis(block_type, m):
    '''Standard simple roots of an sl(m) (type A) or sp(2m) (type C) block in local coordinates.'''
    out = [Weight.unit(m, j) - Weight.unit(m, j + 1) for j in range(m - 1)]
    if block_type == 'C':
        out.append(Weight.unit(m, m - 1, 2))
    return out


def block_positive_roots(block_type, m):
    e = lambda i: Weight.unit(m, i)
    out = [e(i) - e(j) for i in range(m) for j in range(i + 1, m)]
    if block_type in ('C', 'D'):
        out += [e(i) + e(j) for i in range(m) for j in range(i + 1, m)]
    if block_type == 'C':
        out += [e(i) * 2 for i in range(m)]
    return out


def block_rho(block_type, m):
    if block_type == 'A':
        return Weight(Fraction(m - 1, 2) - j for j in range(m))
    if block_type == 'C':
        return Weight(m - j for j in range(m))
    return Weight(m - 1 - j for j in range(m))


def dot_action(sys, w, mu, basis, group=None):
    group = group or weyl_group(sys)
    return group.dot(w, mu, basis)


# ----------------------------------------------------------------------------
# parabolic subalgebras
# ----------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ReductiveBlock:
    '''Simple factor a_i: its type and ambient coordinates with orientation signs.'''
    type: str
    coords: tuple
    signs: tuple

    @property
    def size(self):
        return len(self.coords)

    @property
    def label(self):
        return f'sl({self.size})' if self.type == 'A' else f'sp({2 * self.size})'

    def local(self, weight):
        x = [s * weight[c] for c, s in zip(self.coords, self.signs)]
        if self.type == 'A':
            mean = sum(x, Fraction(0)) / len(x)
            x = [a - mean for a in x]
        return Weight(x)

    def embed(self, local, dim):
        out = [Fraction(0)] * dim
        for c, s, a in zip(self.coords, self.signs, local):
            out[c] = s * _linalg.frac(a)
        return Weight(out)


@dataclass(frozen=True, eq=False)
class Parabolic:
    '''p = u (+) a defined by an integral functional l, with a = a_1 + ... + a_k + z.'''
    system: SuperRootSystem
    functional: tuple
    u_roots: tuple
    u_minus_roots: tuple
    a_roots: tuple
    blocks: tuple

    def level(self, v):
        return Weight(v).dot(self.functional)

    def root_level(self, root):
        return root.vector.dot(self.functional)

    def components(self, eta):
        '''Ambient projections eta^{a_i}.'''
        eta = self.system.canonical(eta)
        return [self.system.canonical(b.embed(b.local(eta), self.system.dim)) for b in self.blocks]

    def local_components(self, eta):
        eta = self.system.canonical(eta)
        return [b.local(eta) for b in self.blocks]

    def z_part(self, eta):
        eta = self.system.canonical(eta)
        out = eta
        for c in self.components(eta):
            out = out - c
        return self.system.canonical(out)

    def compose(self, locals_, z):
        out = Weight(z)
        for b, loc in zip(self.blocks, locals_):
            out = out + b.embed(loc, self.system.dim)
        return self.system.canonical(out)

    @cached_property
    def a_simple(self):
        out = []
        for b in self.blocks:
            for v in block_basis(b.type, b.size):
                out.append(self.system.canonical(b.embed(v, self.system.dim)))
        return tuple(out)

    @cached_property
    def q_a(self):
        return LatticeBasis(self.a_simple, self.system.dim)

    def same_coset(self, eta1, eta2):
        return self.q_a.contains(Weight(eta1) - Weight(eta2))

    @cached_property
    def a_vectors(self):
        return frozenset(r.vector for r in self.a_roots)

    @cached_property
    def basis(self):
        return adapted_basis(self)

    @property
    def rank_a(self):
        return len(self.a_simple)

    def signature(self):
        return tuple(sorted((b.type, b.size) for b in self.blocks))


def _union_blocks(sys, zero_roots):
    parent = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            x = parent[x]
        return x

    for r in zero_roots:
        sup = [i for i, a in enumerate(r.raw) if a != 0]
        for i in sup:
            find(i)
        for i in sup[1:]:
            parent[find(i)] = find(sup[0])
    groups = {}
    for i in list(parent):
        groups.setdefault(find(i), []).append(i)
    return [sorted(g) for g in groups.values()]


def build_parabolic(sys, functional):
    '''Split the roots by the sign of the integral functional l and identify a.'''
    l = tuple(_linalg.frac(x) for x in functional)
    if len(l) != sys.dim:
        raise InvalidParameters(f'functional needs {sys.dim} entries for {sys.label}, got {len(l)}')
    u, um, zero = [], [], []
    for r in sys.roots:
        v = r.vector.dot(l)
        if v.denominator != 1:
            raise InvalidParameters(f'functional is not integral on the root {r.vector}: {v}')
        (u if v > 0 else um if v < 0 else zero).append(r)
    bad = [r.vector for r in zero if not sys.in_g0_prime(r)]
    if bad:
        raise NotParabolic(f'zero level contains roots outside g0\': {bad}', {'roots': [list(map(str, b)) for b in bad]})

    std = _std_values(sys)
    big = 1 + max((abs(std(r)) for r in sys.roots), default=0)
    psi = lambda r: big * r.vector.dot(l) + std(r)

    blocks = []
    for coords in _union_blocks(sys, zero):
        rs = [r for r in zero if any(r.raw[c] != 0 for c in coords)]
        is_c = any(sum(1 for a in r.raw if a != 0) == 1 for r in rs)
        signs = {coords[0]: 1}
        if not is_c:
            changed = True
            while changed:
                changed = False
                for r in rs:
                    sup = [i for i, a in enumerate(r.raw) if a != 0]
                    a, b = sup
                    if a in signs and b not in signs:
                        signs[b] = -r.raw[a] * r.raw[b] * signs[a]
                        changed = True
                    elif b in signs and a not in signs:
                        signs[a] = -r.raw[a] * r.raw[b] * signs[b]
                        changed = True
        sg = [int(signs.get(c, 1)) for c in coords]
        order = sorted(range(len(coords)),
                       key=lambda i: -std(Root(Weight.unit(sys.dim, coords[i], sg[i]),
                                               Weight.unit(sys.dim, coords[i], sg[i]), 0)))
        blk = ReductiveBlock('C' if is_c else 'A', tuple(coords[i] for i in order), tuple(sg[i] for i in order))
        expected = 2 * blk.size ** 2 if is_c else blk.size * (blk.size - 1)
        if len(rs) != expected:
            raise CatalogMismatch(f'zero-level roots on coordinates {coords} do not form {blk.label}')
        blocks.append(blk)

    kinds = {b.type for b in blocks}
    if not kinds <= _CATALOG[sys.kind] or sum(1 for b in blocks if b.type == 'C') > 1:
        raise CatalogMismatch(f'reductive part {[b.label for b in blocks]} is not in the catalog for {sys.label}')
    blocks.sort(key=lambda b: b.coords[0])
    par = Parabolic(sys, l, tuple(u), tuple(um), tuple(zero), tuple(blocks))
    LOGGER.debug(f'parabolic of {sys.label}: |u| = {len(u)}, a = {[b.label for b in blocks]}')
    object.__setattr__(par, '_psi', psi)
    return par


def adapted_basis(par):
    '''Basis B contained in the roots of p whose restriction to each a_i is standard.'''
    return basis_from_values(par.system, par._psi)


def parabolic_from_blocks(sys, eps_sizes=(), delta_sizes=(), c_size=0):
    '''Integral functional whose parabolic has the requested reductive part.

    ``eps_sizes``/``delta_sizes`` are consecutive coordinate groups (gl-type
    families; for osp ``delta_sizes`` are gl groups and ``c_size`` the sp part).
    '''
    def assign(sizes, values):
        out = []
        for size, val in zip(sizes, values):
            out += [val] * size
        return out

    want = tuple(sorted([('A', s) for s in list(eps_sizes) + list(delta_sizes) if s >= 2] +
                        ([('C', c_size)] if c_size else [])))
    for offset in range(0, 50):
        if sys.kind in ('GL', 'SL', 'PSL'):
            ge, gd = len(eps_sizes), len(delta_sizes)
            l = assign(eps_sizes, [3 * (ge - g) + offset for g in range(ge)]) + \
                assign(delta_sizes, [-3 * (g + 1) - offset for g in range(gd)])
            if sys.kind == 'PSL':
                shift = Fraction(sum(l[:sys.n_eps]) - sum(l[sys.n_eps:]), sys.n_delta)
                l = [x * sys.n_delta for x in l[:sys.n_eps]] + [(x + shift) * sys.n_delta for x in l[sys.n_eps:]]
        elif sys.kind == 'OSP':
            gd = len(delta_sizes)
            l = [4 * (gd + 1) + offset + 1] + assign(delta_sizes, [2 * (gd - g) + offset for g in range(gd)]) + [0] * c_size
        else:
            ge = len(eps_sizes)
            l = assign(eps_sizes, [(3 + offset) ** (ge - g) for g in range(ge)])
            if sys.kind == 'SP':
                mean = Fraction(sum(l), len(l))
                l = [(x - mean) * len(l) for x in l]
        if len(l) != sys.dim:
            raise InvalidParameters(f'block sizes do not add up to the {sys.dim} coordinates of {sys.label}')
        try:
            par = build_parabolic(sys, l)
        except (NotParabolic, InvalidParameters, CatalogMismatch):
            continue
        if par.signature() == want:
            return tuple(_linalg.frac(x) for x in l)
    raise NoneFound(f'no functional found for blocks {want} in {sys.label}')


# ----------------------------------------------------------------------------
# commuting sets
# ----------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class CommutingSet:
    roots: tuple
    parabolic: Parabolic

    def __iter__(self):
        return iter(self.roots)

    def __len__(self):
        return len(self.roots)


def _is_commuting(roots, a_vectors):
    return all((a + b) not in a_vectors for a, b in itertools.combinations(roots, 2))


def find_commuting_basis(par, search_limit=6):
    '''Commuting set of roots of a that is a Z-basis of Q_a.'''
    if not par.blocks:
        raise InvalidParameters('a has no simple factor; the commuting set is empty')
    dim = par.system.dim
    template = []
    for b in par.blocks:
        e = lambda i: Weight.unit(b.size, i)
        if b.type == 'A':
            local = [e(0) - e(j) for j in range(1, b.size)]
        else:
            local = [e(0) * 2] + [e(0) + e(j) for j in range(1, b.size)]
        template += [par.system.canonical(b.embed(v, dim)) for v in local]
    if _is_commuting(template, par.a_vectors) and par.q_a.unimodular(template):
        return CommutingSet(tuple(template), par)
    LOGGER.info('commuting template rejected, falling back to exhaustive search')
    if par.rank_a > search_limit:
        raise NoneFound(f'rank {par.rank_a} too large for exhaustive commuting-set search')
    for cand in itertools.combinations(sorted(par.a_vectors), par.rank_a):
        if _is_commuting(cand, par.a_vectors) and par.q_a.unimodular(cand):
            return CommutingSet(tuple(cand), par)
    raise NoneFound('no commuting basis of Q_a exists among the roots of a')
