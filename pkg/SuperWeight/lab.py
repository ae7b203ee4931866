'''
Small-rank laboratory: explicit matrix realizations of gl(m|n) and W(2),
PBW models of Verma, Kac and parabolically induced modules on finite
weight windows, the maximal submodule Z meeting the top slice trivially,
simple quotients and the brute-force oracles used to check the character
engine.

Weights in the lab are raw gl coordinates (sl algebras are realized
inside gl, where the identity acts by a scalar).
'''

import itertools
import logging
import os
from fractions import Fraction

import numpy as np

from . import _linalg, charformula, rootdata
from .errors import DepthTooLarge, InvalidParameters, InvariantViolation, WindowTooSmall
from .rootdata import Weight

LOGGER = logging.getLogger(__name__)

LAB_DEPTH_CAP = int(os.environ.get('SUPERWEIGHT_LAB_DEPTH_CAP', 24))

_CATALOG = {
    'sl(2)': ('GL', 2, 0), 'gl(2)': ('GL', 2, 0),
    'sl(3)': ('GL', 3, 0), 'gl(3)': ('GL', 3, 0),
    'gl(1|1)': ('GL', 1, 1),
    'sl(2|1)': ('GL', 2, 1), 'gl(2|1)': ('GL', 2, 1),
    'W(2)': ('W', 2),
}


class LabAlgebra(object):
    '''Basis elements as exact matrices with parity, weight and Z-degree.

    Brackets are supercommutators of the matrices expressed back in the basis.
    '''

    def __init__(self, name, system, names, matrices, parities, weights, degrees, cartan):
        self.name = name
        self.system = system
        self.names = list(names)
        self.matrices = list(matrices)
        self.parities = list(parities)
        self.weights = [Weight(w) for w in weights]
        self.degrees = list(degrees)
        self.cartan = dict(cartan)
        self.basis = rootdata.standard_basis(system)
        size = self.matrices[0].shape[0]
        self._rows = _linalg.array([list(m.flat) for m in self.matrices], size * size)
        self._brackets = {}

    def __len__(self):
        return len(self.names)

    def index(self, name):
        try:
            return self.names.index(name)
        except ValueError:
            raise InvalidParameters(f'{self.name} has no element {name!r}; known: {self.names}')

    def sign(self, x, y):
        return -1 if self.parities[x] and self.parities[y] else 1

    def bracket(self, x, y):
        '''[x, y] = xy - (-1)^{|x||y|} yx as {element: coefficient}.'''
        key = (x, y)
        if key not in self._brackets:
            a, b = self.matrices[x], self.matrices[y]
            comm = _linalg.matmul(a, b) - _linalg.matmul(b, a) * self.sign(x, y)
            coef = _linalg.solve(self._rows, list(comm.flat))
            if coef is None:
                raise InvariantViolation(f'[{self.names[x]}, {self.names[y]}] left the span of {self.name}')
            self._brackets[key] = {i: c for i, c in enumerate(coef) if c != 0}
        return self._brackets[key]

    def height(self, v):
        return self.basis.height(v)

    def is_cartan(self, x):
        return x in self.cartan

    @property
    def positive(self):
        return [i for i in range(len(self)) if i not in self.cartan and self.weights[i] in self.basis.positive_vectors]

    @property
    def negative(self):
        return [i for i in range(len(self)) if i not in self.cartan and self.weights[i] not in self.basis.positive_vectors]

    @property
    def simple_raising(self):
        simple = {r.vector for r in self.basis.simple}
        return [i for i in self.positive if self.weights[i] in simple]

    def root_element(self, alpha):
        '''Unique basis element of weight alpha.'''
        hits = [i for i in range(len(self)) if i not in self.cartan and self.weights[i] == Weight(alpha)]
        if len(hits) != 1:
            raise InvalidParameters(f'{alpha} does not label a unique root vector of {self.name}')
        return hits[0]


def _gl_algebra(name, m, n):
    size = m + n
    system = rootdata.build_superalgebra('GL', m, n)
    names, mats, pars, wts, degs, cartan = [], [], [], [], [], {}
    for i in range(size):
        for j in range(size):
            e = _linalg.zeros(size, size)
            e[i, j] = Fraction(1)
            names.append(f'E{i + 1}{j + 1}')
            mats.append(e)
            pars.append(int(i >= m) ^ int(j >= m))
            wts.append(Weight.unit(size, i) - Weight.unit(size, j))
            degs.append(int(i < m <= j) - int(j < m <= i))
            if i == j:
                cartan[len(names) - 1] = i
    return LabAlgebra(name, system, names, mats, pars, wts, degs, cartan)


def _w_algebra(name, n):
    system = rootdata.build_superalgebra('W', n)
    names, mats, pars, wts, degs, cartan = [], [], [], [], [], {}
    for d in system.derivations:
        names.append(d.name)
        mats.append(rootdata.superderivation_matrix(d))
        pars.append(d.parity)
        wts.append(d.weight)
        degs.append(d.degree)
        if d.support == (d.target,):
            cartan[len(names) - 1] = d.target
    return LabAlgebra(name, system, names, mats, pars, wts, degs, cartan)


def lab_algebra(name):
    if name not in _CATALOG:
        raise InvalidParameters(f'unknown lab algebra {name!r}; catalog: {sorted(_CATALOG)}')
    entry = _CATALOG[name]
    if entry[0] == 'W':
        return _w_algebra(name, entry[1])
    return _gl_algebra(name, entry[1], entry[2])


# ----------------------------------------------------------------------------
# modules
# ----------------------------------------------------------------------------

def _add(out, terms, scale=1):
    for k, v in terms.items():
        s = out.get(k, 0) + scale * v
        if s:
            out[k] = s
        else:
            out.pop(k, None)


class WeightModule(object):
    '''Finite window of a weight module: ordered bases per weight and exact action matrices.'''

    algebra = None
    top = None

    def weights(self):
        raise NotImplementedError

    def dim(self, weight):
        raise NotImplementedError

    def action(self, x, weight):
        '''Matrix of x from M^weight to M^{weight + wt x}; None when the image leaves the window.'''
        raise NotImplementedError

    def weight_dimension(self, weight):
        return self.dim(Weight(weight))

    def total_dimension(self):
        return sum(self.dim(w) for w in self.weights())


class OneDimBase(object):
    '''One-dimensional module of weight lam: the Cartan acts by lam, every root vector by zero.'''

    def __init__(self, algebra, lam):
        self.algebra = algebra
        self.top = Weight(lam)
        self.keys = [()]

    def weight(self, key):
        return self.top

    def act(self, x, key):
        if self.algebra.is_cartan(x):
            c = self.top[self.algebra.cartan[x]]
            return {key: c} if c else {}
        return {}


class InducedModule(WeightModule):
    '''U(n) (x) R in PBW form, n spanned by ``lowering`` (ordered), truncated at B-height ``depth``.

    Keys are (exponent tuple over ``lowering``, base key). Elements outside
    ``lowering`` act on base keys through ``base.act``; ``raising`` lists the
    generators of the nilradical that fixes the top slice.
    '''

    def __init__(self, algebra, lowering, base, depth, raising, kind='induced'):
        if depth < 0:
            raise InvalidParameters(f'depth must be non-negative, got {depth}')
        if depth > LAB_DEPTH_CAP:
            raise DepthTooLarge(f'depth {depth} exceeds the lab cap {LAB_DEPTH_CAP}',
                                {'depth': depth, 'cap': LAB_DEPTH_CAP})
        self.algebra = algebra
        self.lowering = list(lowering)
        self.base = base
        self.depth = depth
        self.raising = list(raising)
        self.kind = kind
        self.top = base.top
        self._pos = {x: i for i, x in enumerate(self.lowering)}
        self._zero = (0,) * len(self.lowering)
        self._act = {}
        self._left = {}
        self._actions = {}
        self._enumerate()

    def _enumerate(self):
        alg = self.algebra
        gen_heights = [alg.height(-alg.weights[g]) for g in self.lowering]
        if any(h.denominator != 1 or h < 1 for h in gen_heights):
            raise InvalidParameters(f'{self.kind}: lowering generators must have positive integral height')
        self.spaces = {}
        for r in self.base.keys:
            h0 = alg.height(self.top - self.base.weight(r))
            if h0 > self.depth:
                continue

            def grow(i, exps, h):
                if i == len(self.lowering):
                    key = (tuple(exps), r)
                    self.spaces.setdefault(self.key_weight(key), []).append(key)
                    return
                g = self.lowering[i]
                e = 0
                while h + e * gen_heights[i] <= self.depth:
                    if alg.parities[g] and e > 1:
                        break
                    grow(i + 1, exps + [e], h + e * gen_heights[i])
                    e += 1

            grow(0, [], h0)
        self.index = {w: {k: i for i, k in enumerate(keys)} for w, keys in self.spaces.items()}
        LOGGER.debug(f'{self.kind} module over {alg.name}: {len(self.spaces)} weights, '
                     f'{sum(len(v) for v in self.spaces.values())} basis vectors to depth {self.depth}')

    def key_weight(self, key):
        exps, r = key
        w = self.base.weight(r)
        for e, g in zip(exps, self.lowering):
            if e:
                w = w + self.algebra.weights[g] * e
        return w

    def weights(self):
        return sorted(self.spaces, key=lambda w: (self.algebra.height(self.top - w), w))

    def dim(self, weight):
        return len(self.spaces.get(Weight(weight), ()))

    def slice_weights(self):
        return {self.base.weight(r) for r in self.base.keys if (self._zero, r) in self.index.get(self.base.weight(r), {})}

    def act(self, x, key):
        '''x . key as {key: coefficient} (exact, no truncation).'''
        memo = (x, key)
        if memo in self._act:
            return self._act[memo]
        if x in self._pos:
            out = self.left_mult(self._pos[x], key)
        else:
            exps, r = key
            j = next((i for i, e in enumerate(exps) if e), None)
            if j is None:
                out = {(self._zero, r2): c for r2, c in self.base.act(x, r).items()}
            else:
                alg = self.algebra
                y = self.lowering[j]
                rest = (exps[:j] + (exps[j] - 1,) + exps[j + 1:], r)
                out = {}
                for z, c in alg.bracket(x, y).items():
                    _add(out, self.act(z, rest), c)
                s = alg.sign(x, y)
                for k2, c2 in self.act(x, rest).items():
                    _add(out, self.left_mult(j, k2), s * c2)
        self._act[memo] = out
        return out

    def left_mult(self, i, key):
        '''lowering[i] . key, straightened back into PBW order.'''
        memo = (i, key)
        if memo in self._left:
            return self._left[memo]
        alg = self.algebra
        exps, r = key
        y = self.lowering[i]
        j = next((k for k, e in enumerate(exps) if e), None)
        if j is None or i < j or (i == j and not alg.parities[y]):
            new = exps[:i] + (exps[i] + 1,) + exps[i + 1:]
            out = {(new, r): Fraction(1)}
        elif i == j:
            rest = (exps[:i] + (0,) + exps[i + 1:], r)
            out = {}
            for z, c in alg.bracket(y, y).items():
                _add(out, self.act(z, rest), c / 2)
        else:
            z = self.lowering[j]
            rest = (exps[:j] + (exps[j] - 1,) + exps[j + 1:], r)
            out = {}
            for w, c in alg.bracket(y, z).items():
                _add(out, self.act(w, rest), c)
            s = alg.sign(y, z)
            for k2, c2 in self.left_mult(i, rest).items():
                _add(out, self.left_mult(j, k2), s * c2)
        self._left[memo] = out
        return out

    def action(self, x, weight):
        weight = Weight(weight)
        memo = (x, weight)
        if memo in self._actions:
            return self._actions[memo]
        src = self.spaces.get(weight, [])
        target = weight + self.algebra.weights[x]
        tindex = self.index.get(target, {})
        mat = _linalg.zeros(len(tindex), len(src))
        for col, key in enumerate(src):
            for k2, c in self.act(x, key).items():
                row = tindex.get(k2)
                if row is None:
                    self._actions[memo] = None
                    return None
                mat[row, col] += c
        self._actions[memo] = mat
        return mat


def _check_depth(depth):
    if depth < 1:
        raise InvalidParameters(f'depth must be at least 1, got {depth}')


def construct_verma(algebra, lam, depth):
    '''M_B(lam) truncated to B-height <= depth.'''
    _check_depth(depth)
    lam = algebra.system.canonical(lam)
    lowering = sorted(algebra.negative, key=lambda g: (algebra.height(-algebra.weights[g]), g))
    return InducedModule(algebra, lowering, OneDimBase(algebra, lam), depth,
                         algebra.simple_raising, kind='verma')


def construct_kac(algebra, lam=None, depth=None, base=None):
    '''K(R) = U(g^{-1}) (x) R induced from g^0 + g^1 (W_{>=0} for W(n)).

    R defaults to the simple finite-dimensional g^0-module of highest weight
    ``lam``; any base object with ``keys``, ``weight`` and ``act`` may be passed
    instead (e.g. ``ModuleBase(gl_verma_base(...))``). The default depth covers
    the whole Kac module.
    '''
    if base is None:
        if lam is None:
            raise InvalidParameters('construct_kac needs lam or a base module')
        base = simple_degree_zero_base(algebra, lam)
    lowering = sorted((g for g in range(len(algebra)) if algebra.degrees[g] < 0),
                      key=lambda g: (algebra.height(-algebra.weights[g]), g))
    if depth is None:
        lowest = min((algebra.height(base.top - base.weight(k)) for k in base.keys), default=0)
        deepest = max((algebra.height(base.top - base.weight(k)) for k in base.keys), default=0)
        depth = int(deepest - lowest + sum(algebra.height(-algebra.weights[g]) for g in lowering))
    _check_depth(max(depth, 1))
    raising = [g for g in range(len(algebra)) if algebra.degrees[g] > 0]
    return InducedModule(algebra, lowering, base, max(depth, 1), raising, kind='kac')


def gl_verma_base(algebra, lam, depth):
    '''Verma module of the degree-zero part, with the positive degrees acting trivially.'''
    lowering = sorted((g for g in algebra.negative if algebra.degrees[g] == 0),
                      key=lambda g: (algebra.height(-algebra.weights[g]), g))
    raising = [g for g in algebra.simple_raising if algebra.degrees[g] == 0]
    return InducedModule(algebra, lowering, OneDimBase(algebra, algebra.system.canonical(lam)), depth,
                         raising, kind='degree-zero verma')


class ModuleBase(object):
    '''Weight basis of a module over the degree-zero part, with positive degrees acting by zero.'''

    def __init__(self, module):
        self.module = module
        self.algebra = module.algebra
        self.top = module.top
        self.keys = [(w, i) for w in module.weights() for i in range(module.dim(w))]

    def weight(self, key):
        return key[0]

    def act(self, x, key):
        alg = self.algebra
        if alg.degrees[x] > 0:
            return {}
        if alg.degrees[x] < 0:
            raise InvalidParameters(f'{alg.names[x]} does not preserve the degree-zero part')
        w, i = key
        mat = self.module.action(x, w)
        if mat is None:
            raise WindowTooSmall(f'{alg.names[x]} leaves the degree-zero window at {w}',
                                 {'undecided': [','.join(str(a) for a in w)]})
        t = w + alg.weights[x]
        return {(t, r): mat[r, i] for r in range(mat.shape[0]) if mat[r, i] != 0}


def _lowest_degree_zero(algebra, lam):
    out = list(lam)
    for _, coords in algebra.system.even_blocks:
        vals = [lam[c] for c in coords]
        for c, v in zip(coords, reversed(vals)):
            out[c] = v
    return Weight(out)


def simple_degree_zero_base(algebra, lam):
    '''Finite-dimensional simple g^0-module L_0(lam) as a base for Kac induction.'''
    lam = algebra.system.canonical(lam)
    for t, coords in algebra.system.even_blocks:
        if not charformula._is_dominant(t, Weight(lam[c] for c in coords)):
            raise InvalidParameters(f'{lam} is not dominant integral for the degree-zero part')
    span = algebra.height(lam - _lowest_degree_zero(algebra, lam))
    step = max((algebra.height(-algebra.weights[g]) for g in algebra.negative if algebra.degrees[g] == 0),
               default=0)
    verma = gl_verma_base(algebra, lam, int(span + step))
    return ModuleBase(simple_quotient(verma))



# ----------------------------------------------------------------------------
# subspaces, submodules and quotients
# ----------------------------------------------------------------------------

def _empty(n):
    return np.empty((0, n), dtype=object)


def zero_submodule(module):
    return {w: _empty(module.dim(w)) for w in module.weights()}


def full_submodule(module):
    return {w: _linalg.identity(module.dim(w)) for w in module.weights()}


def submodule_dimension(sub):
    return {w: s.shape[0] for w, s in sub.items()}


def same_submodule(a, b):
    keys = set(a) | set(b)
    return all(_linalg.same_span(a[w], b[w]) for w in keys)


def contains_submodule(big, small):
    return all(_linalg.span_contains(big[w], small[w]) for w in small)


def intersect_submodules(a, b):
    return {w: _linalg.intersect(a[w], b[w]) if a[w].shape[0] and b[w].shape[0] else _empty(a[w].shape[1])
            for w in a}


def generated_submodule(module, vectors):
    '''Smallest subspace family containing ``vectors`` and stable under every element (inside the window).'''
    sub = zero_submodule(module)
    todo = []
    for w, rows in vectors.items():
        w = Weight(w)
        sub[w] = _linalg.span_sum(sub[w], _linalg.array(rows, module.dim(w)))
        todo.append(w)
    alg = module.algebra
    while todo:
        w = todo.pop()
        for x in range(len(alg)):
            mat = module.action(x, w)
            if mat is None or sub[w].shape[0] == 0:
                continue
            t = w + alg.weights[x]
            if t not in sub:
                continue
            img = _linalg.image(mat, sub[w])
            if not _linalg.span_contains(sub[t], img):
                sub[t] = _linalg.span_sum(sub[t], img)
                todo.append(t)
    return sub


def maximal_trivial_intersection_submodule(module, slice_weights=None, raising=None):
    '''Z: the largest submodule meeting the top slice trivially, decided weight by weight from the top.'''
    slice_weights = set(slice_weights if slice_weights is not None else module.slice_weights())
    raising = module.raising if raising is None else raising
    alg = module.algebra
    z = {}
    undecided = []
    for w in module.weights():
        n = module.dim(w)
        if w in slice_weights:
            z[w] = _empty(n)
            continue
        space = _linalg.identity(n)
        for x in raising:
            mat = module.action(x, w)
            if mat is None:
                undecided.append(w)
                break
            t = w + alg.weights[x]
            target = z.get(t, _empty(mat.shape[0]))
            space = _linalg.intersect(space, _linalg.preimage(mat, target, n)) if space.shape[0] else space
        z[w] = space
    if undecided:
        raise WindowTooSmall(f'Z is undecided at {len(undecided)} weights',
                             {'undecided': [','.join(str(a) for a in w) for w in undecided]})
    return z


class QuotientModule(WeightModule):
    '''parent / sub on the parent window.'''

    def __init__(self, parent, sub):
        self.parent = parent
        self.algebra = parent.algebra
        self.top = parent.top
        self.sub = sub
        self._basis = {}
        self._coords = {}
        for w in parent.weights():
            n = parent.dim(w)
            s = sub.get(w, _empty(n))
            comp = _linalg.complement(s, n)
            self._basis[w] = comp
            full = np.concatenate([comp, s], axis=0) if s.shape[0] else comp
            self._coords[w] = (_linalg.inverse(full) if n else full, comp.shape[0])

    def weights(self):
        return self.parent.weights()

    def dim(self, weight):
        b = self._basis.get(Weight(weight))
        return 0 if b is None else b.shape[0]

    def lift(self, weight, rows):
        return _linalg.matmul(_linalg.array(rows, self.dim(weight)), self._basis[Weight(weight)])

    def project(self, weight, rows):
        inv, k = self._coords[Weight(weight)]
        return _linalg.matmul(rows, inv)[:, :k]

    def action(self, x, weight):
        weight = Weight(weight)
        t = weight + self.algebra.weights[x]
        if self.dim(weight) == 0:
            return _linalg.zeros(self.dim(t), 0)
        mat = self.parent.action(x, weight)
        if mat is None:
            return None
        if t not in self._basis:
            return _linalg.zeros(0, self.dim(weight))
        images = _linalg.matmul(self._basis[weight], mat.T)
        return self.project(t, images).T.copy()


def quotient_module(module, sub):
    return QuotientModule(module, sub)


def simple_quotient(module):
    '''L = M / Z for an induced module M.'''
    return QuotientModule(module, maximal_trivial_intersection_submodule(module))


def simple_highest_weight_module(algebra, lam, depth):
    return simple_quotient(construct_verma(algebra, lam, depth))


def kac_is_simple(algebra, lam, depth=None):
    kac = construct_kac(algebra, lam, depth)
    return all(s.shape[0] == 0 for s in maximal_trivial_intersection_submodule(kac).values())


class DirectSumModule(WeightModule):

    def __init__(self, first, second):
        if first.algebra is not second.algebra:
            raise InvalidParameters('direct summands must share the lab algebra')
        self.algebra = first.algebra
        self.parts = (first, second)
        self.top = first.top

    def weights(self):
        ws = set(self.parts[0].weights()) | set(self.parts[1].weights())
        return sorted(ws, key=lambda w: (-sum(w), w))

    def dim(self, weight):
        return sum(p.dim(weight) for p in self.parts)

    def action(self, x, weight):
        weight = Weight(weight)
        mats = []
        for p in self.parts:
            if p.dim(weight) == 0:
                t = weight + self.algebra.weights[x]
                mats.append(_linalg.zeros(p.dim(t), 0))
                continue
            m = p.action(x, weight)
            if m is None:
                return None
            mats.append(m)
        out = _linalg.zeros(sum(m.shape[0] for m in mats), sum(m.shape[1] for m in mats))
        r = c = 0
        for m in mats:
            out[r:r + m.shape[0], c:c + m.shape[1]] = m
            r += m.shape[0]
            c += m.shape[1]
        return out

    def summand(self, index, sub):
        '''Embed a submodule family of one summand.'''
        out = {}
        for w in self.weights():
            d0, d1 = self.parts[0].dim(w), self.parts[1].dim(w)
            rows = sub.get(w, _empty(self.parts[index].dim(w)))
            emb = _linalg.zeros(rows.shape[0], d0 + d1)
            if rows.shape[0]:
                if index == 0:
                    emb[:, :d0] = rows
                else:
                    emb[:, d0:] = rows
            out[w] = emb
        return out


# ----------------------------------------------------------------------------
# checks and oracles
# ----------------------------------------------------------------------------

def bracket_residual(module, elements=None):
    '''Violations of x(yv) - (-1)^{|x||y|} y(xv) = [x, y]v and of h v = lam(h) v on the window.'''
    alg = module.algebra
    elements = list(range(len(alg))) if elements is None else elements
    bad = []
    for w in module.weights():
        n = module.dim(w)
        if n == 0:
            continue
        for h, c in alg.cartan.items():
            mat = module.action(h, w)
            if mat is not None and not _linalg.is_zero(mat - _linalg.identity(n) * w[c]):
                bad.append(('cartan', alg.names[h], w))
        for x, y in itertools.combinations(elements, 2):
            ay, ax = module.action(y, w), module.action(x, w)
            if ay is None or ax is None:
                continue
            axy = module.action(x, w + alg.weights[y])
            ayx = module.action(y, w + alg.weights[x])
            if axy is None or ayx is None:
                continue
            lhs = _linalg.matmul(axy, ay) - _linalg.matmul(ayx, ax) * alg.sign(x, y)
            rhs = _linalg.zeros(*lhs.shape)
            ok = True
            for z, c in alg.bracket(x, y).items():
                az = module.action(z, w)
                if az is None:
                    ok = False
                    break
                if az.shape == rhs.shape:
                    rhs = rhs + az * c
            if ok and not _linalg.is_zero(lhs - rhs):
                bad.append((alg.names[x], alg.names[y], w))
    return bad


def invariants_h0(module, elements, weights=None):
    '''Common kernel of ``elements`` on each weight space.'''
    out = {}
    for w in (weights or module.weights()):
        n = module.dim(w)
        mats = []
        for x in elements:
            mat = module.action(x, w)
            if mat is None:
                raise WindowTooSmall(f'{module.algebra.names[x]} leaves the window at {w}',
                                     {'undecided': [','.join(str(a) for a in w)]})
            if mat.shape[0]:
                mats.append(mat)
        if not mats:
            out[w] = _linalg.identity(n)
        else:
            out[w] = _linalg.nullspace(np.concatenate(mats, axis=0), n)
    return out


def coset_degree(module, base, lattice):
    '''Largest weight multiplicity of the window on base + lattice.'''
    base = Weight(base)
    return max((module.dim(w) for w in module.weights() if lattice.contains(w - base)), default=0)


def verma_composition_oracle(algebra, lam, depth):
    '''[(mu, [M(lam) : L(mu)])] for factors with highest weight in the window, by character peeling.'''
    lam = algebra.system.canonical(lam)
    verma = construct_verma(algebra, lam, depth)
    factors = []
    simples = []
    for w in verma.weights():
        rem = verma.dim(w) - sum(k * mod.dim(w) for (_, k), mod in zip(factors, simples))
        if rem < 0:
            raise InvariantViolation(f'negative remainder {rem} at {w} while peeling M({lam})')
        if rem:
            factors.append((w, rem))
            sub_depth = depth - int(algebra.height(lam - w))
            simples.append(simple_highest_weight_module(algebra, w, sub_depth) if sub_depth >= 1
                           else _PointModule(w))
            LOGGER.debug(f'composition factor L({w}) with multiplicity {rem}')
    return factors


class _PointModule(object):
    '''Simple module seen only at its highest weight (depth-zero window).'''

    def __init__(self, lam):
        self.lam = lam

    def dim(self, w):
        return int(Weight(w) == self.lam)


# ----------------------------------------------------------------------------
# Freudenthal
# ----------------------------------------------------------------------------

def _simple_roots(block_type, m):
    if block_type == 'D':
        out = [Weight.unit(m, j) - Weight.unit(m, j + 1) for j in range(m - 1)]
        if m >= 2:
            out.append(Weight.unit(m, m - 2) + Weight.unit(m, m - 1))
        return out
    return rootdata.block_basis(block_type, m)


def _dominant(block_type, mu):
    if block_type == 'A':
        return Weight(sorted(mu, reverse=True))
    vals = sorted((abs(a) for a in mu), reverse=True)
    if block_type == 'D' and sum(1 for a in mu if a < 0) % 2 and all(a != 0 for a in mu):
        vals[-1] = -vals[-1]
    return Weight(vals)


def freudenthal_character(block_type, lam):
    '''{mu: dim L(lam)^mu} for gl (A), sp (C) or so(2m) (D) by Freudenthal's recursion.'''
    lam = Weight(lam)
    m = len(lam)
    if not charformula._is_dominant(block_type, lam):
        raise InvalidParameters(f'{lam} is not dominant integral for type {block_type}')
    lattice = rootdata.LatticeBasis(_simple_roots(block_type, m), m) if m > 1 or block_type != 'A' else None
    pos = rootdata.block_positive_roots(block_type, m)
    rho = rootdata.block_rho(block_type, m)
    norm = (lam + rho).dot(lam + rho)
    memo = {}

    def below(mu):
        if lattice is None:
            return mu == lam
        c = lattice.coordinates(lam - mu)
        return c is not None and all(a.denominator == 1 and a >= 0 for a in c)

    def mult(mu):
        d = _dominant(block_type, mu)
        if d in memo:
            return memo[d]
        if not below(d):
            return 0
        if d == lam:
            return 1
        num = Fraction(0)
        for a in pos:
            k = 1
            while below(_dominant(block_type, d + a * k)):
                nu = d + a * k
                num += mult(nu) * nu.dot(a)
                k += 1
        val = 2 * num / (norm - (d + rho).dot(d + rho))
        if val.denominator != 1:
            raise InvariantViolation(f'Freudenthal recursion gave {val} at {d}')
        memo[d] = int(val)
        return memo[d]

    out = {}
    frontier = [lam]
    seen = {lam}
    simple = _simple_roots(block_type, m)
    while frontier:
        nxt = []
        for mu in frontier:
            out[mu] = mult(mu)
            for a in simple:
                nu = mu - a
                if nu not in seen and below(_dominant(block_type, nu)):
                    seen.add(nu)
                    nxt.append(nu)
        frontier = nxt
    return {mu: v for mu, v in out.items() if v}


def freudenthal_multiplicity(block_type, lam, mu):
    return freudenthal_character(block_type, lam).get(Weight(mu), 0)
