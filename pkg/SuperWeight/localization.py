'''
Localization of lab modules along a commuting set of even root vectors
f_1, ..., f_l and the twisted modules Psi^c = f_1^{c_1} ... f_l^{c_l} M_F,
realized on finite windows.

One root vector is inverted at a time: localizing along f_1, ..., f_l is the
tower (...(M_{f_1})_{f_2}...)_{f_l}. Inside one layer a vector of (M_F)^xi is
stored as m in M^{xi + k beta} standing for f^{-k} m, where beta is the weight
of f and k = level(xi) is the first position from which every f-step along the
chain is bijective inside the window.
'''

import logging
import numbers
from dataclasses import dataclass, field
from fractions import Fraction

import sympy

from . import _linalg
from .errors import InvalidParameters, InvariantViolation, NotBijectiveInput, NotInjective, WindowTooSmall
from .lab import WeightModule, generated_submodule, intersect_submodules, same_submodule
from .rootdata import Weight

LOGGER = logging.getLogger(__name__)


def binomial(c, i):
    '''(c choose i) for rational c.'''
    c = _linalg.frac(c)
    return _linalg.frac(sympy.binomial(sympy.Rational(c.numerator, c.denominator), i))


def ad_powers(algebra, f, x, sign=1):
    '''[x, (sign ad f) x, (sign ad f)^2 x, ...] up to the last nonzero term.

    ``x`` is a basis index or a combination {index: coefficient}.
    '''
    out = []
    cur = dict(x) if isinstance(x, dict) else {x: Fraction(1)}
    while cur:
        out.append(cur)
        if len(out) > len(algebra) + 1:
            raise InvariantViolation(f'ad {algebra.names[f]} is not nilpotent')
        nxt = {}
        for z, c in cur.items():
            for w, d in algebra.bracket(f, z).items():
                s = nxt.get(w, 0) + sign * c * d
                if s:
                    nxt[w] = s
                else:
                    nxt.pop(w, None)
        cur = nxt
    return out


def ad_terms(algebra, roots, x):
    '''[((i_1, ..., i_l), (ad f_1)^{i_1} ... (ad f_l)^{i_l} x)] over the nonzero terms.'''
    out = [((), {x: Fraction(1)})]
    for f in roots:
        out = [(exps + (i,), t) for exps, terms in out for i, t in enumerate(ad_powers(algebra, f, terms))]
    return out


def nilpotence_degree(algebra, f, x):
    return len(ad_powers(algebra, f, x)) - 1


def _combination(module, terms, weight):
    '''sum_z c_z (matrix of z on ``weight``); None if some term leaves the window.'''
    total = None
    for z, c in terms.items():
        mat = module.action(z, weight)
        if mat is None:
            return None
        total = mat * c if total is None else total + mat * c
    return total


def root_vectors(algebra, commuting, sign=-1):
    '''Lab elements of weight sign * gamma for the roots gamma of a commuting set.'''
    return tuple(algebra.root_element(Weight(gamma) * sign) for gamma in commuting)


class LocalizedModule(WeightModule):
    '''M_F for F = {f^k}: window of weights xi - k beta, 0 <= k <= ``extend``.

    ``module`` may itself be localized along root vectors commuting with f;
    ``roots`` lists every root vector inverted so far, innermost first.
    '''

    def __init__(self, module, f, extend=3):
        alg = module.algebra
        if alg.parities[f]:
            raise InvalidParameters(f'{alg.names[f]} is odd; localization needs an even root vector')
        if alg.is_cartan(f):
            raise InvalidParameters(f'{alg.names[f]} is a Cartan element')
        inner = tuple(getattr(module, 'roots', ()))
        if f in inner:
            raise InvalidParameters(f'{alg.names[f]} is already inverted')
        for g in inner:
            if alg.bracket(f, g):
                raise InvalidParameters(f'{alg.names[f]} and {alg.names[g]} do not commute')
        self.module = module
        self.algebra = alg
        self.f = f
        self.roots = inner + (f,)
        self.beta = alg.weights[f]
        self.top = module.top
        self.extend = extend
        self._window = set(module.weights())
        self._steps = {}
        self._levels = {}
        self._actions = {}
        self._check_injective()
        candidates = set()
        for eta in self._window:
            for k in range(extend + 1):
                candidates.add(eta - self.beta * k)
        self._weights = {}
        for xi in candidates:
            k = self.level(xi)
            if k is not None and module.dim(xi + self.beta * k):
                self._weights[xi] = k
        LOGGER.debug(f'localized {alg.name} module along {alg.names[f]}: {len(self._weights)} weights')

    def _check_injective(self):
        for eta in self._window:
            n = self.module.dim(eta)
            step = self.step(eta)
            if n and step is not None and _linalg.rank(step) < n:
                raise NotInjective(f'{self.algebra.names[self.f]} has a kernel on the weight space {eta}',
                                   {'weight': [str(a) for a in eta]})

    def step(self, eta):
        if eta not in self._steps:
            self._steps[eta] = self.module.action(self.f, eta) if eta in self._window else None
        return self._steps[eta]

    def _bijective(self, eta):
        s = self.step(eta)
        return s is not None and s.shape[0] == s.shape[1] and (s.shape[0] == 0 or _linalg.rank(s) == s.shape[0])

    def chain(self, xi):
        '''Positions j >= 0 with xi + j beta in the window.'''
        out = []
        for j in range(self.extend + len(self._window) + 1):
            if xi + self.beta * j in self._window:
                out.append(j)
            elif out:
                break
        return out

    def level(self, xi):
        xi = Weight(xi)
        if xi in self._levels:
            return self._levels[xi]
        positions = self.chain(xi)
        result = None
        # the last position has no outgoing step inside the window
        for k in reversed(positions[:-1]):
            if not self._bijective(xi + self.beta * k):
                break
            result = k
        self._levels[xi] = result
        return result

    def weights(self):
        return sorted(self._weights, key=lambda w: (self.algebra.height(self.top - w), w))

    def dim(self, weight):
        weight = Weight(weight)
        k = self._weights.get(weight)
        return 0 if k is None else self.module.dim(weight + self.beta * k)

    def convert(self, xi, mat, j, k=None):
        '''Columns of ``mat`` in M^{xi + j beta} (level j) re-expressed at level k (default: level(xi)).'''
        xi = Weight(xi)
        k = self._weights.get(xi) if k is None else k
        if k is None:
            if mat.shape[0] == 0 or _linalg.is_zero(mat):
                return _linalg.zeros(0, mat.shape[1])
            return None
        if _linalg.is_zero(mat):
            return _linalg.zeros(self.module.dim(xi + self.beta * k), mat.shape[1])
        out = mat
        while j < k:
            s = self.step(xi + self.beta * j)
            if s is None:
                return None
            out = _linalg.matmul(s, out)
            j += 1
        while j > k:
            j -= 1
            eta = xi + self.beta * j
            if not self._bijective(eta):
                return None
            out = _linalg.matmul(_linalg.inverse(self.step(eta)), out) if out.shape[0] else out
        return out

    def embed(self, eta):
        '''M^eta -> (M_F)^eta.'''
        eta = Weight(eta)
        return self.convert(eta, _linalg.identity(self.module.dim(eta)), 0)

    def finv(self, xi, i, f=None):
        '''f^{-i}: (M_F)^xi -> (M_F)^{xi - i wt(f)} for any integer i and any inverted f (default: this layer's).'''
        xi = Weight(xi)
        k = self._weights.get(xi)
        if k is None:
            return None
        if f is None or f == self.f:
            return self.convert(xi - self.beta * i, _linalg.identity(self.dim(xi)), k + i)
        if f not in self.roots:
            raise InvalidParameters(f'{self.algebra.names[f]} is not inverted in this module')
        # f commutes with this layer's root vector, so it acts level by level
        inner = self.module.finv(xi + self.beta * k, i, f)
        if inner is None:
            return None
        return self.convert(xi - self.algebra.weights[f] * i, inner, k)

    def action(self, x, weight):
        '''u f^{-k} m = sum_i (-k choose i) f^{-k-i} ((-ad f)^i u) m.'''
        xi = Weight(weight)
        if xi not in self._weights:
            raise InvalidParameters(f'{xi} is not a weight of the localized window')
        memo = (x, xi)
        if memo in self._actions:
            return self._actions[memo]
        k = self._weights[xi]
        eta = xi + self.beta * k
        target = xi + self.algebra.weights[x]
        total = _linalg.zeros(self.dim(target), self.dim(xi))
        for i, terms in enumerate(ad_powers(self.algebra, self.f, x, sign=-1)):
            b = binomial(-k, i)
            if not b:
                continue
            mat = _combination(self.module, terms, eta)
            conv = None if mat is None else self.convert(target, mat, k + i)
            if conv is None:
                total = None
                break
            total = total + conv * b
        self._actions[memo] = total
        return total


def localize(module, roots, extend=3):
    '''M_F along one even root vector or along a commuting sequence of them.'''
    if isinstance(roots, numbers.Integral):
        return LocalizedModule(module, int(roots), extend)
    out = module
    for f in roots:
        out = LocalizedModule(out, f, extend)
    if out is module:
        raise InvalidParameters('no root vector to localize along')
    return out


# ----------------------------------------------------------------------------
# twists
# ----------------------------------------------------------------------------

def twist_parameters(localized, c):
    '''One rational parameter per inverted root vector; a scalar is accepted for a single root.'''
    if isinstance(c, (list, tuple)):
        params = tuple(_linalg.frac(v) for v in c)
    else:
        params = (_linalg.frac(c),)
    if len(params) != len(localized.roots):
        raise InvalidParameters(f'{len(params)} twist parameters for {len(localized.roots)} root vectors')
    return params


def _inverse_shift(localized, xi, powers):
    '''prod_k f_k^{-i_k} on (M_F)^xi and the weight it lands on; (None, None) outside the window.'''
    mat = None
    cur = xi
    for f, i in zip(localized.roots, powers):
        if not i:
            continue
        nxt = cur - localized.algebra.weights[f] * i
        if nxt not in localized._weights:
            return None, None
        step = localized.finv(cur, i, f)
        if step is None:
            return None, None
        mat = step if mat is None else _linalg.matmul(step, mat)
        cur = nxt
    if mat is None:
        mat = _linalg.identity(localized.dim(xi))
    return mat, cur


def theta_matrix(localized, x, c, xi):
    '''Theta_c(x) = sum_i prod_k (c_k choose i_k) (ad f_1)^{i_1} ... (ad f_l)^{i_l}(x) f_1^{-i_1} ... f_l^{-i_l} on (M_F)^xi.'''
    alg = localized.algebra
    xi = Weight(xi)
    params = twist_parameters(localized, c)
    target = xi + alg.weights[x]
    total = _linalg.zeros(localized.dim(target), localized.dim(xi))
    for exps, terms in ad_terms(alg, localized.roots, x):
        b = Fraction(1)
        for ck, i in zip(params, exps):
            b *= binomial(ck, i)
        if not b:
            continue
        shift, cur = _inverse_shift(localized, xi, exps)
        if shift is None:
            return None
        mat = _combination(localized, terms, cur)
        if mat is None:
            return None
        total = total + _linalg.matmul(mat, shift) * b
    return total


def _powers(localized, n):
    out = []
    for v in twist_parameters(localized, n):
        if v.denominator != 1:
            raise InvalidParameters(f'conjugation needs integer powers, got {v}')
        out.append(int(v))
    return tuple(out)


def conjugation_matrix(localized, x, n, xi):
    '''f^n x f^{-n} on (M_F)^xi for integer powers n (one per inverted root vector).'''
    xi = Weight(xi)
    powers = _powers(localized, n)
    down, mid = _inverse_shift(localized, xi, powers)
    if down is None:
        return None
    act = localized.action(x, mid)
    if act is None:
        return None
    after = mid + localized.algebra.weights[x]
    if after not in localized._weights:
        return None
    up, _ = _inverse_shift(localized, after, tuple(-p for p in powers))
    if up is None:
        return None
    return _linalg.matmul(up, _linalg.matmul(act, down))


class TwistedModule(WeightModule):
    '''Psi^c M = f^c M_F: the vector f^c v has weight wt(v) + sum_k c_k beta_k and u acts by Theta_{-c}(u).'''

    def __init__(self, localized, c):
        self.localized = localized
        self.algebra = localized.algebra
        self.params = twist_parameters(localized, c)
        shift = Weight.zero(len(localized.beta))
        for f, ck in zip(localized.roots, self.params):
            shift = shift + self.algebra.weights[f] * ck
        self.shift = shift
        self.top = localized.top + self.shift

    def untwist(self, weight):
        return Weight(weight) - self.shift

    def weights(self):
        return [xi + self.shift for xi in self.localized.weights()]

    def dim(self, weight):
        return self.localized.dim(self.untwist(weight))

    def action(self, x, weight):
        xi = self.untwist(weight)
        if xi not in self.localized._weights:
            return _linalg.zeros(self.dim(Weight(weight) + self.algebra.weights[x]), 0)
        return theta_matrix(self.localized, x, tuple(-v for v in self.params), xi)

    def interior(self):
        '''Weights on which every element acts inside the window.'''
        return [w for w in self.weights()
                if all(self.action(x, w) is not None for x in range(len(self.algebra)))]


def psi(module, f, c, extend=3):
    return TwistedModule(localize(module, f, extend), c)


def theta_twist(localized, c):
    return TwistedModule(localized, c)


def integer_twist_agrees(localized, n, elements=None):
    '''Theta_n equals literal conjugation by f^n wherever both are defined.'''
    elements = range(len(localized.algebra)) if elements is None else elements
    for xi in localized.weights():
        for x in elements:
            a = theta_matrix(localized, x, n, xi)
            b = conjugation_matrix(localized, x, n, xi)
            if a is None or b is None:
                continue
            if a.shape != b.shape or not _linalg.is_zero(a - b):
                LOGGER.debug(f'Theta_{n}({localized.algebra.names[x]}) differs from conjugation at {xi}')
                return False
    return True


def twists_isomorphic(localized, c1, c2):
    '''Psi^{c1} ~ Psi^{c2} for c1 - c2 integral, through v -> f^{c1 - c2} v.'''
    p1, p2 = twist_parameters(localized, c1), twist_parameters(localized, c2)
    if any((a - b).denominator != 1 for a, b in zip(p1, p2)):
        return False
    powers = tuple(int(b - a) for a, b in zip(p1, p2))
    t1, t2 = TwistedModule(localized, c1), TwistedModule(localized, c2)
    alg = localized.algebra
    for w in t1.interior():
        phi_w, _ = _inverse_shift(localized, t1.untwist(w), powers)
        if phi_w is None:
            continue
        if phi_w.shape[0] != phi_w.shape[1] or _linalg.rank(phi_w) != phi_w.shape[0]:
            return False
        for x in range(len(alg)):
            xt = t1.untwist(w + alg.weights[x])
            if xt not in localized._weights:
                continue
            phi_t, _ = _inverse_shift(localized, xt, powers)
            a1, a2 = t1.action(x, w), t2.action(x, w)
            if phi_t is None or a1 is None or a2 is None:
                continue
            if not _linalg.is_zero(_linalg.matmul(a2, phi_w) - _linalg.matmul(phi_t, a1)):
                return False
    return True


def _seeds(twisted, w):
    '''Basis vectors of the weight space and the kernel vectors of each root element on it.'''
    alg = twisted.algebra
    n = twisted.dim(w)
    rows = [list(r) for r in _linalg.identity(n)]
    for x in range(len(alg)):
        if alg.is_cartan(x):
            continue
        mat = twisted.action(x, w)
        if mat is None or mat.shape[0] == 0 or _linalg.rank(mat) == n:
            continue
        rows += [list(r) for r in _linalg.nullspace(mat, n)]
    return rows


def twist_is_simple(twisted):
    '''No proper submodule is visible on the interior of the window.

    Submodules are generated from every basis vector and every root-vector
    kernel vector of each interior weight space.
    '''
    inner = twisted.interior()
    full = {w: twisted.dim(w) for w in inner}
    for w in inner:
        if not full[w]:
            continue
        for row in _seeds(twisted, w):
            sub = generated_submodule(twisted, {w: [row]})
            missing = [v for v in inner if sub[v].shape[0] != full[v]]
            if missing:
                LOGGER.debug(f'vector at {w} generates a proper submodule, missing {missing[0]}')
                return False
    return True


# ----------------------------------------------------------------------------
# submodules under localization
# ----------------------------------------------------------------------------

def localize_submodule(localized, sub):
    '''K_F on the localized window, each weight read off from the deepest available level.'''
    out = {}
    for xi in localized.weights():
        positions = localized.chain(xi)
        rows = None
        for j in reversed(positions):
            eta = xi + localized.beta * j
            if eta not in sub:
                continue
            conv = localized.convert(xi, sub[eta].T, j)
            if conv is not None:
                rows = _linalg.row_basis(conv.T) if conv.shape[1] else conv.T
                break
        if rows is None:
            raise WindowTooSmall(f'cannot transport the submodule to {xi}',
                                 {'undecided': [','.join(str(a) for a in xi)]})
        out[xi] = rows
    return out


def phi(localized, sub, check=True):
    '''Phi(N) = N cap M for N in M_F, per weight of M where the embedding is defined.'''
    if check and not is_bijective_submodule(localized, sub):
        raise NotBijectiveInput('Phi needs an f-bijective submodule of the localized module')
    out = {}
    for eta in localized.module.weights():
        n = localized.module.dim(eta)
        if eta not in localized._weights:
            continue
        emb = localized.embed(eta)
        if emb is None:
            continue
        target = sub.get(eta, _linalg.zeros(0, localized.dim(eta)))
        out[eta] = _linalg.preimage(emb, target, n)
    return out


def is_bijective_submodule(localized, sub):
    '''f maps N^xi onto N^{xi + beta} wherever both weights lie in the window.'''
    for xi in localized.weights():
        t = xi + localized.beta
        if t not in localized._weights or xi not in sub or t not in sub:
            continue
        fmat = localized.action(localized.f, xi)
        if fmat is None:
            continue
        if not _linalg.same_span(_linalg.image(fmat, sub[xi]), sub[t]):
            return False
    return True


def saturation(module, f, sub):
    '''{m in M : f^j m in K for the deepest j inside the window} = K_F cap M.'''
    window = set(module.weights())
    out = {}
    for eta in module.weights():
        n = module.dim(eta)
        mat = _linalg.identity(n)
        cur = eta
        while True:
            s = module.action(f, cur) if cur in window else None
            nxt = cur + module.algebra.weights[f]
            if s is None or nxt not in window or nxt not in sub:
                break
            mat = _linalg.matmul(s, mat)
            cur = nxt
        out[eta] = _linalg.preimage(mat, sub.get(cur, _linalg.zeros(0, module.dim(cur))), n)
    return out


def quotient_is_injective(module, f, lower, upper):
    '''f acts injectively on upper / lower (weights whose f-image leaves the window are skipped).'''
    window = set(module.weights())
    for eta in module.weights():
        if eta not in upper or upper[eta].shape[0] == 0:
            continue
        s = module.action(f, eta)
        t = eta + module.algebra.weights[f]
        if s is None or t not in window:
            continue
        low_t = lower.get(t, _linalg.zeros(0, module.dim(t)))
        pre = _linalg.intersect(upper[eta], _linalg.preimage(s, low_t, module.dim(eta)))
        if not _linalg.span_contains(lower.get(eta, _linalg.zeros(0, module.dim(eta))), pre):
            return False
    return True


@dataclass
class InjectiveSeries:
    '''Submodule chain with groups of equal localization; group quotients are f-injective.'''
    members: list
    groups: list = field(default_factory=list)
    injective: list = field(default_factory=list)


def _group(module, f, members):
    sats = [saturation(module, f, m) for m in members]
    groups = [[0]]
    for i in range(1, len(members)):
        if same_submodule(sats[i], sats[i - 1]):
            groups[-1].append(i)
        else:
            groups.append([i])
    return groups


def gamma_injective_series(module, f, chain, max_rounds=50):
    '''Reorder a composition series by exchanges M_i' = M_{i+1} cap (M_{i-1})_F until each group is f-injective.

    ``chain`` is an increasing list of submodules starting at 0 and ending at M.
    '''
    members = list(chain)
    if len(members) < 2:
        raise InvalidParameters('a series needs at least the zero and the full submodule')
    for _ in range(max_rounds):
        changed = False
        for i in range(len(members) - 1, 1, -1):
            sat_prev = saturation(module, f, members[i - 2])
            torsion_step = same_submodule(saturation(module, f, members[i]), saturation(module, f, members[i - 1]))
            injective_step = not same_submodule(saturation(module, f, members[i - 1]), sat_prev)
            if torsion_step and injective_step and not quotient_is_injective(module, f, members[i - 2], members[i]):
                members[i - 1] = intersect_submodules(members[i], sat_prev)
                LOGGER.debug(f'exchanged member {i - 1} of the series')
                changed = True
        if not changed:
            break
    else:
        raise InvariantViolation(f'series exchange did not settle in {max_rounds} rounds')
    groups = _group(module, f, members)
    injective = []
    for j, g in enumerate(groups):
        if j == 0:
            injective.append(None)
            continue
        injective.append(quotient_is_injective(module, f, members[groups[j - 1][-1]], members[g[-1]]))
    return InjectiveSeries(members, groups, injective)


def localized_dimension(localized, sub):
    return sum(rows.shape[0] for rows in localize_submodule(localized, sub).values())
