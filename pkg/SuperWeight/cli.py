'''
Command line front end for SuperWeight.

Usage:
    python -m SuperWeight classify --algebra "W(2)" --weight "5,1"
    python -m SuperWeight degree --spec job.json
    python -m SuperWeight char --spec job.json --weight "1/3,-1/3,0" [--workers 4]
    python -m SuperWeight coeffs --spec job.json --order-ideal 3
    python -m SuperWeight lab run --suite kac-typicality --depth 4 --seed 1
    python -m SuperWeight tables import table.jsonl
    python -m SuperWeight tables export --spec job.json --order-ideal 3 --kind b --dest table.jsonl

Every command prints one JSON document (stdout or --out). Exit codes:
0 success, 1 domain error (the error object is printed), 2 usage or job spec error.

Job spec (JSON, unknown fields rejected):
    {
      "algebra": "sl(3)" | {"kind": "SL", "m": 3, "n": 0},
      "parabolic_l": ["2", "2", "-4"]      or  "blocks": {"eps": [2, 1]},
      "lambda_blocks": [["1/3", "-1/3"]], "lambda_z": "1/3,1/3,-2/3"
                                           or  "lambda": "2/3,0,-2/3",
      "sigma": "...",                      (defaults to lambda)
      "weight": "...", "queries": ["...", ...],
      "order_ideal": 3, "singular": "generic" | "raise",
      "providers": {"b": "builtin" | {"table": "b.jsonl"},
                    "a": ["builtin" | {"table": "a.jsonl"}, ...]}
    }
'''

import argparse
import hashlib
import json
import logging
import os
import re
import sys as _sys
import tempfile
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import charformula, mult, rootdata, suites, weights
from .errors import (CacheIOError, InvalidParameters, InvariantViolation, ParseError, ProviderGap, SpecValidationError,
                     SuperWeightError)
from .rootdata import Weight

LOGGER = logging.getLogger(__name__)

CACHE_VERSION = 1

JOB_FIELDS = frozenset({
    'algebra', 'parabolic_l', 'blocks', 'lambda', 'lambda_blocks', 'lambda_z', 'sigma',
    'weight', 'queries', 'order_ideal', 'singular', 'providers',
})

_ALGEBRA = re.compile(r'^\s*(gl|sl|psl|osp|p|sp|w)\s*\(\s*(\d+)\s*(?:\|\s*(\d+)\s*)?\)\s*$', re.IGNORECASE)


class UsageError(Exception):
    '''Bad command line; reported with exit code 2.'''


# ----------------------------------------------------------------------------
# job specs
# ----------------------------------------------------------------------------

def parse_algebra(value):
    '''"gl(2|1)", "W(2)", "sl(3)" or a descriptor object.'''
    if isinstance(value, dict):
        return rootdata.from_descriptor(value)
    if not isinstance(value, str):
        raise SpecValidationError(f'algebra must be a string or a descriptor object, got {value!r}')
    m = _ALGEBRA.match(value)
    if not m:
        raise SpecValidationError(f'cannot parse algebra {value!r}; expected e.g. "gl(2|1)" or "W(2)"')
    kind, a, b = m.group(1).upper(), int(m.group(2)), m.group(3)
    if kind in ('W', 'P', 'SP'):
        if b is not None:
            raise SpecValidationError(f'{kind}({a}) takes a single size parameter')
        return rootdata.build_superalgebra(kind, a)
    return rootdata.build_superalgebra(kind, a, 0 if b is None else int(b))


def _rationals(value, field):
    if isinstance(value, str):
        value = [t for t in value.split(',') if t.strip()]
    if not isinstance(value, (list, tuple)):
        raise SpecValidationError(f'"{field}" must be a list of rationals, got {value!r}')
    try:
        return Weight(Fraction(str(x).strip().replace('−', '-')) for x in value)
    except (ValueError, ZeroDivisionError):
        raise SpecValidationError(f'"{field}" holds a non-rational entry: {value!r}')


def _weight(system, value, field):
    try:
        return system.parse_weight(value)
    except ParseError as e:
        raise SpecValidationError(f'"{field}": {e}', {'field': field})


class JobSpec(object):
    '''A validated job file; ``spec`` is None when no parabolic data was given.'''

    def __init__(self, data, base_dir='.'):
        if not isinstance(data, dict):
            raise SpecValidationError('a job spec must be a JSON object')
        unknown = sorted(set(data) - JOB_FIELDS)
        if unknown:
            raise SpecValidationError(f'unknown job fields: {unknown}', {'unknown': unknown})
        if 'algebra' not in data:
            raise SpecValidationError('a job spec needs "algebra"')
        self.data = data
        self.base_dir = Path(base_dir)
        self.system = parse_algebra(data['algebra'])
        self.singular = data.get('singular', 'generic')
        if self.singular not in ('generic', 'raise'):
            raise SpecValidationError(f'"singular" must be "generic" or "raise", got {self.singular!r}')
        self.order_ideal = data.get('order_ideal')
        if self.order_ideal is not None and (not isinstance(self.order_ideal, int) or self.order_ideal < 0):
            raise SpecValidationError(f'"order_ideal" must be a non-negative integer, got {self.order_ideal!r}')
        self.weight = _weight(self.system, data['weight'], 'weight') if 'weight' in data else None
        queries = data.get('queries', [])
        if not isinstance(queries, list):
            raise SpecValidationError('"queries" must be a list of weight strings')
        self.queries = [_weight(self.system, q, 'queries') for q in queries]
        self.providers = self._check_providers(data.get('providers', {}))
        self.parabolic = self._parabolic()
        self.spec = self._module_spec() if self.parabolic is not None else None

    def _parabolic(self):
        data = self.data
        if 'parabolic_l' in data and 'blocks' in data:
            raise SpecValidationError('give either "parabolic_l" or "blocks", not both')
        if 'parabolic_l' in data:
            functional = _rationals(data['parabolic_l'], 'parabolic_l')
        elif 'blocks' in data:
            blocks = data['blocks']
            if not isinstance(blocks, dict) or set(blocks) - {'eps', 'delta', 'c'}:
                raise SpecValidationError('"blocks" must be an object with "eps", "delta" and/or "c"')
            functional = rootdata.parabolic_from_blocks(self.system, tuple(blocks.get('eps', ())),
                                                        tuple(blocks.get('delta', ())), blocks.get('c', 0))
        else:
            return None
        return rootdata.build_parabolic(self.system, functional)

    def _module_spec(self):
        data, par, sys = self.data, self.parabolic, self.system
        if 'lambda' in data:
            if 'lambda_blocks' in data or 'lambda_z' in data:
                raise SpecValidationError('give either "lambda" or "lambda_blocks" with "lambda_z"')
            lam = _weight(sys, data['lambda'], 'lambda')
            components, z = par.local_components(lam), par.z_part(lam)
        elif 'lambda_blocks' in data:
            raw = data['lambda_blocks']
            if not isinstance(raw, list):
                raise SpecValidationError('"lambda_blocks" must be a list with one entry per block')
            components = [_rationals(c, 'lambda_blocks') for c in raw]
            z = _weight(sys, data['lambda_z'], 'lambda_z') if 'lambda_z' in data else Weight.zero(sys.dim)
        else:
            return None
        lam = par.compose(components, z)
        sigma = _weight(sys, data['sigma'], 'sigma') if 'sigma' in data else lam
        return weights.BoundedModuleSpec(par, tuple(components), z, sigma)

    def _check_providers(self, providers):
        if not isinstance(providers, dict) or set(providers) - {'a', 'b'}:
            raise SpecValidationError('"providers" must be an object with "a" and/or "b"')
        b = providers.get('b', 'builtin')
        a = providers.get('a')
        for entry in [b] + list(a or []):
            if entry != 'builtin' and not (isinstance(entry, dict) and set(entry) == {'table'}):
                raise SpecValidationError(f'provider entries are "builtin" or {{"table": path}}, got {entry!r}')
        if a is not None and not isinstance(a, list):
            raise SpecValidationError('"providers.a" must be a list with one entry per block')
        return {'b': b, 'a': a}

    def require_spec(self):
        if self.spec is None:
            raise SpecValidationError('this command needs a parabolic ("parabolic_l" or "blocks") '
                                      'and a highest weight ("lambda" or "lambda_blocks")')
        return self.spec

    def table_path(self, entry):
        path = Path(entry['table'])
        return path if path.is_absolute() else self.base_dir / path

    # ------------------------------------------------------------------
    # providers

    def b_provider(self):
        par = self.parabolic
        entry = self.providers['b']
        if entry == 'builtin':
            try:
                return charformula.default_b_provider(self.system, par.basis)
            except InvalidParameters:
                raise ProviderGap(f'no built-in multiplicity data for {self.system.label}',
                                  {'needed': [f'b:{self.system.label}']})
        table = mult.load_table(self.table_path(entry))
        provider = mult.table_provider(table)
        if table.kind == 'a':
            provider = mult.invert_provider(provider, par.basis.lattice)
        return provider

    def a_providers(self):
        entries = self.providers['a']
        if entries is None:
            return None
        blocks = self.parabolic.blocks
        if len(entries) != len(blocks):
            raise SpecValidationError(f'"providers.a" needs {len(blocks)} entries, got {len(entries)}')
        out = []
        for b, entry in zip(blocks, entries):
            if entry == 'builtin':
                out.append(mult.block_provider(b.type, b.size))
            else:
                out.append(mult.table_provider(mult.load_table(self.table_path(entry))))
        return out

    def fingerprint(self, command, extra=None):
        '''Hash of everything the result of ``command`` depends on.'''
        def provider_print(entry):
            if entry == 'builtin':
                return 'builtin'
            try:
                return hashlib.sha256(self.table_path(entry).read_bytes()).hexdigest()
            except OSError as e:
                raise ParseError(f'cannot read provider table {entry["table"]}: {e}')

        spec = self.spec
        key = {
            'version': CACHE_VERSION,
            'command': command,
            'algebra': self.system.descriptor(),
            'functional': [str(x) for x in self.parabolic.functional] if self.parabolic else None,
            'lambda': self.system.format_weight(spec.highest) if spec else None,
            'sigma': self.system.format_weight(spec.sigma) if spec else None,
            'singular': self.singular,
            'b': provider_print(self.providers['b']),
            'a': [provider_print(e) for e in self.providers['a']] if self.providers['a'] else None,
            'extra': extra,
        }
        return hashlib.sha256(json.dumps(key, sort_keys=True).encode()).hexdigest()


def load_job(path):
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except OSError as e:
        raise UsageError(f'cannot read job spec {path}: {e}')
    except json.JSONDecodeError as e:
        raise SpecValidationError(f'{path}: {e}')
    return JobSpec(data, path.parent)


# ----------------------------------------------------------------------------
# cache
# ----------------------------------------------------------------------------

def default_cache_dir():
    return Path(os.environ.get('SUPERWEIGHT_CACHE') or Path.home() / '.cache' / 'superweight')


class ResultCache(object):
    '''Content-addressed JSON store; one file per key, written by atomic rename.'''

    def __init__(self, directory=None):
        self.directory = Path(directory) if directory else default_cache_dir()

    def path(self, key):
        return self.directory / f'{key}.json'

    def get(self, key):
        path = self.path(key)
        if not path.exists():
            return None
        try:
            return json.loads(path.read_text())
        except (OSError, json.JSONDecodeError) as e:
            LOGGER.warning(f'ignoring unreadable cache entry {path}: {e}')
            return None

    def put(self, key, value):
        try:
            self.directory.mkdir(parents=True, exist_ok=True)
            fd, tmp = tempfile.mkstemp(dir=self.directory, suffix='.tmp')
            with os.fdopen(fd, 'w') as f:
                f.write(dumps(value))
            os.replace(tmp, self.path(key))
        except OSError as e:
            raise CacheIOError(f'cannot write cache entry {key}: {e}', {'directory': str(self.directory)})
        LOGGER.debug(f'cached {key}')
        return self.path(key)


def cache_get(cache, key):
    return cache.get(key) if cache else None


def cache_put(cache, key, value):
    if cache:
        cache.put(key, value)
    return value


# ----------------------------------------------------------------------------
# commands
# ----------------------------------------------------------------------------

def _witness(sys, w):
    if isinstance(w, int):
        return w
    if isinstance(w, Weight):
        return sys.format_weight(w)
    return list(w)


def classify(system, mu, parabolic=None):
    basis = parabolic.basis if parabolic is not None else rootdata.standard_basis(system)
    typ = weights.is_typical(mu, system, basis)
    out = {
        'algebra': system.label,
        'weight': system.format_weight(mu),
        'typical': typ.typical,
        'atypical_witnesses': [_witness(system, w) for w in typ.witnesses],
        'singular': weights.is_singular(mu, system, basis),
    }
    if typ.witness_i is not None:
        out['witness_i'] = typ.witness_i
    if parabolic is not None:
        comps = parabolic.local_components(mu)
        out['partially_finite'] = weights.is_partially_finite(mu, parabolic)
        out['normal_form_valid'] = all(weights.validate_normal_form(c, b.type)
                                       for b, c in zip(parabolic.blocks, comps))
        try:
            out['gamma_injective'] = weights.is_gamma_injective(mu, parabolic)
        except SuperWeightError as e:
            LOGGER.info(f'not bounded: {e}')
            out['gamma_injective'] = False
    return out


def cmd_classify(args):
    if args.spec:
        job = load_job(args.spec)
        system, parabolic = job.system, job.parabolic
        mu = _weight(system, args.weight, 'weight') if args.weight else job.weight
        if mu is None and job.spec is not None:
            mu = job.spec.highest
    else:
        if not args.algebra or not args.weight:
            raise UsageError('classify needs --spec or both --algebra and --weight')
        system, parabolic = parse_algebra(args.algebra), None
        mu = _weight(system, args.weight, 'weight')
    if mu is None:
        raise SpecValidationError('no weight to classify')
    return classify(system, mu, parabolic)


def cmd_degree(args):
    job = load_job(args.spec)
    spec = job.require_spec()
    ds, total = charformula.degree(spec, job.singular)
    blocks = [{'block': b.label, 'component': [str(x) for x in c], 'd': d}
              for b, c, d in zip(spec.parabolic.blocks, spec.components, ds)]
    return {'algebra': job.system.label, 'd_blocks': blocks, 'degree': total}


def _character(job):
    spec = job.require_spec()
    if job.singular == 'raise':
        charformula.degree(spec, 'raise')
    return charformula.simple_character(spec, job.b_provider(), job.a_providers())


def _query(character, eta):
    sys = character.system
    terms = character.terms(eta)
    total = sum(c * m for _, c, m in terms)
    if total < 0:
        raise InvariantViolation(f'negative multiplicity {total}', {'eta': sys.format_weight(sys.canonical(eta))})
    return {
        'eta': sys.format_weight(sys.canonical(eta)),
        'multiplicity': total,
        'terms': [{'mu': sys.format_weight(mu), 'c': c, 'induced': m} for mu, c, m in terms],
    }


def cmd_char(args, cache):
    job = load_job(args.spec)
    queries = [_weight(job.system, args.weight, 'weight')] if args.weight else (
        job.queries or ([job.weight] if job.weight is not None else []))
    if not queries:
        raise UsageError('char needs --weight or "queries"/"weight" in the job spec')
    job.require_spec()
    labels = [job.system.format_weight(q) for q in queries]
    key = job.fingerprint('char', labels)
    hit = cache_get(cache, key)
    if hit is not None:
        LOGGER.info('char: cache hit')
        return hit
    character = _character(job)
    with ThreadPoolExecutor(max_workers=max(1, args.workers)) as pool:
        results = list(pool.map(lambda eta: _query(character, eta), queries))
    if len(results) == 1 and args.weight:
        out = results[0]
    else:
        out = {'lambda': job.system.format_weight(character.lam), 'degree': character.degree, 'results': results}
    return cache_put(cache, key, out)


def cmd_coeffs(args, cache):
    job = load_job(args.spec)
    depth = args.order_ideal if args.order_ideal is not None else job.order_ideal
    if depth is None:
        raise UsageError('coeffs needs --order-ideal or "order_ideal" in the job spec')
    job.require_spec()
    key = job.fingerprint('coeffs', depth)
    hit = cache_get(cache, key)
    if hit is not None:
        LOGGER.info('coeffs: cache hit')
        return hit
    character = _character(job)
    sys = job.system
    rows = charformula.coefficient_table(character, depth)
    out = {
        'lambda': sys.format_weight(character.lam),
        'order_ideal': depth,
        'degree': character.degree,
        'coefficients': [{'mu': sys.format_weight(mu), 'level': str(character.parabolic.level(character.lam - mu)),
                          'c': c} for mu, c in rows],
    }
    return cache_put(cache, key, out)


def cmd_lab(args):
    return suites.run_suite(args.suite, args.depth, args.seed)


def _default_dir(cache):
    return (cache.directory if cache else default_cache_dir()) / 'tables'


def cmd_tables_import(args, cache):
    table = mult.load_table(args.source)
    digest = hashlib.sha256(Path(args.source).read_bytes()).hexdigest()
    target = Path(args.dest) if args.dest else _default_dir(cache) / f"{re.sub(r'[^A-Za-z0-9]+', '_', table.system.label)}{table.kind}-{digest[:12]}.jsonl"
    target.parent.mkdir(parents=True, exist_ok=True)
    mult.save_table(table, target)
    return {'imported': str(target), 'algebra': table.system.label, 'kind': table.kind,
            'tops': len(table.tops), 'entries': len(table.entries), 'sha256': digest}


def _builtin_a_provider(system, basis):
    if system.is_lie_algebra:
        return mult.linkage_provider(system, basis)
    if system.kind in ('GL', 'SL') and system.n_delta == 1:
        return mult.serganova_provider(system, basis)
    raise ProviderGap(f'no built-in a-multiplicities for {system.label}', {'needed': [f'a:{system.label}']})


def cmd_tables_export(args):
    job = load_job(args.spec)
    depth = args.order_ideal if args.order_ideal is not None else job.order_ideal
    if depth is None:
        raise UsageError('tables export needs --order-ideal')
    sys = job.system
    basis = rootdata.standard_basis(sys)
    top = job.spec.highest if job.spec else job.weight
    if top is None:
        raise SpecValidationError('tables export needs "lambda" or "weight" in the job spec')
    ideal = mult.OrderIdeal(top, basis.lattice, depth=depth)
    entries = {}
    if args.kind == 'a':
        provider = _builtin_a_provider(sys, basis)
        for nu in ideal.elements():
            sub = mult.OrderIdeal(nu, basis.lattice, depth=depth - int(basis.height(top - nu)))
            for mu, v in provider.support(nu, sub).items():
                entries[(nu, mu)] = v
    else:
        try:
            provider = charformula.default_b_provider(sys, basis)
        except InvalidParameters:
            raise ProviderGap(f'no built-in multiplicity data for {sys.label}', {'needed': [f'b:{sys.label}']})
        for mu, v in provider.support(top, ideal).items():
            entries[(top, mu)] = v
    table = mult.MultiplicityTable(sys, entries, args.kind)
    if args.dest:
        args.dest.parent.mkdir(parents=True, exist_ok=True)
        mult.save_table(table, args.dest)
        return {'exported': str(args.dest), 'algebra': sys.label, 'kind': table.kind, 'entries': len(table.entries)}
    return {'algebra': sys.descriptor(), 'basis': table.basis, 'kind': table.kind,
            'entries': [{'nu': sys.format_weight(nu), 'mu': sys.format_weight(mu), 'value': v}
                        for (nu, mu), v in sorted(table.entries.items())]}


# ----------------------------------------------------------------------------
# argument parsing and output
# ----------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):

    def error(self, message):
        raise UsageError(message)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('-v', '--verbose', action='count', default=0, help='-v for INFO, -vv for DEBUG logging')
    common.add_argument('--out', type=Path, help='write the JSON result here instead of stdout')
    common.add_argument('--cache-dir', type=Path, help='result cache (default $SUPERWEIGHT_CACHE or ~/.cache/superweight)')
    common.add_argument('--no-cache', action='store_true', help='neither read nor write the result cache')

    ap = _Parser(prog='superweight', description='Characters of simple weight modules over type I Lie superalgebras and W(n).')
    sub = ap.add_subparsers(dest='command', parser_class=_Parser)

    p = sub.add_parser('classify', parents=[common], help='typicality, singularity and boundedness of a weight')
    p.add_argument('--algebra', help='e.g. "gl(2|1)", "W(2)"')
    p.add_argument('--weight', help='weight string "eps|delta"')
    p.add_argument('--spec', type=Path, help='job spec; supplies algebra, parabolic and weight')
    p.add_argument('--basis', default='standard', choices=['standard'], help='Borel (only the standard one)')

    p = sub.add_parser('degree', parents=[common], help='degree d per block and their product')
    p.add_argument('--spec', type=Path, required=True)

    p = sub.add_parser('char', parents=[common], help='weight multiplicities of L_p(S)')
    p.add_argument('--spec', type=Path, required=True)
    p.add_argument('--weight', help='single weight eta; otherwise the spec "queries"')
    p.add_argument('--workers', type=int, default=1, help='threads for independent queries')

    p = sub.add_parser('coeffs', parents=[common], help='table of c(lambda, mu) on an order ideal')
    p.add_argument('--spec', type=Path, required=True)
    p.add_argument('--order-ideal', type=int, help='level bound of the order ideal')

    lab = sub.add_parser('lab', help='explicit module checks')
    lab_sub = lab.add_subparsers(dest='lab_command', parser_class=_Parser)
    p = lab_sub.add_parser('run', parents=[common], help='run one verification suite')
    p.add_argument('--suite', required=True, choices=sorted(suites.SUITES))
    p.add_argument('--depth', type=int, default=6)
    p.add_argument('--seed', type=int, default=0)

    tables = sub.add_parser('tables', help='multiplicity table files')
    tables_sub = tables.add_subparsers(dest='tables_command', parser_class=_Parser)
    p = tables_sub.add_parser('import', parents=[common], help='validate a table and copy it into the cache')
    p.add_argument('source', type=Path)
    p.add_argument('--dest', type=Path, help='target file (default <cache>/tables/)')
    p = tables_sub.add_parser('export', parents=[common], help='write built-in multiplicities as a table')
    p.add_argument('--spec', type=Path, required=True)
    p.add_argument('--order-ideal', type=int, help='height bound below the top weight')
    p.add_argument('--kind', choices=['a', 'b'], default='a')
    p.add_argument('--dest', type=Path, help='write the table file here (default: inline JSON)')
    return ap


def dumps(value):
    return json.dumps(value, indent=2, sort_keys=True) + '\n'


def emit(value, out=None):
    text = dumps(value)
    if out:
        Path(out).write_text(text)
    else:
        _sys.stdout.write(text)


def _configure_logging(verbose):
    level = logging.WARNING if verbose <= 0 else logging.INFO if verbose == 1 else logging.DEBUG
    logging.basicConfig(level=level, stream=_sys.stderr, format='%(levelname)s %(name)s: %(message)s')


def dispatch(args):
    cache = None if getattr(args, 'no_cache', True) else ResultCache(args.cache_dir)
    if args.command == 'classify':
        return cmd_classify(args)
    if args.command == 'degree':
        return cmd_degree(args)
    if args.command == 'char':
        return cmd_char(args, cache)
    if args.command == 'coeffs':
        return cmd_coeffs(args, cache)
    if args.command == 'lab' and args.lab_command == 'run':
        return cmd_lab(args)
    if args.command == 'tables' and args.tables_command == 'import':
        return cmd_tables_import(args, cache)
    if args.command == 'tables' and args.tables_command == 'export':
        return cmd_tables_export(args)
    raise UsageError('choose a command: classify, degree, char, coeffs, lab run, tables import|export')


def run(argv=None):
    '''Parse ``argv``, run the command and print its JSON; returns the exit code.'''
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        emit({'error': 'usage-error', 'message': f'ERROR: {e}'})
        return 2
    _configure_logging(getattr(args, 'verbose', 0))
    try:
        result = dispatch(args)
    except UsageError as e:
        emit({'error': 'usage-error', 'message': f'ERROR: {e}'})
        return 2
    except SpecValidationError as e:
        emit(e.as_dict())
        return 2
    except SuperWeightError as e:
        LOGGER.error(str(e))
        emit(e.as_dict())
        return 1
    if result is not None:
        emit(result, getattr(args, 'out', None))
    return 0


def main():
    _sys.exit(run())


if __name__ == '__main__':
    main()
