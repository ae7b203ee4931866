"""
Tests for the command line front end: JSON output, exit codes, job spec
validation, the result cache and table import/export.
"""

import sys
import os
import json

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from SuperWeight import cli
from SuperWeight.errors import SpecValidationError

import batch_char_tables


SL3_JOB = {
    'algebra': 'sl(3)',
    'blocks': {'eps': [2, 1]},
    'lambda_blocks': [['1/6', '-1/6']],
    'lambda_z': '0,0,0',
    'queries': ['1/6,-1/6,0', '1/6,-7/6,1'],
}


def write_job(folder, name, data):
    path = folder / name
    path.write_text(json.dumps(data))
    return path


def run_json(capsys, argv):
    code = cli.run(argv)
    return code, json.loads(capsys.readouterr().out)


def test_classify_w2(capsys):
    code, out = run_json(capsys, ['classify', '--algebra', 'W(2)', '--weight', '5,1', '--no-cache'])
    assert code == 0
    assert out['typical'] is False
    assert out['witness_i'] == 1
    assert out['atypical_witnesses'] == [1]


def test_classify_with_parabolic(tmp_path, capsys):
    job = write_job(tmp_path, 'job.json', SL3_JOB)
    code, out = run_json(capsys, ['classify', '--spec', str(job), '--no-cache'])
    assert code == 0
    assert out['weight'] == '1/6,-1/6,0'
    assert out['partially_finite'] is False
    assert out['normal_form_valid'] is True
    assert out['gamma_injective'] is True


def test_degree(tmp_path, capsys):
    job = write_job(tmp_path, 'sl2.json', {'algebra': 'sl(2)', 'parabolic_l': ['0', '0'],
                                           'lambda_blocks': [['1/6', '-1/6']]})
    code, out = run_json(capsys, ['degree', '--spec', str(job)])
    assert code == 0
    assert out['degree'] == 1
    assert out['d_blocks'] == [{'block': 'sl(2)', 'component': ['1/6', '-1/6'], 'd': 1}]


def test_char_queries(tmp_path, capsys):
    job = write_job(tmp_path, 'job.json', SL3_JOB)
    code, out = run_json(capsys, ['char', '--spec', str(job), '--workers', '2', '--no-cache'])
    assert code == 0
    assert out['degree'] == 1
    assert [r['multiplicity'] for r in out['results']] == [1, 2]
    assert out['results'][0]['terms'] == [{'mu': '1/6,-1/6,0', 'c': 1, 'induced': 1}]


def test_char_single_weight(tmp_path, capsys):
    job = write_job(tmp_path, 'job.json', SL3_JOB)
    code, out = run_json(capsys, ['char', '--spec', str(job), '--weight=-5/6,5/6,0', '--no-cache'])
    assert code == 0
    assert out['eta'] == '-5/6,5/6,0'
    assert out['multiplicity'] == 1


def test_char_cache_hit(tmp_path, capsys):
    job = write_job(tmp_path, 'job.json', SL3_JOB)
    cache = tmp_path / 'cache'
    first, second = tmp_path / 'first.json', tmp_path / 'second.json'
    assert cli.run(['char', '--spec', str(job), '--cache-dir', str(cache), '--out', str(first)]) == 0
    assert cli.run(['char', '--spec', str(job), '--cache-dir', str(cache), '--out', str(second)]) == 0
    assert first.read_text() == second.read_text()
    assert len(list(cache.glob('*.json'))) == 1
    assert not list(cache.glob('*.tmp'))


def test_coeffs(tmp_path, capsys):
    job = write_job(tmp_path, 'job.json', SL3_JOB)
    code, out = run_json(capsys, ['coeffs', '--spec', str(job), '--order-ideal', '3', '--no-cache'])
    assert code == 0
    assert out['coefficients'] == [{'mu': '1/6,-1/6,0', 'level': '0', 'c': 1}]


def test_provider_gap(tmp_path, capsys):
    job = write_job(tmp_path, 'gl22.json', {'algebra': 'gl(2|2)', 'blocks': {'eps': [2], 'delta': [2]},
                                            'lambda_blocks': [['1/3', '-1/3'], ['1/5', '-1/5']]})
    code, out = run_json(capsys, ['char', '--spec', str(job), '--weight=1/3,-1/3|1/5,-1/5', '--no-cache'])
    assert code == 1
    assert out['error'] == 'provider-gap'
    assert out['needed'] == ['b:gl(2|2)']


def test_unknown_job_field(tmp_path, capsys):
    data = dict(SL3_JOB, colour='blue')
    job = write_job(tmp_path, 'job.json', data)
    code, out = run_json(capsys, ['degree', '--spec', str(job)])
    assert code == 2
    assert out['error'] == 'spec-validation-error'
    assert out['unknown'] == ['colour']


def test_bad_weight_in_job(tmp_path, capsys):
    job = write_job(tmp_path, 'job.json', dict(SL3_JOB, queries=['1/6,x,0']))
    code, out = run_json(capsys, ['char', '--spec', str(job), '--no-cache'])
    assert code == 2
    assert out['field'] == 'queries'


def test_usage_errors(capsys):
    code, out = run_json(capsys, ['char'])
    assert code == 2
    assert out['error'] == 'usage-error'
    code, out = run_json(capsys, [])
    assert code == 2


def test_lab_run(capsys):
    code, out = run_json(capsys, ['lab', 'run', '--suite', 'kac-typicality', '--depth', '4', '--seed', '1'])
    assert code == 0
    assert out['suite'] == 'kac-typicality'
    assert out['failures'] == []


def test_result_cache_round_trip(tmp_path):
    cache = cli.ResultCache(tmp_path / 'cache')
    assert cache.get('abc') is None
    cache.put('abc', {'multiplicity': 3})
    assert cache.get('abc') == {'multiplicity': 3}
    assert not list((tmp_path / 'cache').glob('*.tmp'))
    cache.path('broken').write_text('{not json')
    assert cache.get('broken') is None


def test_fingerprint_follows_table_contents(tmp_path):
    table = tmp_path / 'b.jsonl'
    table.write_text('first\n')
    data = dict(SL3_JOB, providers={'b': {'table': 'b.jsonl'}})
    job = cli.JobSpec(data, tmp_path)
    before = job.fingerprint('char', ['1/6,-1/6,0'])
    assert job.fingerprint('char', ['1/6,-1/6,0']) == before
    table.write_text('second\n')
    assert job.fingerprint('char', ['1/6,-1/6,0']) != before
    assert cli.JobSpec(SL3_JOB, tmp_path).fingerprint('char', ['1/6,-1/6,0']) != before


def test_job_spec_validation():
    with pytest.raises(SpecValidationError):
        cli.JobSpec(dict(SL3_JOB, singular='maybe'))
    with pytest.raises(SpecValidationError):
        cli.JobSpec(dict(SL3_JOB, parabolic_l=['6', '6', '3']))
    with pytest.raises(SpecValidationError):
        cli.JobSpec(dict(SL3_JOB, providers={'b': 'somewhere'}))
    with pytest.raises(SpecValidationError):
        cli.parse_algebra('e(8)')


def test_tables_export_and_import(tmp_path, capsys):
    job = write_job(tmp_path, 'gl2.json', {'algebra': 'gl(2)', 'weight': '3,0'})
    code, out = run_json(capsys, ['tables', 'export', '--spec', str(job), '--order-ideal', '4', '--no-cache'])
    assert code == 0
    assert out['kind'] == 'a'
    assert {'nu': '3,0', 'mu': '-1,4', 'value': 1} in out['entries']

    exported = tmp_path / 'gl2_a.jsonl'
    code, out = run_json(capsys, ['tables', 'export', '--spec', str(job), '--order-ideal', '4',
                                  '--dest', str(exported), '--no-cache'])
    assert code == 0 and exported.exists()
    entries = out['entries']

    imported = tmp_path / 'copy.jsonl'
    code, out = run_json(capsys, ['tables', 'import', str(exported), '--dest', str(imported), '--no-cache'])
    assert code == 0
    assert out['entries'] == entries
    assert out['algebra'] == 'gl(2|0)'


def test_batch_folder(tmp_path, capsys):
    jobs = tmp_path / 'jobs'
    jobs.mkdir()
    write_job(jobs, 'sl3.json', SL3_JOB)
    write_job(jobs, 'bad.json', dict(SL3_JOB, colour='blue'))
    results = tmp_path / 'results'
    codes = batch_char_tables.run_folder(jobs, results, use_cache=False)
    assert codes == {'bad.json': 2, 'sl3.json': 0}
    assert json.loads((results / 'sl3.result.json').read_text())['degree'] == 1
    assert batch_char_tables.run_folder(jobs, results, use_cache=False) == {'bad.json': 2}
