import json

import pytest

import cli
from models.instance import Basis, Exactness, Prediction
from services import binomial_service


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, '--json')
    return code, json.loads(out)


@pytest.fixture
def broken_prediction(monkeypatch):
    """Every pair is predicted to have valuation at least 50."""
    monkeypatch.setattr(
        binomial_service, 'predict',
        lambda case, n: Prediction(50, Exactness.LOWER_BOUND, Basis.ONE_SIDE_DIVISIBLE),
    )


def test_analyze_pair_json(capsys):
    code, data = run_json(capsys, 'analyze', '1', '2', '--n', '3')
    assert code == 0
    assert data['case'] == 'case2-odd'
    assert data['valuation'] == '2'
    assert data['U'] == '18'
    assert data['diophantine_k'] == 2


def test_analyze_triple_json(capsys):
    code, data = run_json(capsys, 'analyze', '1', '2', '3', '--n', '3')
    assert code == 0
    assert data['case'] == 't-case2'
    assert data['c'] == '3'


def test_analyze_table(capsys):
    code, out, _ = run(capsys, 'analyze', '1', '2', '--n', '7')
    assert code == 0
    assert 'case3-prime' in out
    assert '2058' in out


def test_analyze_reports_capped_fallback(capsys):
    code, data = run_json(capsys, 'analyze', '1', '2', '--n', '7', '--cap', '1')
    assert code == 0
    assert data['valuation'] == '3'


@pytest.mark.parametrize('argv', [
    ('analyze', '1', '--n', '3'),
    ('analyze', '1', '2', '3', '4', '--n', '3'),
    ('analyze', '0', '2', '--n', '3'),
    ('analyze', '1', '2', '--n', '1'),
    ('analyze', '1', '2'),
    ('analyze', 'x', '2', '--n', '3'),
])
def test_analyze_domain_and_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == cli.EXIT_DOMAIN


def test_analyze_anomaly_exit_code(capsys, broken_prediction):
    code, out, _ = run(capsys, 'analyze', '1', '2', '--n', '3')
    assert code == cli.EXIT_ANOMALY
    assert 'ANOMALY' in out


def test_scan_json_summary(capsys):
    code, data = run_json(capsys, 'scan', '--a-range', '1:3', '--b-range', '1:3', '--n', '3')
    assert code == 0
    assert data['records'] == 7
    assert data['cases'] == {'case1': 4, 'case2': 2, 'case3': 1}
    assert data['output'] is None


def test_scan_writes_jsonl(capsys, tmp_path):
    out = tmp_path / 'scan.jsonl'
    code, _, _ = run(
        capsys, 'scan', '--a-range', '1:10', '--b-range', '1:10', '--n-range', '2:6',
        '--case', '1', '--out', str(out),
    )
    assert code == 0
    rows = [json.loads(line) for line in out.read_text(encoding='utf-8').splitlines()]
    progress = rows[-1]['progress']
    assert (progress['n'], progress['a']) == (6, 10)
    assert progress['scan']['case_filter'] == 'case1'
    assert {row['case'] for row in rows[:-1]} == {'case1'}


def test_scan_writes_csv(capsys, tmp_path):
    out = tmp_path / 'scan.csv'
    code, _, _ = run(
        capsys, 'scan', '--a-range', '1:5', '--b-range', '1:5', '--primes-to', '7',
        '--format', 'csv', '--out', str(out),
    )
    assert code == 0
    assert out.read_text(encoding='utf-8').startswith('a,b,c,n,')


def test_scan_resume(capsys, tmp_path):
    out = tmp_path / 'scan.jsonl'
    args = ('scan', '--a-range', '1:6', '--b-range', '1:6', '--out', str(out))
    assert run(capsys, *args, '--n-range', '2:3')[0] == 0
    assert run(capsys, *args, '--n-range', '2:5', '--resume')[0] == 0
    last = out.read_text(encoding='utf-8').splitlines()[-1]
    progress = json.loads(last)['progress']
    assert (progress['n'], progress['a']) == (5, 6)


def test_scan_resume_of_corrupt_checkpoint_exits_with_io_code(capsys, tmp_path):
    out = tmp_path / 'scan.jsonl'
    out.write_bytes(b'\xff\xfe garbage\n')
    code, _, err = run(
        capsys, 'scan', '--a-range', '1:6', '--b-range', '1:6', '--n', '3', '--out', str(out), '--resume',
    )
    assert code == cli.EXIT_IO
    assert str(out) in err


def test_scan_resume_with_other_ranges_is_refused(capsys, tmp_path):
    out = tmp_path / 'scan.jsonl'
    assert run(capsys, 'scan', '--a-range', '1:6', '--b-range', '1:6', '--n-range', '2:3', '--out', str(out))[0] == 0
    code, _, err = run(
        capsys, 'scan', '--a-range', '1:6', '--b-range', '1:4', '--n-range', '2:5', '--out', str(out), '--resume',
    )
    assert code == cli.EXIT_DOMAIN
    assert 'refusing to resume' in err


@pytest.mark.parametrize('argv', [
    ('scan', '--a-range', '1-3', '--b-range', '1:3', '--n', '3'),
    ('scan', '--a-range', '1:3', '--b-range', '1:3'),
    ('scan', '--a-range', '1:3', '--b-range', '1:3', '--n', '3', '--n-range', '2:4'),
    ('scan', '--a-range', '0:3', '--b-range', '1:3', '--n', '3'),
    ('scan', '--a-range', '1:3', '--b-range', '1:3', '--n', '3', '--case', 't1'),
    ('scan', '--a-range', '1:3', '--b-range', '1:3', '--n', '3', '--resume'),
])
def test_scan_domain_errors(capsys, argv):
    assert run(capsys, *argv)[0] == cli.EXIT_DOMAIN


def test_scan_io_error(capsys, tmp_path):
    out = tmp_path / 'no-such-dir' / 'scan.jsonl'
    code, _, err = run(capsys, 'scan', '--a-range', '1:3', '--b-range', '1:3', '--n', '3', '--out', str(out))
    assert code == cli.EXIT_IO
    assert 'I/O error' in err


def test_scan_anomaly_exit_code(capsys, broken_prediction):
    code, data = run_json(capsys, 'scan', '--a-range', '1:4', '--b-range', '1:4', '--n', '3')
    assert code == cli.EXIT_ANOMALY
    assert data['anomalies'] == data['records']


def test_scan3(capsys):
    code, data = run_json(
        capsys, 'scan3', '--a-range', '1:4', '--b-range', '1:4', '--c-range', '1:4', '--n', '3',
    )
    assert code == 0
    assert data['records'] == 55


def test_quotient(capsys):
    code, data = run_json(capsys, 'quotient', '1', '2', '--n', '7')
    assert code == 0
    assert data['M'] == '294'
    assert data['residue'] == 0
    assert data['exceptional'] is True
    assert data['case3'] is True
    assert set(data['fermat_quotients']) == {'1', '2', '3'}


def test_quotient_needs_prime(capsys):
    assert run(capsys, 'quotient', '1', '2', '--n', '9')[0] == cli.EXIT_DOMAIN


def test_wieferich(capsys):
    code, data = run_json(capsys, 'wieferich', '--base', '2', '--limit', '4000')
    assert code == 0
    assert [hit['p'] for hit in data['hits']] == [1093, 3511]
    assert data['power'] == 2


def test_wieferich_table_without_hits(capsys):
    code, out, _ = run(capsys, 'wieferich', '--base', '2', '--limit', '1000')
    assert code == 0
    assert 'no hits' in out


def test_wieferich_rejects_bad_power(capsys):
    assert run(capsys, 'wieferich', '--base', '2', '--limit', '100', '--power', '1')[0] == cli.EXIT_DOMAIN


def test_verify_claims_quick(capsys):
    code, data = run_json(capsys, 'verify-claims', '--quick')
    assert code == 0
    assert data['passed'] is True
    assert len(data['claims']) == 9
    for claim in data['claims']:
        assert isinstance(claim['milliseconds'], int)
        assert 'seconds' not in claim


def test_unknown_command(capsys):
    assert run(capsys, 'frobnicate')[0] == cli.EXIT_DOMAIN
