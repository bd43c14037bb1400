"""Command-line front end.

    python cli.py analyze 1 2 --n 3
    python cli.py scan --a-range 1:150 --b-range 1:150 --n-range 2:24 --case 1 --workers 8
    python cli.py wieferich --base 2 --limit 4000
    python cli.py verify-claims

Exit codes: 0 success, 1 domain or usage error, 2 anomaly / failed claim,
3 I/O error.
"""
import functools
import json
import logging
import sys

import click
from rich.console import Console
from rich.table import Table

from config.config import Config
from models.scan import CASE_FILTERS, RECORD_FORMATS, IntRange, ScanConfig
from services import binomial_service, claims_service, fermat_service, scan_service, trinomial_service
from services.errors import DomainError, InvariantViolation, RecordIOError

logger = logging.getLogger(__name__)
console = Console(highlight=False)

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_ANOMALY = 2
EXIT_IO = 3


class RangeParam(click.ParamType):
    name = 'lo:hi'

    def convert(self, value, param, ctx):
        if isinstance(value, IntRange):
            return value
        try:
            return IntRange.parse(value)
        except DomainError as e:
            self.fail(str(e), param, ctx)


RANGE = RangeParam()


def handles_errors(command):
    """Turn library exceptions into exit codes."""

    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except DomainError as e:
            logger.error(f"Domain error: {str(e)}")
            click.echo(f"error: {e}", err=True)
            return EXIT_DOMAIN
        except RecordIOError as e:
            logger.error(f"I/O error: {str(e)}")
            click.echo(f"I/O error: {e}", err=True)
            return EXIT_IO
        except InvariantViolation as e:
            logger.error(f"Invariant violated: {str(e)}")
            click.echo(f"invariant violated: {e}", err=True)
            return EXIT_ANOMALY

    return wrapper


def emit_json(payload):
    click.echo(json.dumps(payload, sort_keys=False))


def _status(report):
    if report.anomaly:
        return 'ANOMALY'
    if report.exact_violation:
        return 'EXACT MISMATCH'
    return 'ok'


def _kv_table(title, rows):
    table = Table(title=title, show_header=False)
    table.add_column('field', style='bold')
    table.add_column('value', overflow='fold')
    for key, value in rows:
        table.add_row(key, str(value))
    console.print(table)


@click.group()
@click.option('--verbose', is_flag=True, help='Log pipeline progress to stderr.')
def cli(verbose):
    """Divisibility of truncated binomial and trinomial series."""
    logging.basicConfig(
        level=logging.INFO if verbose else Config.LOG_LEVEL,
        stream=sys.stderr,
        format='%(asctime)s %(levelname)s %(name)s: %(message)s',
    )


@cli.command()
@click.argument('values', nargs=-1, type=int, required=True)
@click.option('--n', 'n', type=int, required=True, help='Exponent n >= 2.')
@click.option('--cap', type=int, default=Config.VALUATION_CAP, show_default=True, help='Valuation cap K.')
@click.option('--json', 'as_json', is_flag=True, help='Print one JSON object.')
@handles_errors
def analyze(values, n, cap, as_json):
    """Analyze U(A, B) or, with three values, U(A, B, C)."""
    if len(values) not in (2, 3):
        raise click.UsageError('analyze takes two or three integers')
    if len(values) == 2:
        report = binomial_service.verify(values[0], values[1], n, cap=cap)
        payload = report.to_dict()
        payload['diophantine_k'] = binomial_service.diophantine_exponent(report)
    else:
        report = trinomial_service.verify3(*values, n, cap=cap)
        payload = report.to_dict()

    if as_json:
        emit_json(payload)
    else:
        rows = [
            ('inputs', ' '.join(str(v) for v in values)),
            ('n', n),
            ('extracted gcd', payload['extracted_gcd']),
            ('case', payload['case']),
            ('U', payload.get('U', '-')),
            ('valuation', payload['valuation']),
            ('prediction', f"{payload['predicted_bound']} ({payload['exactness']}, {payload['basis']})"),
            ('exceptional', payload['exceptional']),
            ('status', _status(report)),
        ]
        _kv_table('Truncated series analysis', rows)
    return EXIT_OK if report.ok else EXIT_ANOMALY


def scan_options(command):
    options = [
        click.option('--a-range', type=RANGE, required=True),
        click.option('--b-range', type=RANGE, required=True),
        click.option('--n', 'n', type=int, default=None, help='Single exponent.'),
        click.option('--n-range', type=RANGE, default=None, help='Exponents lo:hi.'),
        click.option('--primes-to', type=int, default=None, help='All prime exponents up to P.'),
        click.option('--cap', type=int, default=Config.VALUATION_CAP, show_default=True),
        click.option('--coprime/--no-coprime', default=True, show_default=True),
        click.option('--case', 'case', type=click.Choice(sorted(CASE_FILTERS)), default=None),
        click.option('--format', 'record_format', type=click.Choice(RECORD_FORMATS), default=Config.RECORD_FORMAT),
        click.option('--out', 'out', type=click.Path(dir_okay=False), default=None),
        click.option('--workers', type=int, default=Config.SCAN_WORKERS, show_default=True),
        click.option('--resume', is_flag=True, help='Continue from the checkpoint footer in --out.'),
        click.option('--json', 'as_json', is_flag=True),
    ]
    for option in reversed(options):
        command = option(command)
    return command


def _run_scan_command(runner, c_range, a_range, b_range, n, n_range, primes_to, cap, coprime, case,
                      record_format, out, workers, resume, as_json):
    cfg = ScanConfig(
        a_range=a_range,
        b_range=b_range,
        c_range=c_range,
        exponents=scan_service.exponents_from(n=n, n_range=n_range, primes_to=primes_to),
        coprime_only=coprime,
        case_filter=CASE_FILTERS[case] if case else None,
        valuation_cap=cap,
        output_path=out,
        worker_count=workers,
        record_format=record_format,
        resume=resume,
        slice_width=Config.SCAN_SLICE_WIDTH,
    )
    result = runner(cfg)
    summary = result.summary
    if as_json:
        payload = summary.to_dict()
        payload['output'] = out
        emit_json(payload)
    else:
        table = Table(title='Scan summary')
        for column in ('records', 'anomalies', 'exact violations', 'exceptional', 'cases'):
            table.add_column(column)
        cases = ', '.join(f"{k}={v}" for k, v in summary.case_counts.items())
        table.add_row(
            str(summary.total), str(summary.anomaly_count), str(summary.exact_violation_count),
            str(summary.exceptional_count), cases,
        )
        console.print(table)
        if out:
            console.print(f"records written to {out}")
    return EXIT_ANOMALY if summary.failed else EXIT_OK


@cli.command()
@scan_options
@handles_errors
def scan(**kwargs):
    """Sweep pairs (a, b) over ranges and exponents."""
    return _run_scan_command(scan_service.scan_pairs, None, **kwargs)


@cli.command()
@click.option('--c-range', type=RANGE, required=True)
@scan_options
@handles_errors
def scan3(c_range, **kwargs):
    """Sweep triples (a, b, c) over ranges and exponents."""
    return _run_scan_command(scan_service.scan_triples, c_range, **kwargs)


@cli.command()
@click.argument('a', type=int)
@click.argument('b', type=int)
@click.option('--n', 'p', type=int, required=True, help='Prime exponent p.')
@click.option('--json', 'as_json', is_flag=True)
@handles_errors
def quotient(a, b, p, as_json):
    """Fermat-quotient combination M with U(A, B) = p * M."""
    triple = fermat_service.combination(a, b, p)
    check = fermat_service.exceptional_criterion(a, b, p)
    payload = {**triple.to_dict(), **check.to_dict()}
    payload['fermat_quotients'] = {
        str(x): str(fermat_service.fermat_quotient(x, p)) for x in (a, b, a + b) if x % p
    }
    if as_json:
        emit_json(payload)
    else:
        _kv_table('Fermat quotient combination', [
            ('p', p),
            ('mu(a), mu(b), mu(a+b)', f"{payload['mu_a']}, {payload['mu_b']}, {payload['mu_ab']}"),
            ('M', payload['M']),
            ('U = p*M', payload['U']),
            ('M mod p', check.residue),
            ('case 3 pair', check.case_ok),
            ('p^2 divides U', check.exceptional),
        ])
    return EXIT_OK


@cli.command()
@click.option('--base', type=int, required=True)
@click.option('--limit', type=int, required=True)
@click.option('--power', type=int, default=Config.WIEFERICH_POWER, show_default=True)
@click.option('--include-two', is_flag=True, help='Also test p = 2.')
@click.option('--workers', type=int, default=Config.SCAN_WORKERS, show_default=True)
@click.option('--json', 'as_json', is_flag=True)
@handles_errors
def wieferich(base, limit, power, include_two, workers, as_json):
    """Primes p <= LIMIT with BASE^(p-1) = 1 mod p^POWER."""
    hits = fermat_service.wieferich_scan(base, limit, power, include_two=include_two, workers=workers)
    if as_json:
        emit_json({'base': str(base), 'limit': str(limit), 'power': power, 'hits': [h.to_dict() for h in hits]})
    else:
        table = Table(title=f"base {base}, p <= {limit}, modulus p^{power}")
        table.add_column('p')
        table.add_column('largest r')
        for hit in hits:
            table.add_row(str(hit.p), str(hit.max_power_r))
        console.print(table)
        if not hits:
            console.print('no hits')
    return EXIT_OK


@cli.command('verify-claims')
@click.option('--workers', type=int, default=Config.SCAN_WORKERS, show_default=True)
@click.option('--quick', is_flag=True, help='Reduced ranges for a fast smoke run.')
@click.option('--json', 'as_json', is_flag=True)
@handles_errors
def verify_claims(workers, quick, as_json):
    """Run every divisibility claim at desk scale."""
    results = claims_service.run_claims(claims_service.QUICK if quick else claims_service.FULL, workers=workers)
    passed = all(r.passed for r in results)
    if as_json:
        emit_json({'passed': passed, 'claims': [r.to_dict() for r in results]})
    else:
        table = Table(title='Claim verification')
        table.add_column('claim')
        table.add_column('result')
        table.add_column('ms', justify='right')
        table.add_column('detail', overflow='fold')
        for r in results:
            table.add_row(r.name, 'pass' if r.passed else 'FAIL', str(r.milliseconds), r.detail)
        console.print(table)
    return EXIT_OK if passed else EXIT_ANOMALY


def main(argv=None):
    try:
        rv = cli.main(args=argv, prog_name='tbs', standalone_mode=False)
    except click.ClickException as e:
        e.show()
        return EXIT_DOMAIN
    except click.Abort:
        return EXIT_DOMAIN
    return rv if isinstance(rv, int) else EXIT_OK


if __name__ == '__main__':
    sys.exit(main())
