"""The divisibility claims, checked end to end at desk scale.

`run_claims` backs the `verify-claims` command: every claim is measured
against exact arithmetic and reported as passed or failed.
"""
import logging
import tempfile
import time
from dataclasses import dataclass
from pathlib import Path

from models.scan import IntRange, ScanConfig
from services import binomial_service, fermat_service, scan_service, trinomial_service
from services.errors import InvariantViolation
from services.exact_arith import is_prime, primes_up_to
from services.record_store import read_records, write_records

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ClaimScale:
    pair_bound: int  # a, b range for the pair sweeps
    exponent_max: int  # exponents 2..exponent_max
    quotient_prime_max: int
    quotient_bound: int
    split_bound: int
    split_exponent_max: int
    triple_bound: int
    triple_exponent_max: int


FULL = ClaimScale(
    pair_bound=150, exponent_max=24,
    quotient_prime_max=97, quotient_bound=60,
    split_bound=25, split_exponent_max=12,
    triple_bound=60, triple_exponent_max=13,
)
QUICK = ClaimScale(
    pair_bound=40, exponent_max=12,
    quotient_prime_max=31, quotient_bound=20,
    split_bound=8, split_exponent_max=8,
    triple_bound=15, triple_exponent_max=7,
)


@dataclass(frozen=True)
class ClaimResult:
    name: str
    passed: bool
    detail: str
    milliseconds: int = 0

    def to_dict(self):
        return {'name': self.name, 'passed': self.passed, 'detail': self.detail, 'milliseconds': self.milliseconds}


def _pair_config(scale, exponents, case_filter, workers):
    return ScanConfig(
        a_range=IntRange(1, scale.pair_bound),
        b_range=IntRange(1, scale.pair_bound),
        exponents=tuple(exponents),
        case_filter=case_filter,
        worker_count=workers,
    )


def _triple_config(scale, exponents, case_filter, workers):
    bound = IntRange(1, scale.triple_bound)
    return ScanConfig(
        a_range=bound, b_range=bound, c_range=bound,
        exponents=tuple(exponents), case_filter=case_filter, worker_count=workers,
    )


def _sweep_detail(summary):
    return f"{summary.total} records, {summary.anomaly_count} anomalies, {summary.exact_violation_count} exact violations"


def claim_one_side_divisible(scale, workers):
    result = scan_service.scan_pairs(_pair_config(scale, range(2, scale.exponent_max + 1), 'case1', workers))
    return result.summary.anomaly_count == 0 and result.summary.total > 0, _sweep_detail(result.summary)


def claim_complementary_odd(scale, workers):
    odd = [n for n in range(3, scale.exponent_max + 1) if n % 2]
    result = scan_service.scan_pairs(_pair_config(scale, odd, 'case2', workers))
    return result.summary.anomaly_count == 0 and result.summary.total > 0, _sweep_detail(result.summary)


def claim_complementary_even(scale, workers):
    even = [n for n in range(2, scale.exponent_max + 1) if n % 2 == 0]
    result = scan_service.scan_pairs(_pair_config(scale, even, 'case2', workers))
    summary = result.summary
    passed = summary.total > 0 and not summary.failed
    return passed, _sweep_detail(summary)


def claim_quotient_identity(scale, workers):
    primes = primes_up_to(scale.quotient_prime_max)
    failures = 0
    for p in primes:
        for a in range(1, scale.quotient_bound + 1):
            for b in range(1, scale.quotient_bound + 1):
                try:
                    fermat_service.combination(a, b, p)
                except InvariantViolation as e:
                    logger.error(str(e))
                    failures += 1
    cfg = ScanConfig(
        a_range=IntRange(1, scale.quotient_bound),
        b_range=IntRange(1, scale.quotient_bound),
        exponents=tuple(primes),
        case_filter='case3',
        worker_count=workers,
    )
    summary = scan_service.scan_pairs(cfg).summary
    passed = failures == 0 and summary.anomaly_count == 0
    return passed, f"{failures} identity failures over {len(primes)} primes; " + _sweep_detail(summary)


def claim_composite_witness(scale, workers):
    composites = [n for n in range(4, scale.exponent_max + 1) if not is_prime(n)]
    missing = []
    for n in composites:
        records = scan_service.scan_pairs(_pair_config(scale, [n], 'case3', workers)).records
        if not any(r.valuation.exact and r.valuation.value == 0 for r in records):
            missing.append(n)
    return not missing, f"witness missing for {missing}" if missing else f"witnesses for all of {composites}"


def claim_exceptional_spot_checks(scale, workers):
    report = binomial_service.verify(1, 2, 7)
    frequency = scan_service.frequency_report(5, 50)
    passed = (
        report.actual_valuation.value == 3
        and report.exceptional
        and frequency.exceptional_count == 0
    )
    return passed, (
        f"U(1,2) for n=7 has valuation {report.actual_valuation}, exceptional={report.exceptional}; "
        f"p=5 bound=50 exceptional pairs: {frequency.exceptional_count}"
    )


def claim_trinomial(scale, workers):
    split_failures = 0
    for n in range(2, scale.split_exponent_max + 1):
        for a in range(1, scale.split_bound + 1):
            for b in range(1, scale.split_bound + 1):
                for c in range(1, scale.split_bound + 1):
                    try:
                        trinomial_service.compute_U3(trinomial_service.normalize3(a, b, c, n))
                    except InvariantViolation as e:
                        logger.error(str(e))
                        split_failures += 1
    primes = [p for p in primes_up_to(scale.triple_exponent_max) if p > 2]
    case1 = scan_service.scan_triples(_triple_config(scale, primes, 't-case1', workers)).summary
    case2 = scan_service.scan_triples(
        _triple_config(scale, range(2, scale.triple_exponent_max + 1), 't-case2', workers)
    ).summary
    witnesses = (
        trinomial_service.verify3(1, 1, 3, 3).actual_valuation.value == 1
        and trinomial_service.verify3(1, 2, 3, 3).actual_valuation.value == 2
    )
    passed = split_failures == 0 and not case1.failed and not case2.failed and witnesses
    return passed, (
        f"{split_failures} split failures; t-case1: {_sweep_detail(case1)}; "
        f"t-case2: {_sweep_detail(case2)}; witnesses {'ok' if witnesses else 'wrong'}"
    )


def claim_wieferich(scale, workers):
    base2 = [hit.p for hit in fermat_service.wieferich_scan(2, 4000, 2, workers=workers)]
    base3 = [hit.p for hit in fermat_service.wieferich_scan(3, 100, 2, workers=workers)]
    return base2 == [1093, 3511] and base3 == [11], f"base 2: {base2}; base 3: {base3}"


def _records_bytes(records, directory, name):
    path = Path(directory) / name
    write_records(records, 'jsonl', path)
    return path.read_bytes()


def claim_determinism_and_round_trip(scale, workers):
    other = workers if workers > 1 else 8
    exponents = range(2, scale.exponent_max + 1)
    serial = scan_service.scan_pairs(_pair_config(scale, exponents, 'case1', 1)).records
    pooled = scan_service.scan_pairs(_pair_config(scale, exponents, 'case1', other)).records
    with tempfile.TemporaryDirectory() as tmp:
        identical = _records_bytes(serial, tmp, 'serial.jsonl') == _records_bytes(pooled, tmp, 'pooled.jsonl')
        reread = read_records(Path(tmp) / 'serial.jsonl', 'jsonl')
    round_trip = list(reread) == list(serial)
    return identical and round_trip, (
        f"workers 1 vs {other}: {'identical' if identical else 'DIFFERENT'}; "
        f"round trip: {'lossless' if round_trip else 'LOSSY'} over {len(serial)} records"
    )


CLAIMS = [
    ('one-side-divisible bound', claim_one_side_divisible),
    ('complementary odd bound', claim_complementary_odd),
    ('complementary even exactness', claim_complementary_even),
    ('quotient identity and prime bound', claim_quotient_identity),
    ('composite no-guarantee witnesses', claim_composite_witness),
    ('exceptional spot checks', claim_exceptional_spot_checks),
    ('trinomial suite', claim_trinomial),
    ('wieferich reproduction', claim_wieferich),
    ('determinism and round trip', claim_determinism_and_round_trip),
]


def run_claims(scale=FULL, workers=1):
    results = []
    for name, check in CLAIMS:
        started = time.perf_counter_ns()
        passed, detail = check(scale, workers)
        elapsed_ms = (time.perf_counter_ns() - started) // 1_000_000
        if passed:
            logger.info(f"claim '{name}' passed in {elapsed_ms} ms: {detail}")
        else:
            logger.error(f"claim '{name}' FAILED: {detail}")
        results.append(ClaimResult(name=name, passed=passed, detail=detail, milliseconds=elapsed_ms))
    return results
