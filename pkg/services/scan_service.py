"""Range sweeps over pairs and triples.

Work is cut into (n, a-slice) tasks and handed to a joblib pool. joblib
returns task results in submission order, and tasks are submitted in
(n, a) order, so the merged stream is ordered by (n, a, b, c) for any
worker count.
"""
import logging

from joblib import Parallel, delayed

from models.instance import DivisibilityInstance, ValuationReport
from models.scan import FrequencySummary, ScanRecord, ScanResult, ScanSummary
from models.trinomial import TrinomialReport
from services import binomial_service, trinomial_service
from services.errors import DomainError
from services.exact_arith import gcd, is_prime, primes_up_to
from services.fermat_service import is_case3
from services.record_store import ScanCheckpoint, write_records

logger = logging.getLogger(__name__)


def exponents_from(n=None, n_range=None, primes_to=None):
    """Exponent set from the --n / --n-range / --primes-to flags, ascending."""
    chosen = [flag for flag in (n, n_range, primes_to) if flag is not None]
    if len(chosen) != 1:
        raise DomainError("give exactly one of --n, --n-range, --primes-to")
    if n is not None:
        exponents = [n]
    elif n_range is not None:
        exponents = list(n_range)
    else:
        exponents = primes_up_to(primes_to)
    if not exponents:
        raise DomainError("exponent set is empty")
    return tuple(sorted(set(exponents)))


def _pair_slice(cfg, n, a_lo, a_hi):
    records = []
    for a in range(a_lo, a_hi + 1):
        for b in cfg.b_range:
            if cfg.coprime_only and gcd(a, b) != 1:
                continue
            inst = binomial_service.normalize(a, b, n)
            case = binomial_service.classify(binomial_service.decompose(inst), n)
            if cfg.case_filter is not None and case.kind.value != cfg.case_filter:
                continue
            report = ValuationReport(
                instance=inst,
                case=case,
                actual_valuation=binomial_service.measure(inst, cfg.valuation_cap, exact_fallback=False),
                prediction=binomial_service.predict(case, n),
            )
            records.append(ScanRecord.from_report(a, b, report))
    return records


def _triple_slice(cfg, n, a_lo, a_hi):
    records = []
    for a in range(a_lo, a_hi + 1):
        for b in cfg.b_range:
            for c in cfg.c_range:
                if cfg.coprime_only and gcd(gcd(a, b), c) != 1:
                    continue
                inst = trinomial_service.normalize3(a, b, c, n)
                case = trinomial_service.classify3(inst)
                if cfg.case_filter is not None and case.kind.value != cfg.case_filter:
                    continue
                report = TrinomialReport(
                    instance=inst,
                    case=case,
                    actual_valuation=trinomial_service.valuation_capped3(inst, cfg.valuation_cap),
                    prediction=trinomial_service.predict3(case, n),
                )
                records.append(ScanRecord.from_report(a, b, report, c=c))
    return records


def _a_slices(cfg):
    lo, hi, width = cfg.a_range.lo, cfg.a_range.hi, cfg.slice_width
    return [(start, min(start + width - 1, hi)) for start in range(lo, hi + 1, width)]


def _open_checkpoint(cfg, exponents):
    """(checkpoint, records already done, exponents still to scan)."""
    if cfg.output_path is None or cfg.record_format != 'jsonl':
        return None, [], list(exponents)
    checkpoint = ScanCheckpoint(cfg.output_path, scan=cfg.fingerprint())
    if not cfg.resume:
        checkpoint.start()
        return checkpoint, [], list(exponents)

    records, progress = checkpoint.load()
    if progress is None:
        logger.info(f"No checkpoint at {cfg.output_path}; starting fresh")
        checkpoint.start()
        return checkpoint, [], list(exponents)
    if progress.get('scan') != checkpoint.scan:
        raise DomainError(
            f"{cfg.output_path} was written by a sweep with settings {progress.get('scan')}, "
            f"not {checkpoint.scan}; refusing to resume"
        )
    done_n = progress['n']
    done = [r for r in records if r.n <= done_n]
    remaining = [n for n in exponents if n > done_n]
    logger.warning(f"Resuming scan from {cfg.output_path}: {len(done)} records through n={done_n}")
    checkpoint.start(done)
    if not remaining:
        checkpoint.commit([], done_n, progress.get('a', cfg.a_range.hi))
    return checkpoint, done, remaining


def _run_scan(cfg, slice_fn):
    cfg.validate()
    exponents = sorted(set(cfg.exponents))
    checkpoint, records, remaining = _open_checkpoint(cfg, exponents)
    slices = _a_slices(cfg)

    with Parallel(n_jobs=cfg.worker_count) as parallel:
        for n in remaining:
            chunks = parallel(delayed(slice_fn)(cfg, n, lo, hi) for lo, hi in slices)
            slice_records = [record for chunk in chunks for record in chunk]
            if checkpoint is not None:
                checkpoint.commit(slice_records, n, cfg.a_range.hi)
            records.extend(slice_records)
            logger.info(f"n={n}: {len(slice_records)} records")

    if cfg.output_path is not None and cfg.record_format == 'csv':
        write_records(records, 'csv', cfg.output_path)

    summary = ScanSummary.from_records(records)
    if summary.failed:
        logger.error(
            f"scan finished with {summary.anomaly_count} anomalies and "
            f"{summary.exact_violation_count} exact-prediction violations"
        )
    return ScanResult(records=tuple(records), summary=summary)


def scan_pairs(cfg):
    if cfg.is_trinomial:
        raise DomainError("scan_pairs takes a config without c_range")
    return _run_scan(cfg, _pair_slice)


def scan_triples(cfg):
    if not cfg.is_trinomial:
        raise DomainError("scan_triples needs a c_range")
    return _run_scan(cfg, _triple_slice)


def frequency_report(p, bound):
    """How often a coprime case-3 pair in [1, bound]^2 has p^2 | U."""
    if isinstance(p, bool) or not isinstance(p, int) or not is_prime(p):
        raise DomainError(f"p must be prime, got {p!r}")
    if isinstance(bound, bool) or not isinstance(bound, int) or bound < p:
        raise DomainError(f"bound must be an integer >= p, got {bound!r}")

    case3_pairs = 0
    exceptional = []
    for a in range(1, bound + 1):
        for b in range(1, bound + 1):
            if gcd(a, b) != 1 or not is_case3(a, b, p):
                continue
            case3_pairs += 1
            if binomial_service.valuation_capped(DivisibilityInstance(a, b, p), 1).meets(2):
                exceptional.append((a, b))
    summary = FrequencySummary(
        p=p,
        bound=bound,
        case3_pair_count=case3_pairs,
        exceptional_count=len(exceptional),
        exceptional_pairs=tuple(exceptional),
    )
    logger.info(f"p={p}, bound={bound}: {summary.exceptional_count}/{case3_pairs} exceptional")
    return summary
