from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Tuple

from models.arith import Natural, Valuation
from services.errors import DomainError

# --case flag values -> record case tags
CASE_FILTERS = {
    '1': 'case1',
    '2': 'case2',
    '3': 'case3',
    't1': 't-case1',
    't2': 't-case2',
}

RECORD_FORMATS = ('jsonl', 'csv')


@dataclass(frozen=True)
class IntRange:
    """Inclusive integer interval."""

    lo: int
    hi: int

    @classmethod
    def parse(cls, text):
        try:
            lo, hi = (int(part) for part in str(text).split(':'))
        except ValueError:
            raise DomainError(f"Invalid range {text!r}; expected lo:hi")
        return cls(lo, hi)

    def __iter__(self):
        return iter(range(self.lo, self.hi + 1))

    def __len__(self):
        return max(0, self.hi - self.lo + 1)

    def __str__(self):
        return f"{self.lo}:{self.hi}"


@dataclass(frozen=True)
class ScanConfig:
    a_range: IntRange
    b_range: IntRange
    exponents: Tuple[int, ...]
    c_range: Optional[IntRange] = None
    coprime_only: bool = True
    case_filter: Optional[str] = None  # record case tag, e.g. 'case1' or 't-case2'
    valuation_cap: int = 64
    output_path: Optional[str] = None
    worker_count: int = 1
    record_format: str = 'jsonl'
    resume: bool = False
    slice_width: int = 25

    @property
    def is_trinomial(self):
        return self.c_range is not None

    def fingerprint(self):
        """Settings a resumed sweep must share with the one that wrote the checkpoint."""
        return {
            'a_range': str(self.a_range),
            'b_range': str(self.b_range),
            'c_range': str(self.c_range) if self.c_range is not None else None,
            'coprime_only': self.coprime_only,
            'case_filter': self.case_filter,
            'valuation_cap': self.valuation_cap,
        }

    def validate(self):
        ranges = [('a_range', self.a_range), ('b_range', self.b_range)]
        if self.c_range is not None:
            ranges.append(('c_range', self.c_range))
        for name, rng in ranges:
            if len(rng) == 0:
                raise DomainError(f"{name} {rng} is empty")
            if rng.lo < 1:
                raise DomainError(f"{name} {rng} must start at 1 or above")
        if not self.exponents:
            raise DomainError("exponent set is empty")
        if any(n < 2 for n in self.exponents):
            raise DomainError(f"all exponents must be >= 2, got {list(self.exponents)}")
        if self.valuation_cap < 1:
            raise DomainError(f"valuation cap must be >= 1, got {self.valuation_cap}")
        if self.worker_count < 1:
            raise DomainError(f"worker count must be >= 1, got {self.worker_count}")
        if self.slice_width < 1:
            raise DomainError(f"slice width must be >= 1, got {self.slice_width}")
        if self.record_format not in RECORD_FORMATS:
            raise DomainError(f"record format must be one of {RECORD_FORMATS}, got {self.record_format!r}")
        if self.case_filter is not None:
            allowed = ('t-case1', 't-case2', 'uncovered') if self.is_trinomial else ('case1', 'case2', 'case3')
            if self.case_filter not in allowed:
                raise DomainError(f"case filter {self.case_filter!r} does not apply to this scan")
        if self.resume and (self.output_path is None or self.record_format != 'jsonl'):
            raise DomainError("resume needs a JSONL output path")
        return self


def _bool(text):
    if isinstance(text, bool):
        return text
    if text in ('true', 'True', '1'):
        return True
    if text in ('false', 'False', '0'):
        return False
    raise DomainError(f"Invalid boolean {text!r}")


@dataclass(frozen=True)
class ScanRecord:
    a: Natural
    b: Natural
    n: int
    case: str
    valuation: Valuation
    predicted_bound: int
    basis: str
    anomaly: bool
    exact_violation: bool
    exceptional: bool
    extracted_gcd: Natural = 1
    c: Optional[Natural] = None

    @property
    def sort_key(self):
        return (self.n, self.a, self.b, self.c or 0)

    @classmethod
    def from_report(cls, a, b, report, c=None):
        """Record for raw inputs (a, b[, c]) from a pair or triple report."""
        return cls(
            a=a,
            b=b,
            c=c,
            n=report.instance.n,
            case=report.case.kind.value,
            valuation=report.actual_valuation,
            predicted_bound=report.prediction.guaranteed_lower_bound,
            basis=report.prediction.basis.value,
            anomaly=report.anomaly,
            exact_violation=report.exact_violation,
            exceptional=report.exceptional,
            extracted_gcd=report.instance.extracted_gcd,
        )

    def to_row(self):
        row = {'a': str(self.a), 'b': str(self.b)}
        if self.c is not None:
            row['c'] = str(self.c)
        row.update({
            'n': self.n,
            'case': self.case,
            'valuation': str(self.valuation),
            'predicted_bound': self.predicted_bound,
            'basis': self.basis,
            'anomaly': self.anomaly,
            'exact_violation': self.exact_violation,
            'exceptional': self.exceptional,
            'extracted_gcd': str(self.extracted_gcd),
        })
        return row

    @classmethod
    def from_row(cls, row):
        try:
            c = row.get('c')
            return cls(
                a=int(row['a']),
                b=int(row['b']),
                c=int(c) if c not in (None, '') else None,
                n=int(row['n']),
                case=row['case'],
                valuation=Valuation.parse(row['valuation']),
                predicted_bound=int(row['predicted_bound']),
                basis=row['basis'],
                anomaly=_bool(row['anomaly']),
                exact_violation=_bool(row.get('exact_violation', False)),
                exceptional=_bool(row['exceptional']),
                extracted_gcd=int(row['extracted_gcd']),
            )
        except (AttributeError, KeyError, TypeError, ValueError) as e:
            raise DomainError(f"Malformed scan record {row!r}: {e}")


@dataclass(frozen=True)
class ScanSummary:
    total: int = 0
    anomaly_count: int = 0
    exact_violation_count: int = 0
    exceptional_count: int = 0
    case_counts: dict = field(default_factory=dict)

    @classmethod
    def from_records(cls, records):
        records = list(records)
        return cls(
            total=len(records),
            anomaly_count=sum(r.anomaly for r in records),
            exact_violation_count=sum(r.exact_violation for r in records),
            exceptional_count=sum(r.exceptional for r in records),
            case_counts=dict(sorted(Counter(r.case for r in records).items())),
        )

    @property
    def failed(self):
        return self.anomaly_count > 0 or self.exact_violation_count > 0

    def to_dict(self):
        return {
            'records': self.total,
            'anomalies': self.anomaly_count,
            'exact_violations': self.exact_violation_count,
            'exceptional': self.exceptional_count,
            'cases': self.case_counts,
        }


@dataclass(frozen=True)
class FrequencySummary:
    p: int
    bound: int
    case3_pair_count: int
    exceptional_count: int
    exceptional_pairs: Tuple[Tuple[int, int], ...] = ()

    @property
    def ratio(self):
        if self.case3_pair_count == 0:
            return Fraction(0)
        return Fraction(self.exceptional_count, self.case3_pair_count)

    def to_dict(self):
        return {
            'p': self.p,
            'bound': str(self.bound),
            'case3_pair_count': str(self.case3_pair_count),
            'exceptional_count': str(self.exceptional_count),
            'ratio': {
                'numerator': str(self.ratio.numerator),
                'denominator': str(self.ratio.denominator),
            },
        }


@dataclass(frozen=True)
class ScanResult:
    records: Tuple[ScanRecord, ...]
    summary: ScanSummary
