from dataclasses import dataclass
from enum import Enum
from typing import Optional

from models.arith import Natural, Valuation


@dataclass(frozen=True)
class DivisibilityInstance:
    """A pair (a, b) with exponent n, gcd already divided out."""

    a: Natural
    b: Natural
    n: int
    extracted_gcd: Natural = 1


@dataclass(frozen=True)
class SeriesValue:
    q: Natural  # a + b
    Q: Natural  # a^n + b^n
    U: Natural  # q^n - Q

    def to_dict(self):
        return {'q': str(self.q), 'Q': str(self.Q), 'U': str(self.U)}


@dataclass(frozen=True)
class ResidueDecomposition:
    g_a: Natural
    r_a: int
    g_b: Natural
    r_b: int
    n: int
    g_a_divisible_by_n: bool
    g_b_divisible_by_n: bool

    @property
    def G(self):
        return self.g_a + self.g_b

    @property
    def R(self):
        return self.r_a + self.r_b

    def to_dict(self):
        return {
            'g_a': str(self.g_a),
            'r_a': self.r_a,
            'g_b': str(self.g_b),
            'r_b': self.r_b,
            'G': str(self.G),
            'R': self.R,
            'g_a_divisible_by_n': self.g_a_divisible_by_n,
            'g_b_divisible_by_n': self.g_b_divisible_by_n,
        }


class CaseKind(str, Enum):
    CASE1 = 'case1'  # exactly one of a, b divisible by n
    CASE2 = 'case2'  # r_a + r_b = n
    CASE3 = 'case3'  # r_a + r_b != n, both nonzero


@dataclass(frozen=True)
class CaseLabel:
    kind: CaseKind
    n_is_prime: bool
    n_is_even: bool
    divisible_side: Optional[str] = None  # 'a' or 'b', Case1 only

    @property
    def tag(self):
        if self.kind is CaseKind.CASE2:
            return f"case2-{'even' if self.n_is_even else 'odd'}"
        if self.kind is CaseKind.CASE3:
            return f"case3-{'prime' if self.n_is_prime else 'composite'}"
        return self.kind.value

    def to_dict(self):
        return {
            'kind': self.kind.value,
            'tag': self.tag,
            'n_is_prime': self.n_is_prime,
            'n_is_even': self.n_is_even,
            'divisible_side': self.divisible_side,
        }


class Exactness(str, Enum):
    LOWER_BOUND = 'lower-bound'
    EXACT = 'exact'
    NO_GUARANTEE = 'no-guarantee'


class Basis(str, Enum):
    ONE_SIDE_DIVISIBLE = 'one-side-divisible'
    COMPLEMENTARY_ODD = 'complementary-odd'
    COMPLEMENTARY_EVEN = 'complementary-even'
    COMPLEMENTARY_N2 = 'complementary-n2'
    PRIME_EXPONENT = 'prime-exponent'
    COMPOSITE_EXPONENT = 'composite-exponent'
    TRINOMIAL_PRIME = 'trinomial-prime'
    TRINOMIAL_COMPOSITE = 'trinomial-composite'
    TRINOMIAL_COMPLEMENTARY_ODD = 'trinomial-complementary-odd'
    TRINOMIAL_COMPLEMENTARY_EVEN = 'trinomial-complementary-even'
    TRINOMIAL_UNCOVERED = 'trinomial-uncovered'


@dataclass(frozen=True)
class Prediction:
    guaranteed_lower_bound: int
    exactness: Exactness
    basis: Basis

    def to_dict(self):
        return {
            'predicted_bound': self.guaranteed_lower_bound,
            'exactness': self.exactness.value,
            'basis': self.basis.value,
        }


def judge(actual, prediction):
    """(anomaly, exact_violation) for a measured valuation against a prediction."""
    anomaly = not actual.meets(prediction.guaranteed_lower_bound)
    exact_violation = prediction.exactness is Exactness.EXACT and (
        not actual.exact or actual.value != prediction.guaranteed_lower_bound
    )
    return anomaly, exact_violation


@dataclass(frozen=True)
class ValuationReport:
    instance: DivisibilityInstance
    case: CaseLabel
    actual_valuation: Valuation
    prediction: Prediction
    series: Optional[SeriesValue] = None
    decomposition: Optional[ResidueDecomposition] = None

    @property
    def anomaly(self):
        return judge(self.actual_valuation, self.prediction)[0]

    @property
    def exact_violation(self):
        return judge(self.actual_valuation, self.prediction)[1]

    @property
    def exceptional(self):
        # a case-3 pair whose series is divisible by n^2
        return self.case.kind is CaseKind.CASE3 and self.actual_valuation.meets(2)

    @property
    def ok(self):
        return not (self.anomaly or self.exact_violation)

    def to_dict(self):
        data = {
            'a': str(self.instance.a),
            'b': str(self.instance.b),
            'n': self.instance.n,
            'extracted_gcd': str(self.instance.extracted_gcd),
            'case': self.case.tag,
            'case_detail': self.case.to_dict(),
            'valuation': str(self.actual_valuation),
            **self.prediction.to_dict(),
            'anomaly': self.anomaly,
            'exact_violation': self.exact_violation,
            'exceptional': self.exceptional,
            'ok': self.ok,
        }
        if self.series is not None:
            data.update(self.series.to_dict())
        if self.decomposition is not None:
            data['decomposition'] = self.decomposition.to_dict()
        return data
