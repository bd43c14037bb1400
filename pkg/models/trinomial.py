from dataclasses import dataclass
from enum import Enum
from typing import Optional

from models.arith import Natural, Valuation
from models.instance import CaseLabel, Prediction, judge


@dataclass(frozen=True)
class TrinomialInstance:
    a: Natural
    b: Natural
    c: Natural
    n: int
    extracted_gcd: Natural = 1


class TrinomialKind(str, Enum):
    T_CASE1 = 't-case1'  # a, b, a+b not divisible by n; n | c
    T_CASE2 = 't-case2'  # n | a+b, n | c, r_a and r_b nonzero
    UNCOVERED = 'uncovered'


@dataclass(frozen=True)
class TrinomialCase:
    kind: TrinomialKind
    n_is_prime: bool
    n_is_even: bool
    # cases of the summands U(a, b) and U(a+b, c); None when both residues vanish
    pair_case: Optional[CaseLabel] = None
    carry_case: Optional[CaseLabel] = None

    @property
    def tag(self):
        return self.kind.value

    def to_dict(self):
        return {
            'kind': self.kind.value,
            'n_is_prime': self.n_is_prime,
            'n_is_even': self.n_is_even,
            'pair_case': self.pair_case.tag if self.pair_case else None,
            'carry_case': self.carry_case.tag if self.carry_case else None,
        }


@dataclass(frozen=True)
class TrinomialReport:
    instance: TrinomialInstance
    case: TrinomialCase
    actual_valuation: Valuation
    prediction: Prediction
    U: Optional[Natural] = None

    @property
    def anomaly(self):
        return judge(self.actual_valuation, self.prediction)[0]

    @property
    def exact_violation(self):
        return judge(self.actual_valuation, self.prediction)[1]

    @property
    def exceptional(self):
        return False

    @property
    def ok(self):
        return not (self.anomaly or self.exact_violation)

    def to_dict(self):
        data = {
            'a': str(self.instance.a),
            'b': str(self.instance.b),
            'c': str(self.instance.c),
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
        if self.U is not None:
            data['U'] = str(self.U)
        return data
