from dataclasses import dataclass

from models.arith import Natural


@dataclass(frozen=True)
class QuotientTriple:
    """(x^p - x)/p for a, b and a + b, and their combination M.

    For prime p, (a+b)^p - a^p - b^p = p * M exactly.
    """

    a: Natural
    b: Natural
    p: int
    mu_a: Natural
    mu_b: Natural
    mu_ab: Natural
    combination_M: int  # signed

    @property
    def U(self):
        return self.p * self.combination_M

    def to_dict(self):
        return {
            'a': str(self.a),
            'b': str(self.b),
            'p': self.p,
            'mu_a': str(self.mu_a),
            'mu_b': str(self.mu_b),
            'mu_ab': str(self.mu_ab),
            'M': str(self.combination_M),
            'U': str(self.U),
        }


@dataclass(frozen=True)
class ExceptionalCheck:
    a: Natural
    b: Natural
    p: int
    residue: int  # M mod p
    case_ok: bool  # the pair classifies as case 3 under p

    @property
    def exceptional(self):
        return self.residue == 0

    def to_dict(self):
        return {
            'a': str(self.a),
            'b': str(self.b),
            'p': self.p,
            'residue': self.residue,
            'exceptional': self.exceptional,
            'case3': self.case_ok,
        }


@dataclass(frozen=True)
class WieferichHit:
    base: Natural
    p: int
    max_power_r: int

    def to_dict(self):
        return {'base': str(self.base), 'p': self.p, 'max_power_r': self.max_power_r}
