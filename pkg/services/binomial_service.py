"""Truncated binomial series U(a, b) = (a + b)^n - a^n - b^n.

Pipeline: normalize -> decompose -> classify -> predict -> measure.
"""
import logging

from config.config import Config
from models.arith import Valuation
from models.instance import (
    Basis,
    CaseKind,
    CaseLabel,
    DivisibilityInstance,
    Exactness,
    Prediction,
    ResidueDecomposition,
    SeriesValue,
    ValuationReport,
)
from services.errors import DomainError, InvariantViolation
from services.exact_arith import binom, gcd, is_prime, pow_exact, pow_mod, valuation

logger = logging.getLogger(__name__)


def _require_exponent(n):
    if isinstance(n, bool) or not isinstance(n, int) or n < 2:
        raise DomainError(f"exponent n must be an integer >= 2, got {n!r}")


def _require_positive(value, name):
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise DomainError(f"{name} must be a positive integer, got {value!r}")


def _require_cap(cap):
    if isinstance(cap, bool) or not isinstance(cap, int) or cap < 1:
        raise DomainError(f"valuation cap must be an integer >= 1, got {cap!r}")


def normalize(a, b, n):
    _require_positive(a, "a")
    _require_positive(b, "b")
    _require_exponent(n)
    g = gcd(a, b)
    return DivisibilityInstance(a=a // g, b=b // g, n=n, extracted_gcd=g)


def decompose(inst):
    n = inst.n
    g_a, r_a = divmod(inst.a, n)
    g_b, r_b = divmod(inst.b, n)
    return ResidueDecomposition(
        g_a=g_a,
        r_a=r_a,
        g_b=g_b,
        r_b=r_b,
        n=n,
        g_a_divisible_by_n=g_a % n == 0,
        g_b_divisible_by_n=g_b % n == 0,
    )


def classify(dec, n):
    if dec.r_a == 0 and dec.r_b == 0:
        raise DomainError(
            f"both a and b are divisible by n={n}; divide out their common factor first"
        )
    n_is_prime = is_prime(n)
    n_is_even = n % 2 == 0
    if dec.r_a == 0 or dec.r_b == 0:
        side = 'a' if dec.r_a == 0 else 'b'
        return CaseLabel(CaseKind.CASE1, n_is_prime, n_is_even, divisible_side=side)
    kind = CaseKind.CASE2 if dec.r_a + dec.r_b == n else CaseKind.CASE3
    return CaseLabel(kind, n_is_prime, n_is_even)


def sum_form(a, b, n):
    """Sum over 1 <= v <= n-1 of C(n, v) a^v b^(n-v)."""
    return sum(binom(n, v) * pow_exact(a, v) * pow_exact(b, n - v) for v in range(1, n))


def compute_U(inst):
    a, b, n = inst.a, inst.b, inst.n
    q = a + b
    Q = pow_exact(a, n) + pow_exact(b, n)
    U = pow_exact(q, n) - Q
    if U != sum_form(a, b, n):
        raise InvariantViolation(f"power and sum forms of U({a}, {b}) differ for n={n}")
    return SeriesValue(q=q, Q=Q, U=U)


def valuation_from_residue(residue, n, cap):
    """Valuation of a number known only modulo n^(cap+1).

    A nonzero residue pins the valuation down exactly (it is at most cap);
    a zero residue only tells us it is at least cap + 1.
    """
    if residue == 0:
        return Valuation.at_least(cap + 1)
    return Valuation(valuation(residue, n))


def valuation_capped(inst, cap):
    _require_cap(cap)
    a, b, n = inst.a, inst.b, inst.n
    modulus = n ** (cap + 1)
    residue = (pow_mod(a + b, n, modulus) - pow_mod(a, n, modulus) - pow_mod(b, n, modulus)) % modulus
    return valuation_from_residue(residue, n, cap)


def predict(case, n):
    if case.kind is CaseKind.CASE1:
        return Prediction(2, Exactness.LOWER_BOUND, Basis.ONE_SIDE_DIVISIBLE)
    if case.kind is CaseKind.CASE2:
        if n % 2 == 1:
            return Prediction(2, Exactness.LOWER_BOUND, Basis.COMPLEMENTARY_ODD)
        if n == 2:
            # U = 2ab with a, b odd
            return Prediction(1, Exactness.EXACT, Basis.COMPLEMENTARY_N2)
        # U = -2 r_a^n (mod n) with gcd(r_a, n) = 1
        return Prediction(0, Exactness.EXACT, Basis.COMPLEMENTARY_EVEN)
    if is_prime(n):
        return Prediction(1, Exactness.LOWER_BOUND, Basis.PRIME_EXPONENT)
    return Prediction(0, Exactness.NO_GUARANTEE, Basis.COMPOSITE_EXPONENT)


def measure(inst, cap, exact_fallback=True, series=None):
    """Capped valuation of U, replaced by the exact one when the cap is hit."""
    actual = valuation_capped(inst, cap)
    if actual.exact or not exact_fallback:
        return actual
    logger.warning(
        f"valuation of U({inst.a}, {inst.b}) exceeds cap {cap} for n={inst.n}; "
        "falling back to exact arithmetic"
    )
    if series is None:
        series = compute_U(inst)
    return Valuation(valuation(series.U, inst.n))


def verify(a, b, n, cap=None, exact_fallback=True, with_series=True):
    cap = Config.VALUATION_CAP if cap is None else cap
    _require_cap(cap)
    inst = normalize(a, b, n)
    dec = decompose(inst)
    case = classify(dec, n)
    prediction = predict(case, n)
    series = compute_U(inst) if with_series else None
    actual = measure(inst, cap, exact_fallback=exact_fallback, series=series)
    report = ValuationReport(
        instance=inst,
        case=case,
        actual_valuation=actual,
        prediction=prediction,
        series=series,
        decomposition=dec,
    )
    if report.anomaly or report.exact_violation:
        logger.error(
            f"prediction failed for U({inst.a}, {inst.b}), n={n}: "
            f"measured {actual}, predicted {prediction.guaranteed_lower_bound} "
            f"({prediction.exactness.value}, {prediction.basis.value})"
        )
    return report


def case2_identity_check(r_a, n):
    """Complementary-residue identity: with r_b = n - r_a the truncated sum
    equals n^n - r_a^n - (n - r_a)^n."""
    _require_exponent(n)
    if isinstance(r_a, bool) or not isinstance(r_a, int) or not 1 <= r_a <= n - 1:
        raise DomainError(f"r_a must satisfy 1 <= r_a <= n-1, got r_a={r_a!r}, n={n}")
    r_b = n - r_a
    lhs = sum_form(r_a, r_b, n)
    rhs = pow_exact(n, n) - pow_exact(r_a, n) - pow_exact(r_b, n)
    return lhs == rhs


def diophantine_exponent(report):
    """The power k of n that an equation A*n^k - U = 0 can rely on."""
    if report.prediction.exactness is Exactness.NO_GUARANTEE:
        return 0
    return report.prediction.guaranteed_lower_bound
