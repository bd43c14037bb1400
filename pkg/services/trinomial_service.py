"""Truncated trinomial series U(a, b, c) = (a+b+c)^n - a^n - b^n - c^n.

The series splits exactly into U(a, b) + U(a+b, c), so its divisibility is
read off the two binomial summands.
"""
import logging

from config.config import Config
from models.arith import Valuation
from models.instance import Basis, DivisibilityInstance, Exactness, Prediction
from models.trinomial import TrinomialCase, TrinomialInstance, TrinomialKind, TrinomialReport
from services import binomial_service
from services.errors import DomainError, InvariantViolation
from services.exact_arith import gcd, is_prime, pow_exact, pow_mod, valuation

logger = logging.getLogger(__name__)


def normalize3(a, b, c, n):
    for value, name in ((a, "a"), (b, "b"), (c, "c")):
        if isinstance(value, bool) or not isinstance(value, int) or value < 1:
            raise DomainError(f"{name} must be a positive integer, got {value!r}")
    if isinstance(n, bool) or not isinstance(n, int) or n < 2:
        raise DomainError(f"exponent n must be an integer >= 2, got {n!r}")
    g = gcd(gcd(a, b), c)
    return TrinomialInstance(a=a // g, b=b // g, c=c // g, n=n, extracted_gcd=g)


def compute_U3(inst):
    a, b, c, n = inst.a, inst.b, inst.c, inst.n
    direct = pow_exact(a + b + c, n) - pow_exact(a, n) - pow_exact(b, n) - pow_exact(c, n)
    split = binomial_service.sum_form(a, b, n) + binomial_service.sum_form(a + b, c, n)
    if direct != split:
        raise InvariantViolation(f"direct and split forms of U({a}, {b}, {c}) differ for n={n}")
    return direct


def _component_case(x, y, n):
    dec = binomial_service.decompose(DivisibilityInstance(a=x, b=y, n=n))
    if dec.r_a == 0 and dec.r_b == 0:
        return None
    return binomial_service.classify(dec, n)


def classify3(inst):
    n = inst.n
    r_a, r_b, r_c = inst.a % n, inst.b % n, inst.c % n
    if r_a == 0 and r_b == 0 and r_c == 0:
        raise DomainError(f"a, b and c are all divisible by n={n}; divide out their common factor first")
    r_ab = (r_a + r_b) % n
    if r_a and r_b and r_c == 0:
        kind = TrinomialKind.T_CASE1 if r_ab else TrinomialKind.T_CASE2
    else:
        kind = TrinomialKind.UNCOVERED
    return TrinomialCase(
        kind=kind,
        n_is_prime=is_prime(n),
        n_is_even=n % 2 == 0,
        pair_case=_component_case(inst.a, inst.b, n),
        carry_case=_component_case(inst.a + inst.b, inst.c, n),
    )


def predict3(case, n):
    if case.kind is TrinomialKind.T_CASE1:
        if is_prime(n):
            return Prediction(1, Exactness.LOWER_BOUND, Basis.TRINOMIAL_PRIME)
        return Prediction(0, Exactness.NO_GUARANTEE, Basis.TRINOMIAL_COMPOSITE)
    if case.kind is TrinomialKind.T_CASE2:
        if n % 2 == 1:
            return Prediction(2, Exactness.LOWER_BOUND, Basis.TRINOMIAL_COMPLEMENTARY_ODD)
        if n == 2:
            return Prediction(1, Exactness.EXACT, Basis.COMPLEMENTARY_N2)
        return Prediction(0, Exactness.EXACT, Basis.TRINOMIAL_COMPLEMENTARY_EVEN)
    if case.pair_case is not None or case.carry_case is not None:
        logger.info(
            f"uncovered trinomial pattern for n={n}: "
            f"U(a,b) is {case.pair_case.tag if case.pair_case else 'degenerate'}, "
            f"U(a+b,c) is {case.carry_case.tag if case.carry_case else 'degenerate'}"
        )
    return Prediction(0, Exactness.NO_GUARANTEE, Basis.TRINOMIAL_UNCOVERED)


def valuation_capped3(inst, cap):
    if isinstance(cap, bool) or not isinstance(cap, int) or cap < 1:
        raise DomainError(f"valuation cap must be an integer >= 1, got {cap!r}")
    a, b, c, n = inst.a, inst.b, inst.c, inst.n
    modulus = n ** (cap + 1)
    residue = (
        pow_mod(a + b + c, n, modulus)
        - pow_mod(a, n, modulus)
        - pow_mod(b, n, modulus)
        - pow_mod(c, n, modulus)
    ) % modulus
    return binomial_service.valuation_from_residue(residue, n, cap)


def verify3(a, b, c, n, cap=None, exact_fallback=True, with_series=True):
    cap = Config.VALUATION_CAP if cap is None else cap
    inst = normalize3(a, b, c, n)
    case = classify3(inst)
    prediction = predict3(case, n)
    U = compute_U3(inst) if with_series else None
    actual = valuation_capped3(inst, cap)
    if not actual.exact and exact_fallback:
        logger.warning(f"valuation of U({inst.a}, {inst.b}, {inst.c}) exceeds cap {cap}; using exact value")
        if U is None:
            U = compute_U3(inst)
        actual = Valuation(valuation(U, n))
    report = TrinomialReport(instance=inst, case=case, actual_valuation=actual, prediction=prediction, U=U)
    if report.anomaly or report.exact_violation:
        logger.error(
            f"prediction failed for U({inst.a}, {inst.b}, {inst.c}), n={n}: "
            f"measured {actual}, predicted {prediction.guaranteed_lower_bound} ({prediction.basis.value})"
        )
    return report
