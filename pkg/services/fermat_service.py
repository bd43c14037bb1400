"""Fermat quotients and the p^2-divisibility criterion for case-3 pairs.

For prime p write mu(x) = (x^p - x)/p. Then

    (a+b)^p - a^p - b^p = p * (mu(a+b) - mu(a) - mu(b))

holds exactly over the integers, so p^2 divides U(a, b) iff the
combination M = mu(a+b) - mu(a) - mu(b) is divisible by p.
"""
import logging

from joblib import Parallel, delayed

from models.quotient import ExceptionalCheck, QuotientTriple, WieferichHit
from services.errors import DomainError, InvariantViolation
from services.exact_arith import is_prime, pow_exact, pow_mod, primes_between, valuation

logger = logging.getLogger(__name__)

WIEFERICH_CHUNK = 256


def _require_prime(p):
    if isinstance(p, bool) or not isinstance(p, int) or not is_prime(p):
        raise DomainError(f"p must be prime, got {p!r}")


def _require_positive(value, name):
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise DomainError(f"{name} must be a positive integer, got {value!r}")


def mu(x, p):
    _require_positive(x, "x")
    _require_prime(p)
    quotient, remainder = divmod(pow_exact(x, p) - x, p)
    if remainder:
        raise InvariantViolation(f"x^p - x not divisible by p for x={x}, p={p}")
    return quotient


def fermat_quotient(x, p):
    _require_positive(x, "x")
    _require_prime(p)
    if x % p == 0:
        raise DomainError(f"Fermat quotient needs p not dividing x, got x={x}, p={p}")
    return (pow_exact(x, p - 1) - 1) // p


def combination(a, b, p):
    _require_positive(a, "a")
    _require_positive(b, "b")
    _require_prime(p)
    mu_a, mu_b, mu_ab = mu(a, p), mu(b, p), mu(a + b, p)
    triple = QuotientTriple(
        a=a, b=b, p=p, mu_a=mu_a, mu_b=mu_b, mu_ab=mu_ab, combination_M=mu_ab - mu_a - mu_b
    )
    U = pow_exact(a + b, p) - pow_exact(a, p) - pow_exact(b, p)
    if U != triple.U:
        raise InvariantViolation(f"U({a}, {b}) != p*M for p={p}")
    return triple


def is_case3(a, b, p):
    r_a, r_b = a % p, b % p
    return r_a != 0 and r_b != 0 and r_a + r_b != p


def exceptional_criterion(a, b, p):
    """M mod p, read off U mod p^2 without materializing U."""
    _require_positive(a, "a")
    _require_positive(b, "b")
    _require_prime(p)
    case_ok = is_case3(a, b, p)
    if not case_ok:
        logger.warning(f"({a}, {b}) is not a case-3 pair for p={p}; criterion reported anyway")
    modulus = p * p
    u_mod = (pow_mod(a + b, p, modulus) - pow_mod(a, p, modulus) - pow_mod(b, p, modulus)) % modulus
    return ExceptionalCheck(a=a, b=b, p=p, residue=u_mod // p, case_ok=case_ok)


def exceptional_residues(p):
    """Case-3 residue pairs (r_a, r_b) mod p whose series is divisible by p^2.

    a^p depends only on a mod p when read mod p^2, so this table decides the
    criterion for every pair.
    """
    _require_prime(p)
    return [
        (r_a, r_b)
        for r_a in range(1, p)
        for r_b in range(1, p)
        if r_a + r_b != p and exceptional_criterion(r_a, r_b, p).exceptional
    ]


def _wieferich_chunk(base, primes, r):
    hits = []
    for p in primes:
        if base % p == 0:
            continue
        ceiling = r + 2
        x = pow_mod(base, p - 1, p ** ceiling)
        if (x - 1) % p ** r:
            continue
        reached = ceiling if x == 1 else min(valuation(x - 1, p), ceiling)
        hits.append(WieferichHit(base=base, p=p, max_power_r=reached))
    return hits


def wieferich_scan(base, p_limit, r=2, include_two=False, workers=1, p_from=2):
    """Primes p_from <= p <= p_limit with base^(p-1) = 1 (mod p^r), ascending."""
    if isinstance(base, bool) or not isinstance(base, int) or base < 2:
        raise DomainError(f"base must be an integer >= 2, got {base!r}")
    if isinstance(r, bool) or not isinstance(r, int) or r < 2:
        raise DomainError(f"power r must be an integer >= 2, got {r!r}")
    if isinstance(p_limit, bool) or not isinstance(p_limit, int) or p_limit < 0:
        raise DomainError(f"p_limit must be a nonnegative integer, got {p_limit!r}")

    primes = [p for p in primes_between(max(2, p_from), p_limit) if include_two or p != 2]
    chunks = [primes[i:i + WIEFERICH_CHUNK] for i in range(0, len(primes), WIEFERICH_CHUNK)]
    logger.info(
        f"Wieferich sweep base={base} r={r} over {len(primes)} primes "
        f"in {len(chunks)} chunks, workers={workers}"
    )
    results = Parallel(n_jobs=max(1, workers))(
        delayed(_wieferich_chunk)(base, chunk, r) for chunk in chunks
    )
    hits = [hit for chunk_hits in results for hit in chunk_hits]
    logger.info(f"Wieferich sweep base={base}: {len(hits)} hits")
    return hits
