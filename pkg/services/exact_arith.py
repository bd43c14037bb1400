"""Exact integer primitives shared by every analysis module.

Everything here works on Python ints and never touches floating point.
"""
import math

from sympy import isprime, primerange

from services.errors import DomainError


def _require_natural(value, name):
    if isinstance(value, bool) or not isinstance(value, int):
        raise DomainError(f"{name} must be an integer, got {type(value).__name__}")
    if value < 0:
        raise DomainError(f"{name} must be nonnegative, got {value}")
    return value


def binom(n, v):
    """C(n, v) for 0 <= v <= n."""
    _require_natural(n, "n")
    _require_natural(v, "v")
    if v > n:
        raise DomainError(f"binomial coefficient needs v <= n, got v={v}, n={n}")
    return math.comb(n, v)


def pow_exact(base, exp):
    _require_natural(base, "base")
    _require_natural(exp, "exp")
    return base ** exp


def pow_mod(base, exp, modulus):
    _require_natural(base, "base")
    _require_natural(exp, "exp")
    _require_natural(modulus, "modulus")
    if modulus < 2:
        raise DomainError(f"modulus must be >= 2, got {modulus}")
    return pow(base, exp, modulus)


def valuation(x, base):
    """Largest k with base**k dividing x.

    `base` need not be prime: for composite bases this is the literal
    "n^k divides x" exponent, not a per-prime minimum.
    """
    _require_natural(x, "x")
    _require_natural(base, "base")
    if x == 0:
        raise DomainError("valuation of 0 is undefined")
    if base < 2:
        raise DomainError(f"valuation base must be >= 2, got {base}")
    k = 0
    while x % base == 0:
        x //= base
        k += 1
    return k


def is_prime(n):
    """Deterministic primality.

    sympy.isprime runs strong Miller-Rabin on a fixed base set that is proven
    exact below 2**64, and BPSW above it.
    """
    _require_natural(n, "n")
    return bool(isprime(n))


def gcd(x, y):
    _require_natural(x, "x")
    _require_natural(y, "y")
    if x == 0 and y == 0:
        raise DomainError("gcd(0, 0) is undefined")
    return math.gcd(x, y)


def primes_between(lo, hi):
    """Ascending primes p with lo <= p <= hi."""
    _require_natural(lo, "lo")
    _require_natural(hi, "hi")
    if hi < lo:
        return []
    return [int(p) for p in primerange(lo, hi + 1)]


def primes_up_to(limit):
    return primes_between(2, limit)
