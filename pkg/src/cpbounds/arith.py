"""Exact integer primitives: p-adic valuations and the products they are taken of."""

from __future__ import annotations

from functools import lru_cache
from math import isqrt, prod

TRIAL_DIVISION_LIMIT = 10**12


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


@lru_cache(maxsize=4096)
def is_prime(n: int) -> bool:
    """Deterministic trial division; intended for the small primes used in sweeps."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    if n > TRIAL_DIVISION_LIMIT:
        raise DomainError(f"{n} is too large for trial-division primality")
    i = 5
    while i * i <= n:
        if n % i == 0 or n % (i + 2) == 0:
            return False
        i += 6
    return True


def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, n + 1, i)))
    return [i for i, flag in enumerate(sieve) if flag]


def prime_power(q: int) -> tuple[int, int] | None:
    """Return (p, k) with q == p**k, or None if q is not a prime power."""
    if q < 2:
        return None
    p = 2
    while p * p <= q:
        if q % p == 0:
            break
        p += 1
    else:
        return q, 1
    k = 0
    while q % p == 0:
        q //= p
        k += 1
    return (p, k) if q == 1 else None


def _require_prime(p: int) -> None:
    if not isinstance(p, int) or not is_prime(p):
        raise DomainError(f"{p!r} is not prime")


def vp(p: int, n: int) -> int:
    """Largest k with p**k dividing n (sign of n ignored)."""
    _require_prime(p)
    if n == 0:
        raise DomainError("valuation of 0 is undefined")
    n = abs(n)
    k = 0
    # strip p**(2**j) chunks first so 300-digit orders don't cost one division per factor
    if n % p == 0:
        powers = [p]
        while n % (powers[-1] * powers[-1]) == 0:
            powers.append(powers[-1] * powers[-1])
        for j in range(len(powers) - 1, -1, -1):
            if n % powers[j] == 0:
                n //= powers[j]
                k += 1 << j
        while n % p == 0:
            n //= p
            k += 1
    return k


def legendre_factorial_vp(p: int, m: int) -> int:
    """v_p(m!) via Legendre's formula, sum of floor(m / p**i)."""
    _require_prime(p)
    if m < 0:
        raise DomainError("factorial of a negative integer")
    total = 0
    q = p
    while q <= m:
        total += m // q
        q *= p
    return total


def product_vp(p: int, a: int, m: int) -> int:
    """v_p of prod_{i=1..m} (a**i - 1), one term at a time."""
    _require_prime(p)
    if abs(a) < 2:
        raise DomainError("|a| must be at least 2")
    if m < 1:
        raise DomainError("m must be positive")
    if a % p == 0:
        raise DomainError(f"{p} divides a={a}")
    total = 0
    power = 1
    for _ in range(m):
        power *= a
        total += vp(p, power - 1)
    return total


def alt_order(m: int) -> int:
    """|Alt(m)| = m!/2 for the simple alternating groups."""
    if m < 5:
        raise DomainError(f"Alt({m}) is not simple")
    return prod(range(3, m + 1))
