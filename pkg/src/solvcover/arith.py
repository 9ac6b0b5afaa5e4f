"""Small integer helpers shared by the group and formula modules."""

from __future__ import annotations

from functools import lru_cache


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def factor_prime_power(n: int) -> tuple[int, int] | None:
    """(p, k) with n = p**k and k >= 1, or None."""
    if n < 2:
        return None
    p = next(q for q in range(2, n + 1) if n % q == 0)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return (p, k) if n == 1 else None


def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, int(n**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i, v in enumerate(sieve) if v]


def prime_powers_between(lo: int, hi: int) -> list[tuple[int, int, int]]:
    """Sorted (d, p, k) for all prime powers lo <= d <= hi."""
    out = []
    for p in primes_up_to(hi):
        d, k = p, 1
        while d <= hi:
            if d >= lo:
                out.append((d, p, k))
            d *= p
            k += 1
    return sorted(out)
