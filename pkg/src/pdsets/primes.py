"""Deterministic primality, prime search and primitive roots."""

from __future__ import annotations

from math import gcd

from .core import InvalidArgumentError

# Strong-pseudoprime bases 2..41 are a proof of primality below this bound
# (Sorenson and Webster, 2015).
DETERMINISTIC_LIMIT = 3_317_044_064_679_887_385_961_981
_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def _strong_probable_prime(n: int, a: int, d: int, s: int) -> bool:
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in _SMALL_PRIMES:
        if n % q == 0:
            return n == q
    if n < 53 * 53:
        return True
    if n >= DETERMINISTIC_LIMIT:
        raise InvalidArgumentError(f"{n} exceeds the deterministic primality range")
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    return all(_strong_probable_prime(n, a, d, s) for a in _BASES)


def next_prime(n: int) -> int:
    """Smallest prime strictly greater than ``n``."""
    if n < 2:
        return 2
    c = n + 1 if n % 2 == 0 else n + 2
    while not is_prime(c):
        c += 2
    return c


def _pollard_rho(n: int) -> int:
    if n % 2 == 0:
        return 2
    c = 1
    while True:
        x = y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = gcd(abs(x - y), n)
        if d != n:
            return d
        c += 1


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``n >= 1``, ascending."""
    found = set()
    for q in _SMALL_PRIMES:
        while n % q == 0:
            found.add(q)
            n //= q
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if is_prime(m):
            found.add(m)
            continue
        f = _pollard_rho(m)
        stack.extend((f, m // f))
    return sorted(found)


def primitive_root(p: int) -> int:
    """Least generator of the multiplicative group mod an odd prime ``p``."""
    if p < 3 or not is_prime(p):
        raise InvalidArgumentError(f"primitive_root needs an odd prime, got {p}")
    cofactors = [(p - 1) // q for q in prime_factors(p - 1)]
    for g in range(2, p):
        if all(pow(g, e, p) != 1 for e in cofactors):
            return g
    raise AssertionError("unreachable: every prime has a primitive root")
