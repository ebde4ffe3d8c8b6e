"""Integer utilities: valuations, primality, sieving and factorization."""

from __future__ import annotations

import math
import random
from fractions import Fraction

INFINITY = math.inf

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


class FactorizationBudgetExceeded(RuntimeError):
    """Raised when Pollard rho gives up within its iteration budget."""


def valuation(n: int | Fraction, p: int) -> float | int:
    """Return v_p(n); the valuation of zero is ``math.inf``."""
    if isinstance(n, Fraction):
        if n == 0:
            return INFINITY
        return valuation(n.numerator, p) - valuation(n.denominator, p)
    if n == 0:
        return INFINITY
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def is_prime(n: int) -> bool:
    # Miller-Rabin with the first 13 prime bases: deterministic below 3.3e24,
    # a strong probable-prime test above.
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_up_to(bound: int) -> list[int]:
    """Sieve of Eratosthenes."""
    if bound < 2:
        return []
    sieve = bytearray([1]) * (bound + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(bound) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, bound + 1, i)))
    return [i for i, flag in enumerate(sieve) if flag]


_TRIAL_PRIMES = primes_up_to(1000)


def _pollard_brent(n: int, rng: random.Random, budget: int) -> int:
    if n % 2 == 0:
        return 2
    steps = 0
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
            steps += r
            if steps > budget:
                raise FactorizationBudgetExceeded(n)
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def factorint(n: int, budget: int = 2_000_000, seed: int = 0) -> dict[int, int]:
    """Prime factorization of ``|n|`` as ``{prime: exponent}``.

    Trial division by primes below 1000, then Pollard-Brent. Raises
    ``FactorizationBudgetExceeded`` if a cofactor resists ``budget`` rho steps.
    """
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    out: dict[int, int] = {}
    for p in _TRIAL_PRIMES:
        if p * p > n:
            break
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    rng = random.Random(seed)
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        r = math.isqrt(m)
        if r * r == m:
            stack += [r, r]
            continue
        d = _pollard_brent(m, rng, budget)
        stack += [d, m // d]
    return dict(sorted(out.items()))


def prime_support(n: int, **kw) -> list[int]:
    return list(factorint(n, **kw))


def squarefree_kernel(n: int | Fraction) -> int:
    """Signed squarefree integer k with n = k * (rational square)."""
    if isinstance(n, Fraction):
        n = n.numerator * n.denominator
    if n == 0:
        raise ValueError("zero has no squarefree kernel")
    k = -1 if n < 0 else 1
    for p, e in factorint(n).items():
        if e % 2:
            k *= p
    return k


def strip_common_primes(n: int, m: int) -> int:
    """Remove from ``n`` every prime that also divides ``m``."""
    n = abs(n)
    g = math.gcd(n, m)
    while g > 1:
        while n % g == 0:
            n //= g
        g = math.gcd(n, g)
    return n


def is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def reduce_mod(q: int | Fraction, n: int) -> int:
    """The representative ``<q>`` of a rational in ``[0, n)``.

    The denominator must be invertible modulo ``n``.
    """
    q = Fraction(q)
    if math.gcd(q.denominator, n) != 1:
        raise ValueError(f"denominator {q.denominator} not invertible mod {n}")
    return q.numerator * pow(q.denominator, -1, n) % n
