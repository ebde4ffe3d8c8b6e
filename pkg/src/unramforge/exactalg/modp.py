"""Polynomial arithmetic and factorization over F_p.

Internal polynomials are plain lists of ints in ``[0, p)``, constant term
first, with no trailing zeros. Public functions accept and return ``Poly``.
"""

from __future__ import annotations

import random

from .integers import is_prime
from .poly import Poly

GF = list  # list[int], constant term first


def trim(f: GF) -> GF:
    while f and f[-1] == 0:
        f.pop()
    return f


def from_poly(f: Poly, p: int) -> GF:
    if not f.is_integral():
        den = 1
        for c in f.coeffs:
            den = den * getattr(c, "denominator", 1)
        if den % p == 0:
            raise ValueError(f"coefficient denominators divisible by {p}")
    return trim([int(c % p) if isinstance(c, int) else
                 c.numerator * pow(c.denominator, -1, p) % p for c in f.coeffs])


def to_poly(f: GF) -> Poly:
    return Poly(f)


def add(f: GF, g: GF, p: int) -> GF:
    if len(f) < len(g):
        f, g = g, f
    out = f[:]
    for i, c in enumerate(g):
        out[i] = (out[i] + c) % p
    return trim(out)


def sub(f: GF, g: GF, p: int) -> GF:
    out = f[:] + [0] * max(0, len(g) - len(f))
    for i, c in enumerate(g):
        out[i] = (out[i] - c) % p
    return trim(out)


def scale(f: GF, c: int, p: int) -> GF:
    return trim([a * c % p for a in f])


def mul(f: GF, g: GF, p: int) -> GF:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return trim([c % p for c in out])


def divmod_(f: GF, g: GF, p: int) -> tuple[GF, GF]:
    if not g:
        raise ZeroDivisionError("division by zero polynomial mod p")
    r = f[:]
    dg = len(g) - 1
    if len(r) - 1 < dg:
        return [], r
    inv = pow(g[-1], -1, p)
    q = [0] * (len(r) - dg)
    for k in range(len(r) - 1 - dg, -1, -1):
        c = r[k + dg] * inv % p
        q[k] = c
        if c:
            for j, b in enumerate(g):
                r[k + j] = (r[k + j] - c * b) % p
    return trim(q), trim(r[:dg])


def rem(f: GF, g: GF, p: int) -> GF:
    return divmod_(f, g, p)[1]


def monic(f: GF, p: int) -> GF:
    if not f:
        return f
    inv = pow(f[-1], -1, p)
    return [c * inv % p for c in f]


def gcd(f: GF, g: GF, p: int) -> GF:
    while g:
        f, g = g, rem(f, g, p)
    return monic(f, p)


def derivative(f: GF, p: int) -> GF:
    return trim([i * c % p for i, c in enumerate(f)][1:])


def powmod(f: GF, e: int, m: GF, p: int) -> GF:
    result = [1]
    base = rem(f, m, p)
    while e:
        if e & 1:
            result = rem(mul(result, base, p), m, p)
        e >>= 1
        if e:
            base = rem(mul(base, base, p), m, p)
    return result


def exact_quo(f: GF, g: GF, p: int) -> GF:
    q, r = divmod_(f, g, p)
    if r:
        raise ArithmeticError("inexact division mod p")
    return q


def squarefree_factorization(f: GF, p: int) -> list[tuple[GF, int]]:
    """Squarefree decomposition of a monic polynomial over F_p."""
    out: list[tuple[GF, int]] = []
    if len(f) <= 1:
        return out
    i = 1
    g = gcd(f, derivative(f, p), p)
    w = exact_quo(f, g, p)
    while len(w) > 1:
        y = gcd(w, g, p)
        z = exact_quo(w, y, p)
        if len(z) > 1:
            out.append((z, i))
        i += 1
        w = y
        g = exact_quo(g, y, p)
    if len(g) > 1:
        # g is a p-th power: take coefficientwise p-th root
        root = [g[k] for k in range(0, len(g), p)]
        out += [(h, e * p) for h, e in squarefree_factorization(root, p)]
    return out


def distinct_degree_factorization(f: GF, p: int) -> list[tuple[GF, int]]:
    """Split a squarefree monic polynomial into products of equal-degree factors."""
    out: list[tuple[GF, int]] = []
    x = [0, 1]
    h = x
    d = 0
    rest = f
    while 2 * (d + 1) <= len(rest) - 1:
        d += 1
        h = powmod(h, p, rest, p)
        g = gcd(rest, sub(h, x, p), p)
        if len(g) > 1:
            out.append((g, d))
            rest = exact_quo(rest, g, p)
            h = rem(h, rest, p)
    if len(rest) > 1:
        out.append((rest, len(rest) - 1))
    return out


def equal_degree_factorization(f: GF, d: int, p: int, rng: random.Random) -> list[GF]:
    """Cantor-Zassenhaus splitting of a product of degree-d irreducibles."""
    n = len(f) - 1
    if n == d:
        return [f]
    while True:
        a = trim([rng.randrange(p) for _ in range(n)])
        if len(a) < 2:
            continue
        if p == 2:
            # trace map a + a^2 + ... + a^(2^(d-1))
            t, b = a, a
            for _ in range(d - 1):
                t = rem(mul(t, t, p), f, p)
                b = add(b, t, p)
        else:
            b = sub(powmod(a, (p ** d - 1) // 2, f, p), [1], p)
        g = gcd(f, b, p)
        if 1 < len(g) < len(f):
            break
    h = exact_quo(f, g, p)
    return (equal_degree_factorization(g, d, p, rng)
            + equal_degree_factorization(h, d, p, rng))


def _check_prime(p: int) -> None:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")


def factor_mod_p(f: Poly, p: int, seed: int = 0) -> list[tuple[Poly, int]]:
    """Factor ``f`` over F_p into monic irreducibles with multiplicities.

    The output is sorted by (degree, coefficients). The leading coefficient
    is dropped; the product of the factors equals ``f / lc(f)`` mod p.
    """
    _check_prime(p)
    g = from_poly(f, p)
    if not g:
        raise ValueError("polynomial vanishes mod p")
    rng = random.Random(seed)
    g = monic(g, p)
    out: list[tuple[GF, int]] = []
    for part, e in squarefree_factorization(g, p):
        for block, d in distinct_degree_factorization(part, p):
            for h in equal_degree_factorization(block, d, p, rng):
                out.append((h, e))
    out.sort(key=lambda fe: (len(fe[0]), fe[0][::-1], fe[1]))
    return [(Poly(h), e) for h, e in out]


def degree_pattern(f: Poly, p: int) -> tuple[int, ...] | None:
    """Sorted factor degrees of ``f`` mod p, or None if not squarefree mod p.

    Only the distinct-degree stage runs, so this is the cheap path used by
    Frobenius cycle-type scans.
    """
    g = from_poly(f, p)
    if len(g) - 1 != f.degree:
        return None
    g = monic(g, p)
    if len(gcd(g, derivative(g, p), p)) > 1:
        return None
    pattern: list[int] = []
    for block, d in distinct_degree_factorization(g, p):
        pattern += [d] * ((len(block) - 1) // d)
    return tuple(sorted(pattern))


def is_irreducible_mod_p(f: Poly, p: int) -> bool:
    pat = degree_pattern(f, p)
    return pat is not None and len(pat) == 1


def is_squarefree_mod_p(f: Poly, p: int) -> bool:
    g = from_poly(f, p)
    if not g:
        return False
    g = monic(g, p)
    return len(gcd(g, derivative(g, p), p)) == 1
