"""Factorization over Z by Hensel lifting and Zassenhaus recombination."""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from . import modp
from .integers import factorint, primes_up_to
from .poly import Poly, squarefree_decomposition

DEFAULT_DEGREE_CAP = 12


class DegreeTooLarge(ValueError):
    """Raised when recombination would exceed the configured degree cap."""


# -- arithmetic on integer coefficient lists modulo M -------------------------

def _mod_list(f, m):
    return modp.trim([c % m for c in f])


def _mul_mod(f, g, m):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return modp.trim([c % m for c in out])


def _add_mod(f, g, m):
    n = max(len(f), len(g))
    return modp.trim([((f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0)) % m
                      for i in range(n)])


def _sub_mod(f, g, m):
    n = max(len(f), len(g))
    return modp.trim([((f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0)) % m
                      for i in range(n)])


def _divmod_monic(f, g, m):
    """Division by a monic g over Z/mZ."""
    r = f[:]
    dg = len(g) - 1
    if len(r) - 1 < dg:
        return [], _mod_list(r, m)
    q = [0] * (len(r) - dg)
    for k in range(len(r) - 1 - dg, -1, -1):
        c = r[k + dg] % m
        q[k] = c
        if c:
            for j, b in enumerate(g):
                r[k + j] -= c * b
    return _mod_list(q, m), _mod_list(r[:dg], m)


def _bezout_mod_p(g, h, p):
    """s, t with s*g + t*h = 1 over F_p (g, h coprime)."""
    r0, r1 = g, h
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = modp.divmod_(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, modp.sub(s0, modp.mul(q, s1, p), p)
        t0, t1 = t1, modp.sub(t0, modp.mul(q, t1, p), p)
    if len(r0) != 1:
        raise ArithmeticError("factors not coprime mod p")
    inv = pow(r0[0], -1, p)
    return modp.scale(s0, inv, p), modp.scale(t0, inv, p)


def _hensel_step(f, g, h, s, t, m):
    """One quadratic Hensel step: lift f = g*h, s*g + t*h = 1 from mod m to m^2.

    h must be monic; f is taken monic-compatible (lc(f) = lc(g)).
    """
    m2 = m * m
    e = _sub_mod(f, _mul_mod(g, h, m2), m2)
    q, r = _divmod_monic(_mul_mod(s, e, m2), h, m2)
    g1 = _add_mod(_add_mod(g, _mul_mod(t, e, m2), m2), _mul_mod(q, g, m2), m2)
    h1 = _add_mod(h, r, m2)
    b = _sub_mod(_add_mod(_mul_mod(s, g1, m2), _mul_mod(t, h1, m2), m2), [1], m2)
    c, d = _divmod_monic(_mul_mod(s, b, m2), h1, m2)
    s1 = _sub_mod(s, d, m2)
    t1 = _sub_mod(_sub_mod(t, _mul_mod(t, b, m2), m2), _mul_mod(c, g1, m2), m2)
    return g1, h1, s1, t1


def hensel_lift_factorization(f: Poly, factors: list[Poly], p: int, k: int) -> list[Poly]:
    """Lift a factorization ``f = lc(f) * prod(factors)`` mod p to mod p^k.

    ``factors`` are monic, pairwise coprime mod p. Returns monic lifts with
    ``f == lc(f) * prod(lifts)`` modulo ``p^k``.
    """
    target = p ** k
    lc = f.lc
    lc_inv = pow(lc % target, -1, target)
    fm = [c * lc_inv % target for c in f.coeffs]  # monic mod p^k
    return [Poly(h) for h in _lift_tree(fm, [modp.from_poly(g, p) for g in factors], p, target)]


def _lift_tree(f, factors, p, target):
    if len(factors) == 1:
        return [_mod_list(f, target)]
    half = len(factors) // 2
    g0 = [1]
    for a in factors[:half]:
        g0 = modp.mul(g0, a, p)
    h0 = [1]
    for a in factors[half:]:
        h0 = modp.mul(h0, a, p)
    s, t = _bezout_mod_p(g0, h0, p)
    g, h, m = g0, h0, p
    while m < target:
        g, h, s, t = _hensel_step(_mod_list(f, m * m), g, h, s, t, m)
        m = m * m
    g, h = _mod_list(g, target), _mod_list(h, target)
    return _lift_tree(g, factors[:half], p, target) + _lift_tree(h, factors[half:], p, target)


def _factor_coefficient_bound(f: Poly) -> int:
    # Landau-Mignotte: a factor of degree <= n has coefficients bounded by
    # binom(n-1, j) ||f||_2 + binom(n-1, j-1) |lc|; 2^n ||f||_2 dominates.
    n = f.degree
    norm2 = math.isqrt(sum(c * c for c in f.coeffs)) + 1
    return (2 ** n) * norm2 * abs(f.lc)


def _choose_prime(f: Poly, tries: int = 6, seed: int = 0):
    best = None
    found = 0
    for p in primes_up_to(2000)[1:]:
        if f.lc % p == 0 or not modp.is_squarefree_mod_p(f, p):
            continue
        facs = modp.factor_mod_p(f, p, seed=seed)
        if best is None or len(facs) < len(best[1]):
            best = (p, facs)
        found += 1
        if len(facs) == 1 or found >= tries:
            break
    if best is None:
        raise ArithmeticError("no good prime found below 2000")
    return best


def _zassenhaus(f: Poly, cap: int, seed: int) -> list[Poly]:
    """Irreducible factors of a primitive squarefree integer polynomial."""
    n = f.degree
    if n <= 1:
        return [f]
    p, facs = _choose_prime(f, seed=seed)
    if len(facs) == 1:
        return [f]
    if n > cap:
        raise DegreeTooLarge(f"degree {n} exceeds factorization cap {cap}")
    bound = 2 * _factor_coefficient_bound(f) + 1
    k = 1
    while p ** k < bound:
        k += 1
    modulus = p ** k
    lifted = hensel_lift_factorization(f, [g for g, _ in facs], p, k)

    result: list[Poly] = []
    remaining = list(range(len(lifted)))
    g = f
    s = 1
    while 2 * s <= len(remaining):
        for subset in combinations(remaining, s):
            lc = g.lc
            cand = Poly((lc,))
            for i in subset:
                cand = (cand * lifted[i]).mods(modulus)
            rest = Poly((lc,))
            for i in remaining:
                if i not in subset:
                    rest = (rest * lifted[i]).mods(modulus)
            if cand * rest == g * lc:
                factor = cand.primitive()
                result.append(factor)
                g = rest.primitive()
                remaining = [i for i in remaining if i not in subset]
                break
        else:
            s += 1
    result.append(g.primitive())
    return result


def factor_over_Z(f: Poly, cap: int = DEFAULT_DEGREE_CAP, seed: int = 0) -> tuple[int, list[tuple[Poly, int]]]:
    """Complete factorization ``f = content * prod(g_i ^ e_i)``.

    Factors are primitive with positive leading coefficient, sorted by
    (degree, coefficients). The returned content carries the sign.
    """
    if not f:
        raise ValueError("cannot factor the zero polynomial")
    if not f.is_integral():
        raise ValueError("factor_over_Z expects integer coefficients")
    prim = f.primitive()
    content = f.lc // prim.lc
    if f.degree == 0:
        return content, []
    out: list[tuple[Poly, int]] = []
    for part, e in squarefree_decomposition(prim):
        for g in _zassenhaus(part.primitive(), cap, seed):
            out.append((g, e))
    out.sort(key=lambda ge: (ge[0].degree, ge[0].coeffs, ge[1]))
    return content, out


# -- irreducibility ---------------------------------------------------------------

@dataclass(frozen=True)
class IrreducibilityResult:
    irreducible: bool
    method: str
    witness: Poly | None = None
    prime: int | None = None

    def __bool__(self) -> bool:
        return self.irreducible


def eisenstein_prime(f: Poly) -> int | None:
    """Smallest prime at which ``f`` is Eisenstein, if any."""
    if not f.is_integral() or f.degree < 1:
        return None
    g = 0
    for c in f.coeffs[:-1]:
        g = math.gcd(g, c)
    if g in (0, 1):
        return None
    for p in factorint(g):
        if f.lc % p and f.coeffs[0] % (p * p):
            return p
    return None


def is_irreducible_Q(f: Poly, cap: int = DEFAULT_DEGREE_CAP, seed: int = 0,
                     sieve_primes: int = 40) -> IrreducibilityResult:
    """Decide irreducibility over Q.

    Fast paths: degree 1, Eisenstein, and a degree-set sieve over the factor
    patterns mod small primes. Otherwise falls back to ``factor_over_Z``.
    """
    if f.degree < 1:
        raise ValueError("irreducibility needs degree >= 1")
    f = f.primitive()
    n = f.degree
    if n == 1:
        return IrreducibilityResult(True, "linear")
    p = eisenstein_prime(f)
    if p is not None:
        return IrreducibilityResult(True, "eisenstein", prime=p)
    possible = set(range(n + 1))
    seen = 0
    for q in primes_up_to(1000):
        if f.lc % q == 0:
            continue
        pat = modp.degree_pattern(f, q)
        if pat is None:
            continue
        if len(pat) == 1:
            return IrreducibilityResult(True, "irreducible_mod_p", prime=q)
        sums = {0}
        for d in pat:
            sums |= {s + d for s in sums}
        possible &= sums
        if possible == {0, n}:
            return IrreducibilityResult(True, "degree_sieve", prime=q)
        seen += 1
        if seen >= sieve_primes:
            break
    _, facs = factor_over_Z(f, cap=cap, seed=seed)
    if len(facs) == 1 and facs[0][1] == 1:
        return IrreducibilityResult(True, "zassenhaus")
    return IrreducibilityResult(False, "zassenhaus", witness=facs[0][0])
