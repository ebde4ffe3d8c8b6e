"""Chebyshev powers, Lucas polynomials and numbers, Pell-type sequences,
and the admissibility predicates for Chebyshev and Lucas radicals.

Notation: ``cheb_monic(n)`` is x^(.n), the monic Chebyshev polynomial with
x^(.n)(y + 1/y) = y^n + 1/y^n. ``lucas_poly(n)`` satisfies
L_n(a + b) = a^n + b^n whenever ab = -1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .exactalg.padic import PAdicInt, roots_mod_prime_power
from .exactalg.poly import Poly, X
from .exactalg.integers import is_prime

BRUTE_SCAN_LIMIT = 10 ** 4


@lru_cache(maxsize=None)
def cheb_monic(n: int) -> Poly:
    """x^(.n) via x^(.n) = x * x^(.n-1) - x^(.n-2), starting from 2 and x."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return Poly((2,))
    if n == 1:
        return X
    return X * cheb_monic(n - 1) - cheb_monic(n - 2)


@lru_cache(maxsize=None)
def lucas_poly(n: int) -> Poly:
    """L_n(x) via L_n = x L_(n-1) + L_(n-2), L_0 = 2, L_1 = x."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return Poly((2,))
    if n == 1:
        return X
    return X * lucas_poly(n - 1) + lucas_poly(n - 2)


def lucas_number(i: int) -> int:
    """L_i for every integer i, using L_(-i) = (-1)^i L_i."""
    m = abs(i)
    a, b = 2, 1
    for _ in range(m):
        a, b = b, a + b
    return -a if i < 0 and m % 2 else a


def resolvent_root_poly(n: int, lucas: bool = False) -> Poly:
    """sum over j in I_n of a^j b^(n-j) as a polynomial in x = a + b.

    Uses ab = 1 (Chebyshev) or ab = -1 (Lucas). Pairing j with n - j gives
    (ab)^j (a^(n-2j) + b^(n-2j)).
    """
    from math import gcd

    total = Poly()
    for j in range(1, n):
        if gcd(j, n) != 1 or 2 * j >= n:
            continue
        k = n - 2 * j
        if lucas:
            total = total + lucas_poly(k) * (-1) ** j
        else:
            total = total + cheb_monic(k)
    return total


# -- Pell-type sequences -----------------------------------------------------------

@dataclass
class PellSequence:
    name: str
    initial: tuple[int, int]
    recurrence: tuple[int, int]  # a_i = c1 a_(i-1) + c2 a_(i-2)
    form_shift: int               # terms t satisfy t^2 + shift = 5 s^2
    lucas_rule: tuple[int, int, int] | None = None  # a_i = mult * L_(step*i + offset)
    terms: list[int] = field(default_factory=list)

    def satisfies_form(self, t: int) -> bool:
        v = t * t + self.form_shift
        if v % 5:
            return False
        s2 = v // 5
        from math import isqrt
        return isqrt(s2) ** 2 == s2

    def closed_form(self, i: int) -> int | None:
        if self.lucas_rule is None:
            return None
        mult, step, offset = self.lucas_rule
        return mult * lucas_number(step * i + offset)

    def to_json(self) -> dict:
        return {"name": self.name, "initial": list(self.initial),
                "recurrence": list(self.recurrence), "form": f"t^2+{self.form_shift}=5s^2",
                "terms": [str(t) for t in self.terms]}


PELL_CATALOG = {
    "T4_t2p16": ((2, 8), (3, -1), 16, (2, 2, 1)),
    "T4_unramified_b": ((-22, 2728), (15127, -1), 16, (2, 20, -5)),
    "T6_t2p4": ((1, 4), (3, -1), 4, (1, 2, 1)),
    "T6_unramified_b": ((-1, 4), (7, -1), 4, (1, 4, -1)),
}


def pell_sequence(name: str, count: int = 3) -> PellSequence:
    try:
        init, rec, shift, rule = PELL_CATALOG[name]
    except KeyError:
        raise ValueError(f"unknown sequence {name!r}; known: {sorted(PELL_CATALOG)}") from None
    terms = list(init[:count])
    while len(terms) < count:
        terms.append(rec[0] * terms[-1] + rec[1] * terms[-2])
    return PellSequence(name, init, rec, shift, rule, terms)


# -- fixed points modulo prime powers ------------------------------------------------

def _roots_mod(f: Poly, p: int, k: int) -> list[int]:
    m = p ** k
    if m <= BRUTE_SCAN_LIMIT:
        return [r for r in range(m) if f.eval_mod(r, m) == 0]
    return roots_mod_prime_power(f, p, k)


def cheb_fixed_points_mod(p: int, k: int) -> list[PAdicInt]:
    """Roots of x^(.p) - x modulo p^k."""
    if p == 2 or not is_prime(p):
        raise ValueError("p must be an odd prime")
    return [PAdicInt(p, k, r) for r in _roots_mod(cheb_monic(p) - X, p, k)]


def lucas_fixed_points_mod(p: int, k: int) -> list[PAdicInt]:
    """Roots of L_p(x) - x modulo p^k."""
    if p == 2 or not is_prime(p):
        raise ValueError("p must be an odd prime")
    return [PAdicInt(p, k, r) for r in _roots_mod(lucas_poly(p) - X, p, k)]


def _iroot(n: int, k: int) -> int:
    """floor(n^(1/k)) for n >= 0."""
    if n < 2:
        return n
    x = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def _odd_monotone_preimage(f: Poly, j: int, p: int) -> int | None:
    # |m^(.p)| >= |m|^p - p|m|^(p-2)... grows like |m|^p, so |m| <= iroot(|j|) + 2
    # suffices outside [-2, 2]; the small range is scanned explicitly.
    bound = max(3, _iroot(abs(j), p) + 2)
    for m in range(-bound, bound + 1):
        if f(m) == j:
            return m
    return None


def is_cheb_power(j: int, p: int) -> int | None:
    """m with m^(.p) = j, if one exists."""
    return _odd_monotone_preimage(cheb_monic(p), j, p)


def is_lucas_value(j: int, p: int) -> int | None:
    """m with L_p(m) = j, if one exists."""
    return _odd_monotone_preimage(lucas_poly(p), j, p)


@dataclass(frozen=True)
class Admissibility:
    admissible: bool
    reason: str
    fixed_point: int | None = None
    modulus: int | None = None

    def __bool__(self) -> bool:
        return self.admissible

    def to_json(self) -> dict:
        return {"admissible": self.admissible, "reason": self.reason,
                "fixed_point": self.fixed_point, "modulus": self.modulus}


def admissible_thm2(j: int, p: int, k: int) -> Admissibility:
    """Congruence test for the Chebyshev radical of degree q = p^k."""
    m = is_cheb_power(j, p)
    if m is not None:
        return Admissibility(False, f"j = {m}^(.{p}) is a Chebyshev power")
    fine, coarse = p ** (2 * k + 1), p ** (k + 1)
    for u in cheb_fixed_points_mod(p, 2 * k + 1):
        if u.value % p in (2, p - 2) and (j - u.value) % fine == 0:
            return Admissibility(True, f"j = {u.value} mod {fine}, fixed point = +-2 mod {p}",
                                 u.value, fine)
    for u in cheb_fixed_points_mod(p, k + 1):
        if u.value % p not in (2, p - 2) and (j - u.value) % coarse == 0:
            return Admissibility(True, f"j = {u.value} mod {coarse}", u.value, coarse)
    return Admissibility(False, "j is not congruent to a fixed point at the required precision")


def admissible_thm3(j: int, p: int, k: int) -> Admissibility:
    """Congruence test for the Lucas radical of degree q = p^k."""
    if p == 2:
        raise ValueError("p must be odd")
    coarse = p ** (k + 1)
    if p % 4 == 1:
        m = is_lucas_value(j, p)
        if m is not None:
            return Admissibility(False, f"j = L_{p}({m})")
        for u in lucas_fixed_points_mod(p, k + 1):
            if (j - u.value) % coarse == 0:
                return Admissibility(True, f"j = {u.value} mod {coarse}", u.value, coarse)
        return Admissibility(False, "j is not congruent to a fixed point of L_p")
    fine = p ** (2 * k + 1)
    sqrt_m2 = roots_mod_prime_power(X * X + 2, p, 2 * k + 1)
    for r in sqrt_m2:
        if (j - r) % fine == 0:
            return Admissibility(True, f"j = sqrt(-2) = {r} mod {fine}", r, fine)
    low = {r % p for r in sqrt_m2}
    for u in lucas_fixed_points_mod(p, k + 1):
        if u.value % p in low:
            continue
        if (j - u.value) % coarse == 0:
            return Admissibility(True, f"j = {u.value} mod {coarse}", u.value, coarse)
    return Admissibility(False, "j matches neither sqrt(-2) nor another fixed point")
