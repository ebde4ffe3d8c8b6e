"""p-adic integers to finite precision, Newton convergence tests and lifting."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .integers import INFINITY, is_prime, valuation
from .poly import Poly


@dataclass(frozen=True)
class PAdicInt:
    """An element of Z_p known modulo p^k; ``value`` lies in ``[0, p^k)``."""

    p: int
    k: int
    value: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("precision must be positive")
        object.__setattr__(self, "value", self.value % self.p ** self.k)

    @property
    def modulus(self) -> int:
        return self.p ** self.k

    def _other(self, other) -> "PAdicInt":
        if isinstance(other, PAdicInt):
            if other.p != self.p:
                raise ValueError("mixed primes")
            return other
        return PAdicInt(self.p, self.k, int(other))

    def __add__(self, other):
        o = self._other(other)
        return PAdicInt(self.p, min(self.k, o.k), self.value + o.value)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return PAdicInt(self.p, min(self.k, o.k), self.value - o.value)

    def __neg__(self):
        return PAdicInt(self.p, self.k, -self.value)

    def __mul__(self, other):
        o = self._other(other)
        # a*b is known mod p^min(ka + vb, kb + va), capped by the smaller operand
        va, vb = valuation(self.value, self.p), valuation(o.value, self.p)
        k = min(self.k + (vb if vb != INFINITY else o.k), o.k + (va if va != INFINITY else self.k))
        k = max(1, min(k, max(self.k, o.k)))
        return PAdicInt(self.p, k, self.value * o.value)

    __rmul__ = __mul__

    def reduce(self, k: int) -> "PAdicInt":
        if k > self.k:
            raise ValueError("cannot increase precision by reduction")
        return PAdicInt(self.p, k, self.value)

    def agrees_with(self, other: "PAdicInt") -> bool:
        k = min(self.k, other.k)
        return (self.value - other.value) % self.p ** k == 0

    def signed(self) -> int:
        """Representative in the symmetric range."""
        m = self.modulus
        v = self.value
        return v - m if v > m // 2 else v

    def to_json(self) -> dict:
        return {"p": self.p, "k": self.k, "value": str(self.value)}


@dataclass(frozen=True)
class NewtonCheck:
    converges: bool
    v_f: float | int
    v_df: float | int
    exact_root: bool = False

    def to_json(self) -> dict:
        def enc(v):
            return "inf" if v == INFINITY else v
        return {"converges": self.converges, "v_f": enc(self.v_f),
                "v_df": enc(self.v_df), "exact_root": self.exact_root}


def newton_converges(f: Poly, p: int, u: int) -> NewtonCheck:
    """Test ``v_p(f(u)) > 2 v_p(f'(u))``, the Newton convergence criterion."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    fu = f(u)
    dfu = f.derivative()(u)
    vf, vdf = valuation(fu, p), valuation(dfu, p)
    if fu == 0:
        return NewtonCheck(True, INFINITY, vdf, exact_root=True)
    return NewtonCheck(vdf != INFINITY and vf > 2 * vdf, vf, vdf)


def hensel_lift_root(f: Poly, p: int, u: int, k: int) -> PAdicInt:
    """Newton-lift ``u`` to the p-adic root it converges to, modulo p^k."""
    chk = newton_converges(f, p, u)
    if not chk.converges:
        raise ValueError(f"Newton criterion fails at u={u}: v(f)={chk.v_f}, v(f')={chk.v_df}")
    if chk.exact_root:
        return PAdicInt(p, k, u)
    delta = int(chk.v_df)
    work = max(2 * k + 4, k + 2 * delta + 2)
    mod = p ** work
    df = f.derivative()
    r = u % mod
    for _ in range(4 * work + 8):
        fr = f(r)
        if fr == 0 or valuation(fr, p) >= k + delta:
            return PAdicInt(p, k, r)
        dfr = df(r)
        unit = dfr // p ** delta
        step = (fr // p ** delta) * pow(unit % mod, -1, mod)
        r = (r - step) % mod
    raise ArithmeticError("Newton iteration failed to converge")  # pragma: no cover


def roots_mod_prime_power(f: Poly, p: int, k: int) -> list[int]:
    """All residues r in [0, p^k) with f(r) = 0 mod p^k, by digit-by-digit lifting."""
    level = [r for r in range(p) if f.eval_mod(r, p) == 0]
    m = p
    for _ in range(k - 1):
        nxt = []
        m2 = m * p
        for r in level:
            for j in range(p):
                c = r + j * m
                if f.eval_mod(c, m2) == 0:
                    nxt.append(c)
        level, m = nxt, m2
    return sorted(level)


def newton_witness_search(f: Poly, p: int, max_exponent: int,
                          first: list[int] | None = None) -> int | None:
    """First u satisfying the Newton criterion.

    Candidates in ``first`` are tried in order, then residues ascending in
    ``[0, p^max_exponent)``.
    """
    for u in first or ():
        if newton_converges(f, p, u).converges:
            return u
    df = f.derivative()
    for u in range(p ** max_exponent):
        fu = f(u)
        if fu == 0:
            return u
        if fu % p:
            continue
        vdf = valuation(df(u), p)
        if vdf != INFINITY and valuation(fu, p) > 2 * vdf:
            return u
    return None


class SearchExhausted(RuntimeError):
    """The root tree grew past the node budget before a decision."""


def newton_witness_lift(f: Poly, p: int, max_exponent: int,
                        first: list[int] | None = None,
                        node_budget: int = 500_000) -> tuple[int | None, int]:
    """Witness search by lifting roots level by level.

    Returns ``(u, k)`` for the smallest witness u at the first level k where
    one exists, or ``(None, k)`` once the tree dies out or reaches
    ``max_exponent``. A simple p-adic root a has v(f'(a)) <= v(disc f), and any
    u = a mod p^(v(f'(a)) + 1) passes the criterion, so ``max_exponent =
    v_p(disc) + 1`` makes a ``None`` answer a proof that no simple root exists.
    """
    for u in first or ():
        if newton_converges(f, p, u).converges:
            return u, 0
    df = f.derivative()
    level = [r for r in range(p) if f.eval_mod(r, p) == 0]
    m, k, seen = p, 1, 0
    while level:
        for u in level:
            fu = f(u)
            if fu == 0:
                return u, k
            vdf = valuation(df(u), p)
            if vdf != INFINITY and valuation(fu, p) > 2 * vdf:
                return u, k
        if k >= max_exponent:
            break
        m2 = m * p
        nxt = []
        for r in level:
            for j in range(p):
                c = r + j * m
                if f.eval_mod(c, m2) == 0:
                    nxt.append(c)
        seen += len(nxt)
        if seen > node_budget:
            raise SearchExhausted(f"more than {node_budget} residues at level {k + 1}")
        level, m, k = sorted(nxt), m2, k + 1
    return None, k


def valuation_str(v) -> str | int:
    return "inf" if v == INFINITY or (isinstance(v, float) and math.isinf(v)) else v
