"""Resolvent polynomials P_n from orbits of radicands, dual orbits, and
exact checks of permutation maps and Tschirnhaus transformations.

Given an orbit b_i (i in I_n), choose n-th roots c_i of b_i and set

    e_j = prod_i c_i^<j/i>,    r_i = sum_j e_j zeta^(ij),    P_n = prod_i (x - r_i).

P_n is computed numerically with certified error radii, rounded, and then
verified a posteriori.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

import mpmath

from .cyclotomic import (
    DEFAULT_BITS,
    ComplexApprox,
    CycloElt,
    PrecisionExhausted,
    QuadCyclo,
    QuadraticElt,
    evaluate_poly,
    expand_roots,
    units,
)
from .exactalg.integers import reduce_mod
from .exactalg.poly import Poly, parse_rational

__all__ = [
    "DualOrbit", "NoVerifiedBranch", "OrbitSpec", "PermutationCheck", "PnResult",
    "ResolventConfig", "construct_Pn", "cyclic_order", "dual_orbit", "map_order",
    "maps_are_inverse", "orbit_from_json", "reduce_mod",
    "verify_permutation_polynomial", "verify_tschirnhaus",
]

MAX_BITS = 4096


class NoVerifiedBranch(ArithmeticError):
    """No branch assignment produced a verified integer polynomial."""


@dataclass(frozen=True)
class ResolventConfig:
    n: int
    branch: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("n must be at least 2")
        if self.branch is not None and len(self.branch) != len(self.units):
            raise ValueError(f"branch needs {len(self.units)} entries")

    @property
    def units(self) -> list[int]:
        return units(self.n)

    @property
    def table(self) -> dict[int, dict[int, int]]:
        """E[i][j] = <j/i>."""
        return {i: {j: reduce_mod(Fraction(j, i), self.n) for j in self.units} for i in self.units}


@dataclass(frozen=True)
class OrbitSpec:
    """Values b_i indexed by I_n.

    Values may be rationals, ``QuadraticElt``, ``CycloElt``, ``QuadCyclo`` or a
    callable ``bits -> ComplexApprox`` for numerically given orbits.
    """

    n: int
    values: Mapping[int, object]
    provenance: str = ""

    def __post_init__(self):
        if sorted(self.values) != units(self.n):
            raise ValueError(f"orbit must be indexed by I_{self.n} = {units(self.n)}")

    def approx(self, bits: int) -> dict[int, ComplexApprox]:
        out = {}
        for i, v in self.values.items():
            if isinstance(v, (int, Fraction)):
                a = ComplexApprox.exact(Fraction(v), bits)
            elif isinstance(v, (QuadraticElt, CycloElt, QuadCyclo)):
                a = v.embed(bits)
            elif callable(v):
                a = v(bits)
            else:
                raise TypeError(f"unsupported orbit value {v!r}")
            if a.contains_zero():
                raise ValueError(f"orbit value b_{i} is zero or not separated from zero")
            out[i] = a
        return out

    def reordered(self, perm: Mapping[int, int], note: str = "") -> "OrbitSpec":
        """New orbit with b'_i = b_{perm[i]}."""
        return OrbitSpec(self.n, {i: self.values[perm[i]] for i in self.values},
                         note or self.provenance)

    def reversed_cycle(self, g: int) -> "OrbitSpec":
        """Traverse the cyclic order in the opposite direction: b'_{g^i} = b_{g^-i}."""
        order = cyclic_order(self.n, g)
        m = len(order)
        perm = {order[i]: order[(-i) % m] for i in range(m)}
        return self.reordered(perm, self.provenance + " (reversed)")


def cyclic_order(n: int, g: int) -> list[int]:
    """[g^0, g^1, ...] mod n; g must generate (Z/n)^*."""
    order = [pow(g, i, n) for i in range(len(units(n)))]
    if sorted(order) != units(n):
        raise ValueError(f"{g} does not generate (Z/{n})^*")
    return order


@dataclass
class PnResult:
    poly: Poly
    branch: tuple[int, ...]
    bits: int
    verified: list[tuple[tuple[int, ...], Poly]] = field(default_factory=list)
    tried: int = 0

    @property
    def distinct(self) -> list[Poly]:
        seen: list[Poly] = []
        for _, p in self.verified:
            if p not in seen:
                seen.append(p)
        return seen


def _roots_for_branch(n, idx, table, radicals, zetas, branch):
    c = {i: radicals[i] * zetas[branch[k] % n] if branch[k] % n else radicals[i]
         for k, i in enumerate(idx)}
    e = {}
    for j in idx:
        acc = None
        for i in idx:
            term = c[i] ** table[i][j]
            acc = term if acc is None else acc * term
        e[j] = acc
    r = []
    for i in range(n):
        acc = None
        for j in idx:
            term = e[j] * zetas[i * j % n]
            acc = term if acc is None else acc + term
        r.append(acc)
    return r


def _round_and_verify(roots: list[ComplexApprox]):
    """(poly, None) when verified; (None, 'precision') or (None, 'not integral')."""
    coeffs = expand_roots(roots)
    ints = []
    for c in coeffs:
        if c.err >= mpmath.mpf(1) / 4:
            return None, "precision"
        v = c.nearest_integer()
        if v is None:
            return None, "not integral"
        ints.append(v)
    f = Poly(ints)
    for r in roots:
        if not evaluate_poly(f, r).contains_zero():
            return None, "roots mismatch"
    return f, None


def construct_Pn(cfg: ResolventConfig, orbit: OrbitSpec, search: bool = False,
                 target: Poly | None = None, bits: int = DEFAULT_BITS,
                 max_bits: int = MAX_BITS, collect_all: bool = False) -> PnResult:
    """Build P_n for the orbit.

    Without ``search`` only ``cfg.branch`` (default all zero) is tried. With
    ``search`` the n^phi(n) branch assignments are tried in lexicographic
    order; the first verified polynomial is returned unless ``target`` is
    given, in which case the first match wins. ``collect_all`` keeps every
    verified candidate. Precision doubles while rounding is ambiguous.
    """
    n = cfg.n
    if orbit.n != n:
        raise ValueError("orbit and config disagree on n")
    idx = cfg.units
    table = cfg.table
    if search:
        branches: Iterable[tuple[int, ...]] = itertools.product(range(n), repeat=len(idx))
    else:
        branches = [cfg.branch or (0,) * len(idx)]
    branches = list(branches)

    last_reason = None
    while bits <= max_bits:
        try:
            b = orbit.approx(bits)
            radicals = {i: b[i].nth_root(n) for i in idx}
        except PrecisionExhausted:
            bits *= 2
            continue
        zetas = [ComplexApprox.root_of_unity(n, k, bits) for k in range(n)]
        result = None
        needs_precision = False
        tried = 0
        for br in branches:
            tried += 1
            roots = _roots_for_branch(n, idx, table, radicals, zetas, br)
            f, reason = _round_and_verify(roots)
            if f is None:
                last_reason = reason
                needs_precision |= reason == "precision"
                continue
            if result is None:
                result = PnResult(f, tuple(br), bits)
            result.verified.append((tuple(br), f))
            if target is not None and f == target and result.poly != target:
                result.poly, result.branch = f, tuple(br)
            if not collect_all and (target is None or result.poly == target):
                break
        if result is not None:
            result.tried = tried
            if target is None or result.poly == target or not needs_precision:
                return result
        if not needs_precision:
            break
        bits *= 2
    raise NoVerifiedBranch(f"no branch verified for n={n} (last failure: {last_reason}, "
                           f"bits up to {min(bits, max_bits)})")


# -- dual orbits ----------------------------------------------------------------

@dataclass
class DualOrbit:
    orbit: OrbitSpec
    poly: Poly
    order: list[int]
    degenerate: bool


def _expand_exact(values: list) -> list:
    coeffs = [values[0] * 0 + 1]
    for r in values:
        nxt = [None] * (len(coeffs) + 1)
        nxt[len(coeffs)] = coeffs[-1]
        for k in range(len(coeffs) - 1, 0, -1):
            nxt[k] = coeffs[k - 1] - r * coeffs[k]
        nxt[0] = -(r * coeffs[0])
        coeffs = nxt
    return coeffs


def dual_orbit(n: int, a: Mapping[int, object], g: int = 2) -> DualOrbit:
    """b_{g^i} = sum_j a_{g^j} zeta^<g^(i+j)>, computed exactly.

    ``a`` is keyed by residues in I_n; values are rationals or ``QuadraticElt``
    sharing one radicand. The b's live in Q(zeta_n)[sqrt(d)] and their
    characteristic polynomial must come out rational.
    """
    order = cyclic_order(n, g)
    if sorted(a) != units(n):
        raise ValueError(f"a must be indexed by I_{n}")
    radicands = {v.d for v in a.values() if isinstance(v, QuadraticElt)}
    if len(radicands) > 1:
        raise ValueError("a-values use different radicands")
    d = radicands.pop() if radicands else 1

    def lift(v):
        if isinstance(v, QuadraticElt):
            return QuadCyclo.from_quadratic(v, n)
        zero = CycloElt.scalar(n, 0)
        return QuadCyclo(CycloElt.scalar(n, Fraction(v)), zero, d)

    m = len(order)
    b = {}
    for i in range(m):
        acc = QuadCyclo(CycloElt.scalar(n, 0), CycloElt.scalar(n, 0), d)
        for j in range(m):
            acc = acc + lift(a[order[j]]) * CycloElt.zeta(n, pow(g, i + j, n))
        b[order[i]] = acc
    coeffs = _expand_exact([b[k] for k in order])
    if not all(c.is_rational() for c in coeffs):
        raise ValueError("a-values are not a Galois orbit: dual polynomial is not rational")
    poly = Poly([c.re.rational() for c in coeffs])
    degenerate = len(set(b.values())) < m
    return DualOrbit(OrbitSpec(n, b, f"dual orbit, g={g}"), poly, order, degenerate)


# -- orbit fixtures ----------------------------------------------------------------

def _quad_from_json(v) -> object:
    if isinstance(v, list):
        return QuadraticElt.from_json(v)
    return parse_rational(v)


def _poly_root_orbit(data: Mapping) -> OrbitSpec:
    n = int(data["n"])
    f = Poly.from_json(data["poly"])
    num = Poly.from_json(data["sigma"]["num"])
    den = parse_rational(data["sigma"]["den"])
    g = int(data.get("generator", 2))
    order = cyclic_order(n, g)

    def roots_at(bits):
        dps = bits * 3 // 10 + 10
        with mpmath.workdps(dps):
            rs = mpmath.polyroots([mpmath.mpf(c) for c in reversed(f.coeffs)],
                                  maxsteps=400, extraprec=bits)
            rs = sorted(rs, key=lambda z: (float(mpmath.re(z)), float(mpmath.im(z))))
            start = rs[int(data.get("start", 0))]
            seq = [start]
            for _ in range(len(order) - 1):
                nxt = num(seq[-1]) / den
                seq.append(min(rs, key=lambda z: abs(z - nxt)))
            df = f.derivative()
            out = []
            for z in seq:
                # some root lies within deg f * |f(z)/f'(z)| of z
                rad = f.degree * abs(f(z) / df(z)) + mpmath.mpf(2) ** (-bits)
                out.append((z, rad))
        return out

    cache: dict[int, list] = {}

    def value(k):
        def approx(bits):
            if bits not in cache:
                cache[bits] = roots_at(bits)
            z, rad = cache[bits][k]
            base = ComplexApprox.exact(Fraction(0), bits)
            return ComplexApprox(base.ctx.mpc(z), base.ctx.mpf(rad), bits)
        return approx

    values = {order[k]: value(k) for k in range(len(order))}
    return OrbitSpec(n, values, data.get("provenance", "roots of " + f.format()))


def orbit_from_json(data: Mapping) -> tuple[OrbitSpec, Poly | None]:
    """Parse an orbit file. Returns the orbit and an optional target polynomial.

    Kinds: ``values`` (b keyed by residue), ``quadratic_dual`` (a keyed by
    residue, run through ``dual_orbit``), ``poly_roots`` (roots of a
    polynomial ordered by iterating a permutation map).
    """
    kind = data.get("kind", "values")
    n = int(data["n"])
    if kind == "values":
        orbit = OrbitSpec(n, {int(k): _quad_from_json(v) for k, v in data["b"].items()},
                          data.get("provenance", ""))
    elif kind == "quadratic_dual":
        a = {int(k): _quad_from_json(v) for k, v in data["a"].items()}
        g = int(data.get("generator", 2))
        orbit = dual_orbit(n, a, g).orbit
        if data.get("order", "forward") == "reversed":
            orbit = orbit.reversed_cycle(g)
    elif kind == "poly_roots":
        orbit = _poly_root_orbit(data)
    else:
        raise ValueError(f"unknown orbit kind {kind!r}")
    target = Poly.from_json(data["target"]) if "target" in data else None
    return orbit, target


# -- exact identities ---------------------------------------------------------------

@dataclass
class PermutationCheck:
    valid: bool
    order: int | None
    cycle_type: tuple[int, ...] | None

    def __bool__(self) -> bool:
        return self.valid

    def to_json(self) -> dict:
        return {"valid": self.valid, "order": self.order,
                "cycle_type": list(self.cycle_type) if self.cycle_type else None}


def _rational_map(num: Poly, den) -> Poly:
    if den == 0:
        raise ZeroDivisionError("denominator of the rational map is zero")
    return num * (Fraction(1) / Fraction(den))


def map_order(f: Poly, num: Poly, den=1, limit: int | None = None) -> int | None:
    """Smallest k with sigma^k(x) = x mod f, or None within the limit."""
    s = _rational_map(num, den) % f
    h = s
    x = Poly.x() % f
    for k in range(1, (limit or 4 * f.degree) + 1):
        if h == x:
            return k
        h = s.compose(h) % f
    return None


def verify_permutation_polynomial(f: Poly, num: Poly, den=1) -> PermutationCheck:
    """Does x -> num(x)/den permute the roots of f?

    The cycle type assumes f generates a normal extension, so that the map
    acts freely on the roots.
    """
    s = _rational_map(num, den)
    if f.compose(s) % f:
        return PermutationCheck(False, None, None)
    k = map_order(f, num, den)
    if k is None or f.degree % k:
        return PermutationCheck(True, k, None)
    return PermutationCheck(True, k, (k,) * (f.degree // k))


def maps_are_inverse(f: Poly, s1: tuple[Poly, object], s2: tuple[Poly, object]) -> bool:
    a = _rational_map(*s1)
    b = _rational_map(*s2)
    return a.compose(b) % f == Poly.x() % f


def verify_tschirnhaus(f: Poly, num: Poly, den, g: Poly) -> bool:
    """True iff z -> num(z)/den sends the roots of f to roots of g."""
    if f.degree != g.degree:
        raise ValueError("f and g must have equal degree")
    return not (g.compose(_rational_map(num, den)) % f)
