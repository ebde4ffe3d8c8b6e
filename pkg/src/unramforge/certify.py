"""Unramifiedness certificates, Dedekind's criterion, permutation group tables
and Frobenius cycle-type scans."""

from __future__ import annotations

import json
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from . import __version__
from .exactalg import modp
from .exactalg.factor import is_irreducible_Q
from .exactalg.integers import (
    FactorizationBudgetExceeded,
    factorint,
    is_prime,
    primes_up_to,
    valuation,
)
from .exactalg.padic import (
    PAdicInt,
    SearchExhausted,
    hensel_lift_root,
    newton_converges,
    newton_witness_lift,
)
from .exactalg.poly import Poly
from .exactalg.resultant import disc_in_t, discriminant
from .exactalg.round2 import p_maximal_order
from .exactalg.sturm import sturm_real_roots
from .families import FamilyInstance, get_family, specialize

CERT_VERSION = 1
DEFAULT_TAU = 0.05
DEFAULT_BOUND = 10 ** 4

EXPECTED_GROUP = {
    "T4": "F20", "T5": "D5", "T6": "F20", "T7": "D5", "T8": "F20",
    "T9": "F42", "T10": "F42", "T11": "F42", "T14": "F42",
    "T12": "F54", "T13": "F54", "T15": "AGL3_2",
    "S1_47": "D5", "S1_235": "D5",
}


# -- Dedekind's criterion ---------------------------------------------------------

@dataclass(frozen=True)
class DedekindResult:
    maximal: bool
    p: int
    pattern: tuple[tuple[int, int], ...]  # (degree, multiplicity) of the factors mod p
    U: Poly                               # gcd(F, G, H) mod p; trivial iff maximal
    enlarger: Poly                        # lift of (f mod p)/U; enlarger(theta)/p is integral

    def to_json(self) -> dict:
        return {"maximal": self.maximal, "p": self.p,
                "pattern": [list(x) for x in self.pattern], "index_exponent_lower": self.U.degree}


def _lift(coeffs: list[int]) -> Poly:
    return Poly(coeffs)


def dedekind_p_maximal(f: Poly, p: int, seed: int = 0) -> DedekindResult:
    """Is Z[x]/(f) maximal at p?

    With f = prod g_i^e_i mod p, G = prod g_i and H = prod g_i^(e_i - 1),
    F = (f - G H)/p; the order is p-maximal iff gcd(F, G, H) is 1 mod p.
    """
    if not f.is_integral() or not f.is_monic():
        raise ValueError("Dedekind's criterion needs a monic integer polynomial")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if discriminant(f) == 0:
        raise ValueError("polynomial is not squarefree")
    facs = modp.factor_mod_p(f, p, seed=seed)
    G, H = [1], [1]
    for g, e in facs:
        gl = modp.from_poly(g, p)
        G = modp.mul(G, gl, p)
        for _ in range(e - 1):
            H = modp.mul(H, gl, p)
    GH = _lift(G) * _lift(H)
    F = (f - GH).exact_div(Poly((p,))) if (f - GH) else Poly()
    Fm = modp.from_poly(F, p)
    U = modp.gcd(modp.gcd(Fm, G, p), H, p)
    fbar = modp.from_poly(f, p)
    enl = modp.exact_quo(fbar, U, p) if len(U) > 1 else fbar
    pattern = tuple(sorted((g.degree, e) for g, e in facs))
    return DedekindResult(len(U) <= 1, p, pattern, Poly(U) if len(U) > 1 else Poly((1,)),
                          Poly(enl))


# -- local ramification at a single prime -----------------------------------------------

def local_ramification(f: Poly, q: int, seed: int = 0) -> dict:
    """Decide whether q ramifies in Q[x]/(f).

    Dedekind's criterion settles the question when Z[theta] is q-maximal or
    when the index bound v_q(disc) - 2 deg U is already 0. Otherwise the
    q-maximal order is built by Round 2 and v_q(d_L) read off exactly.
    """
    d = discriminant(f)
    if d % q:
        return {"q": q, "status": "unramified", "reason": "q does not divide disc"}
    v = valuation(d, q)
    res = dedekind_p_maximal(f, q, seed=seed)
    out = {"q": q, "v_disc": v, "dedekind": res.to_json()}
    if res.maximal:
        out.update(status="ramified", v_field_disc=v, method="dedekind")
        return out
    if v - 2 * res.U.degree <= 0:
        out.update(status="unramified", v_field_disc=0, method="dedekind_bound")
        return out
    lo = p_maximal_order(f, q)
    out.update(status="ramified" if lo.ramified else "unramified",
               v_field_disc=lo.field_disc_valuation, method="round2", order=lo.to_json())
    return out


# -- Newton certificates -------------------------------------------------------------

@dataclass(frozen=True)
class NewtonCertificate:
    p: int
    u: int
    v_f: object
    v_df: object
    root: PAdicInt
    precision: int

    def to_json(self) -> dict:
        v = lambda x: "inf" if x == float("inf") else x
        return {"p": self.p, "u": str(self.u), "v_f": v(self.v_f), "v_df": v(self.v_df),
                "root": self.root.to_json(), "precision": self.precision}


def newton_certificate(f: Poly, p: int, max_exponent: int, first=None,
                       precision: int | None = None) -> NewtonCertificate | None:
    u, _ = newton_witness_lift(f, p, max_exponent, first=first)
    if u is None:
        return None
    chk = newton_converges(f, p, u)
    k = precision or max(6, 2 * max_exponent)
    root = hensel_lift_root(f, p, u, k)
    if f.eval_mod(root.value, p ** k) != 0:  # pragma: no cover
        raise ArithmeticError("lifted root does not vanish")
    return NewtonCertificate(p, u, chk.v_f, chk.v_df, root, k)


# -- certificates ----------------------------------------------------------------------

@dataclass
class Check:
    name: str
    status: str  # pass | fail | skip
    data: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"name": self.name, "status": self.status, "data": self.data}


@dataclass
class Certificate:
    family: str
    t: int
    polys: dict
    checks: list[Check]
    seed: int = 0

    @property
    def verdict(self) -> str:
        statuses = [c.status for c in self.checks]
        if "fail" in statuses:
            return "fail"
        if statuses.count("skip") > statuses.count("pass"):
            return "skip"
        return "pass"

    def check(self, name: str) -> Check:
        return next(c for c in self.checks if c.name == name)

    def to_json(self) -> dict:
        return {"version": CERT_VERSION, "family": self.family, "t": str(self.t),
                "polys": self.polys, "checks": [c.to_json() for c in self.checks],
                "verdict": self.verdict, "seed": self.seed, "toolversion": __version__}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=1)


def _factor_json(n: int, budget: int) -> dict | None:
    try:
        return {str(p): e for p, e in factorint(abs(n), budget=budget).items()}
    except FactorizationBudgetExceeded:
        return None


def _strip(n: int, primes) -> int:
    for p in primes:
        while n % p == 0:
            n //= p
    return n


def quadratic_field_disc(k: int) -> int:
    """Discriminant of Q(sqrt(k)) for a squarefree k != 1."""
    return k if k % 4 == 1 else 4 * k


def _disc_support_check(main: Poly, sub: Poly | None, p: int, seed: int,
                        budget: int, kernel: int | None = None) -> Check:
    dm = discriminant(main)
    ds = discriminant(sub) if sub is not None else 1
    data = {"disc_main": str(dm), "disc_subfield": str(ds)}
    # primes of disc(main) outside p, disc(subfield) and the quadratic subfield
    rest = abs(dm)
    while rest % p == 0:
        rest //= p
    g = abs(ds)
    if kernel not in (None, 0, 1):
        dq = quadratic_field_disc(kernel)
        data["quadratic_disc"] = str(dq)
        g *= abs(dq)
    from math import gcd
    while True:
        h = gcd(rest, g)
        if h == 1:
            break
        while rest % h == 0:
            rest //= h
    if rest == 1:
        data["outside"] = {}
        return Check("disc_support", "pass", data)
    fac = _factor_json(rest, budget)
    if fac is None:
        data["reason"] = "cofactor factorization exceeded budget"
        return Check("disc_support", "skip", data)
    data["outside"] = fac
    analyses = {}
    status = "pass"
    for q in sorted(int(x) for x in fac):
        res = local_ramification(main, q, seed=seed)
        analyses[str(q)] = res["status"]
        if res["status"] != "unramified":
            status = "fail"
    data["index_analysis"] = analyses
    return Check("disc_support", status, data)


def unramified_certificate(inst: FamilyInstance, seed: int = 0, scan: bool = False,
                           scan_bound: int = DEFAULT_BOUND, tau: float = DEFAULT_TAU,
                           budget: int = 2_000_000, workers: int = 1) -> Certificate:
    spec = get_family(inst.family)
    p = spec.p
    if p is None:
        raise ValueError(f"{inst.family} has no ramifying prime to certify against")
    main, sub = inst.main, inst.subfield
    polys = {"main": main.to_json()}
    if sub is not None:
        polys["subfield"] = sub.to_json()
    checks = [Check("congruence", "pass" if inst.admissible else "fail",
                    {"class": list(inst.congruence_class) if inst.congruence_class else None,
                     "p": p})]

    irr_main = is_irreducible_Q(main, seed=seed)
    checks.append(Check("irreducible_main", "pass" if irr_main else "fail",
                        {"method": irr_main.method,
                         "witness": irr_main.witness.to_json() if irr_main.witness else None}))
    irreducible = bool(irr_main)
    if sub is not None:
        irr_sub = is_irreducible_Q(sub, seed=seed)
        checks.append(Check("irreducible_subfield", "pass" if irr_sub else "fail",
                            {"method": irr_sub.method,
                             "witness": irr_sub.witness.to_json() if irr_sub.witness else None}))
        irreducible &= bool(irr_sub)

    names = ["disc_support", "p_adic", "dedekind"] + (["galois_scan"] if scan else [])
    if not irreducible:
        checks.extend(Check(n, "skip", {"reason": "reducible input"}) for n in names)
        return Certificate(inst.family, inst.t, polys, checks, seed)

    checks.append(_disc_support_check(main, sub, p, seed, budget, spec.radicand_kernel(inst.t)))

    dm = discriminant(main)
    if dm % p:
        checks.append(Check("p_adic", "pass", {"reason": f"{p} does not divide disc(main)"}))
    else:
        depth = valuation(dm, p) + 1
        try:
            cert = newton_certificate(main, p, depth, first=spec.witness_candidates(inst.t))
        except SearchExhausted as exc:
            checks.append(Check("p_adic", "skip", {"reason": str(exc)}))
        else:
            if cert is None:
                checks.append(Check("p_adic", "fail", {
                    "reason": f"no simple {p}-adic root (complete search to {p}^{depth})"}))
            else:
                checks.append(Check("p_adic", "pass", cert.to_json()))

    ded = {"main": dedekind_p_maximal(main, p, seed).to_json()}
    if sub is not None:
        ded["subfield"] = dedekind_p_maximal(sub, p, seed).to_json()
    checks.append(Check("dedekind", "pass", ded))

    if scan:
        group = EXPECTED_GROUP.get(inst.family)
        if group is None:
            checks.append(Check("galois_scan", "skip", {"reason": "no expected group"}))
        else:
            res = galois_scan(main, scan_bound, group, tau=tau, seed=seed, workers=workers)
            checks.append(Check("galois_scan", "pass" if res.consistent else "fail", res.to_json()))
    return Certificate(inst.family, inst.t, polys, checks, seed)


def certify_family(fid: str, t: int, **kw) -> Certificate:
    return unramified_certificate(specialize(fid, t), **kw)


# -- permutation groups ------------------------------------------------------------------

def _compose(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    """(a*b)(i) = a(b(i))."""
    return tuple(a[i] for i in b)


def cycle_type(perm: tuple[int, ...]) -> tuple[int, ...]:
    seen = [False] * len(perm)
    out = []
    for i in range(len(perm)):
        if not seen[i]:
            k, j = 0, i
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                k += 1
            out.append(k)
    return tuple(sorted(out))


@dataclass(frozen=True)
class PermGroupTable:
    name: str
    degree: int
    generators: tuple[tuple[int, ...], ...]
    elements: frozenset
    histogram: dict

    @property
    def order(self) -> int:
        return len(self.elements)

    def frequencies(self) -> dict:
        return {k: Fraction(v, self.order) for k, v in self.histogram.items()}

    def to_json(self) -> dict:
        return {"name": self.name, "degree": self.degree, "order": self.order,
                "histogram": {_pattern_str(k): v for k, v in sorted(self.histogram.items())}}


def _pattern_str(pat: tuple[int, ...]) -> str:
    return ",".join(map(str, pat))


def _affine(n: int, a: int, b: int) -> tuple[int, ...]:
    return tuple((a * i + b) % n for i in range(n))


def _matvec(m, v: int) -> int:
    bits = [(v >> k) & 1 for k in range(3)]
    out = 0
    for r in range(3):
        if sum(m[r][c] * bits[c] for c in range(3)) % 2:
            out |= 1 << r
    return out


_GL32 = (((1, 1, 0), (0, 1, 0), (0, 0, 1)), ((0, 0, 1), (1, 0, 0), (0, 1, 0)))


def _generators(name: str):
    if name == "Z4":
        return 4, [_affine(4, 1, 1)]
    if name == "Z5":
        return 5, [_affine(5, 1, 1)]
    if name == "D5":
        return 5, [_affine(5, 1, 1), _affine(5, -1, 0)]
    if name == "F20":
        return 5, [_affine(5, 1, 1), _affine(5, 2, 0)]
    if name == "Z7":
        return 7, [_affine(7, 1, 1)]
    if name == "F42":
        return 7, [_affine(7, 1, 1), _affine(7, 3, 0)]
    if name == "F54":
        return 9, [_affine(9, 1, 1), _affine(9, 2, 0)]
    if name == "PGL3_2":
        # GL(3,2) on the 7 nonzero vectors of F_2^3, point k <-> vector k+1
        gens = [tuple(_matvec(m, v + 1) - 1 for v in range(7)) for m in _GL32]
        return 7, gens
    if name == "AGL3_2":
        gens = [tuple(_matvec(m, v) for v in range(8)) for m in _GL32]
        gens.append(tuple(v ^ 1 for v in range(8)))
        return 8, gens
    raise KeyError(f"unknown group {name!r}")


GROUP_NAMES = ("Z4", "Z5", "D5", "F20", "Z7", "F42", "F54", "PGL3_2", "AGL3_2")


@lru_cache(maxsize=None)
def group_table(name: str) -> PermGroupTable:
    """Close the stored generators under composition and tabulate cycle types."""
    degree, gens = _generators(name)
    ident = tuple(range(degree))
    elements = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = _compose(s, g)
                if h not in elements:
                    elements.add(h)
                    nxt.append(h)
        frontier = nxt
    hist = Counter(cycle_type(g) for g in elements)
    return PermGroupTable(name, degree, tuple(gens), frozenset(elements), dict(hist))


# -- Frobenius scans ---------------------------------------------------------------------

@dataclass
class ScanResult:
    group: str
    bound: int
    primes_used: int
    bad_primes: int
    histogram: dict
    distance: float
    unexpected: list
    tau: float

    @property
    def consistent(self) -> bool:
        return not self.unexpected and self.distance <= self.tau

    def observed(self, pattern: tuple[int, ...]) -> int:
        return self.histogram.get(pattern, 0)

    def to_json(self) -> dict:
        return {"group": self.group, "bound": self.bound, "primes_used": self.primes_used,
                "bad_primes": self.bad_primes,
                "histogram": {_pattern_str(k): v for k, v in sorted(self.histogram.items())},
                "distance": round(self.distance, 6), "tau": self.tau,
                "unexpected": [_pattern_str(k) for k in self.unexpected],
                "consistent": self.consistent}


def _patterns_chunk(args):
    coeffs, primes = args
    f = Poly(coeffs)
    return [modp.degree_pattern(f, p) if f.lc % p else None for p in primes]


def frobenius_patterns(f: Poly, bound: int, workers: int = 1) -> list[tuple[int, ...] | None]:
    primes = primes_up_to(bound)
    if workers <= 1:
        return _patterns_chunk((f.coeffs, primes))
    size = -(-len(primes) // workers)
    chunks = [(f.coeffs, primes[i:i + size]) for i in range(0, len(primes), size)]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        parts = list(ex.map(_patterns_chunk, chunks))
    return [x for part in parts for x in part]


def galois_scan(f: Poly, bound: int, expected: str, tau: float = DEFAULT_TAU,
                seed: int = 0, workers: int = 1) -> ScanResult:
    """Compare Frobenius degree patterns for good primes up to ``bound`` with a group table."""
    if not is_irreducible_Q(f, seed=seed):
        raise ValueError("galois_scan needs an irreducible polynomial")
    table = group_table(expected)
    if table.degree != f.degree:
        raise ValueError(f"{expected} acts on {table.degree} points, f has degree {f.degree}")
    pats = frobenius_patterns(f, bound, workers)
    good = [p for p in pats if p is not None]
    hist = dict(Counter(good))
    freq = table.frequencies()
    n = len(good)
    keys = set(freq) | set(hist)
    dist = 0.5 * sum(abs(hist.get(k, 0) / n - float(freq.get(k, 0))) for k in keys) if n else 1.0
    unexpected = sorted(k for k in hist if k not in freq)
    return ScanResult(expected, bound, n, len(pats) - n, hist, dist, unexpected, tau)


# -- the PGL3(2) pair ---------------------------------------------------------------------

Q_PGL = Poly((-1417, 23976, -95472, -3456, 6912))
DEG7_MOD2 = Poly((1, 0, 1, 0, 0, 1, 1, 1))             # x^7+x^6+x^5+x^2+1
DEG8_EVEN = (Poly((1, 1)), Poly((1, 0, 1, 1, 1, 1, 1, 1)))  # (y+1)(y^7+...+y^2+1)
DEG8_ODD = (Poly((0, 1)), Poly((1, 1, 0, 0, 0, 0, 0, 1)))   # y(y^7+y+1)


def pgl_pair_checks(ts=(-3, 0, 1, 10)) -> dict:
    fam = get_family("T15")
    deg8, deg7 = fam.main, fam.subfield
    d7 = disc_in_t(deg7)
    d8 = disc_in_t(deg8)
    q2 = Q_PGL * Q_PGL
    a = d7 == q2 and d8 == q2

    m7 = deg7.mod(2)
    b = m7.t_degree <= 0 and m7.specialize(0) == DEG7_MOD2
    b_irreducible = modp.is_irreducible_mod_p(DEG7_MOD2, 2)

    m8 = deg8.mod(2)
    even = (DEG8_EVEN[0] * DEG8_EVEN[1]).mod(2)
    odd = (DEG8_ODD[0] * DEG8_ODD[1]).mod(2)
    c = (m8.t_coefficient(0).mod(2) == even and (m8.t_coefficient(0) + m8.t_coefficient(1)).mod(2) == odd
         and all(not m8.t_coefficient(k).mod(2) for k in range(2, m8.t_degree + 1)))
    c_factors_irreducible = all(modp.is_irreducible_mod_p(g, 2) for g in DEG8_EVEN + DEG8_ODD)

    d = Q_PGL.mod(2) == Poly((1,))
    counts = {}
    for t in ts:
        counts[str(t)] = [sturm_real_roots(deg7.specialize(t)), sturm_real_roots(deg8.specialize(t))]
    e7 = all(v[0] == 3 for v in counts.values())
    e8 = all(v[1] == 4 for v in counts.values())
    report = {
        "disc_identity": a, "disc_in_t_deg7": d7.to_json(), "Q": Q_PGL.to_json(),
        "deg7_mod2_constant": b, "deg7_mod2_irreducible": b_irreducible,
        "deg8_mod2_parity_split": c, "deg8_mod2_factors_irreducible": c_factors_irreducible,
        "Q_odd": d, "real_roots": counts, "deg7_three_real": e7, "deg8_four_real": e8,
        "deg8_signature": "4 real embeddings and 2 complex pairs" if e8 else "see real_roots",
    }
    report["ok"] = all([a, b, b_irreducible, c, c_factors_irreducible, d, e7, e8])
    return report
