"""Catalog of parametric families, specialization, admissible-t enumeration,
Lucas-indexed specializations, apolarity and the genus one parametrization.

Family data lives in ``data/families.json``: each polynomial is stored both
as a transcription and as an expanded coefficient array over Z[t], and the
file carries a checksum over its entries.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from math import comb, isqrt
from typing import Iterable, Mapping

from .cheblucas import lucas_number
from .cyclotomic import CycloElt
from .exactalg.integers import squarefree_kernel
from .exactalg.poly import BiPoly, Poly, parse_rational


class FixtureError(RuntimeError):
    """The fixture file failed its checksum or schema check."""


class InvariantBreach(AssertionError):
    """A generated value violated a stated invariant."""


@dataclass(frozen=True)
class LucasRule:
    mult: int
    step: int
    offset: int
    pell_shift: int

    def t(self, i: int) -> int:
        return self.mult * lucas_number(self.step * i + self.offset)

    def describe(self) -> str:
        m = "" if self.mult == 1 else f"{self.mult}*"
        return f"t = {m}L({self.step}i{self.offset:+d})"


@dataclass(frozen=True)
class FamilySpec:
    id: str
    kind: str
    description: str
    main: BiPoly
    main_var: str = "x"
    subfield: BiPoly | None = None
    sub_var: str = "y"
    p: int | None = None
    classes: tuple[tuple[int, int], ...] = ()
    radicand: Mapping | None = None
    lucas_rules: tuple[LucasRule, ...] = ()
    witness_rule: Mapping | None = None
    source: str = ""
    raw: Mapping = field(default_factory=dict)

    def admissible(self, t: int) -> tuple[int, int] | None:
        """The first congruence class containing t, if any."""
        for r, m in self.classes:
            if (t - r) % m == 0:
                return (r, m)
        return None

    def radicand_kernel(self, t: int) -> int | None:
        coeffs = (self.radicand or {}).get("kernel_coeffs")
        if coeffs is None:
            return None
        v = Poly.from_json(coeffs)(t)
        return squarefree_kernel(v) if v else 0

    def witness_candidates(self, t: int) -> list[int]:
        w = self.witness_rule
        if not w or (t - w["t0"]) % w["modulus"]:
            return []
        s = (t - w["t0"]) // w["modulus"]
        return [w["u0"] + w["u_step"] * s]

    def to_json(self) -> dict:
        d = {"id": self.id, "kind": self.kind, "description": self.description,
             "main": self.main.to_json(), "main_var": self.main_var,
             "p": self.p, "classes": [list(c) for c in self.classes], "source": self.source,
             "main_text": self.raw.get("main")}
        if self.subfield is not None:
            d["subfield"] = self.subfield.to_json()
            d["sub_var"] = self.sub_var
            d["subfield_text"] = self.raw.get("subfield")
        if self.radicand:
            d["radicand"] = self.radicand.get("descriptor")
        if self.lucas_rules:
            d["lucas_rules"] = [r.describe() for r in self.lucas_rules]
        return d


@dataclass(frozen=True)
class FamilyInstance:
    family: str
    t: int
    main: Poly
    subfield: Poly | None
    admissible: bool
    congruence_class: tuple[int, int] | None

    def to_json(self) -> dict:
        return {"family": self.family, "t": str(self.t), "main": self.main.to_json(),
                "subfield": self.subfield.to_json() if self.subfield is not None else None,
                "admissible": self.admissible,
                "class": list(self.congruence_class) if self.congruence_class else None}


# -- fixture loading ----------------------------------------------------------------

def fixture_checksum(entries: list) -> str:
    body = json.dumps(entries, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(body.encode()).hexdigest()


def load_fixture_document() -> dict:
    text = resources.files("unramforge").joinpath("data/families.json").read_text()
    doc = json.loads(text)
    if fixture_checksum(doc["families"]) != doc["checksum"]:
        raise FixtureError("families.json checksum mismatch")
    return doc


def _spec_from_entry(e: Mapping) -> FamilySpec:
    main = e["main"]
    sub = e.get("subfield")
    raw = {"main": main.get("raw", main["expr"])}
    if sub:
        raw["subfield"] = sub.get("raw", sub["expr"])
    for key in ("printed_coeffs", "tschirnhaus", "classes_raw", "apolar", "printed_expr"):
        if key in e:
            raw[key] = e[key]
    if "alt_coeffs" in main:
        raw["alt_coeffs"] = main["alt_coeffs"]
    spec = FamilySpec(
        id=e["id"], kind=e["kind"], description=e.get("description", ""),
        main=BiPoly.from_json(main["coeffs"]), main_var=main["var"],
        subfield=BiPoly.from_json(sub["coeffs"]) if sub else None,
        sub_var=sub["var"] if sub else "y",
        p=e.get("p"),
        classes=tuple((int(r), int(m)) for r, m in e.get("classes", ())),
        radicand=e.get("radicand"),
        lucas_rules=tuple(LucasRule(**r) for r in e.get("lucas_rules", ())),
        witness_rule=e.get("witness_rule"),
        source=e.get("source", ""),
        raw=raw,
    )
    if not spec.main.lc.degree == 0 or spec.main.lc[0] != 1:
        raise FixtureError(f"{spec.id}: main polynomial is not monic")
    if spec.p:
        for _, m in spec.classes:
            q = m
            while q % spec.p == 0:
                q //= spec.p
            if q != 1:
                raise FixtureError(f"{spec.id}: modulus {m} is not a power of {spec.p}")
    return spec


@lru_cache(maxsize=1)
def _catalog() -> tuple[FamilySpec, ...]:
    return tuple(_spec_from_entry(e) for e in load_fixture_document()["families"])


def catalog(kind: str | None = None) -> list[FamilySpec]:
    return [f for f in _catalog() if kind is None or f.kind == kind]


def get_family(fid: str) -> FamilySpec:
    for f in _catalog():
        if f.id == fid:
            return f
    raise KeyError(f"unknown family {fid!r}")


def specialize(fid: str | FamilySpec, t: int) -> FamilyInstance:
    spec = fid if isinstance(fid, FamilySpec) else get_family(fid)
    cls = spec.admissible(t)
    return FamilyInstance(spec.id, t, spec.main.specialize(t),
                          spec.subfield.specialize(t) if spec.subfield is not None else None,
                          cls is not None, cls)


def enumerate_admissible(fid: str, lo: int, hi: int) -> list[int]:
    """Admissible t in the half-open range [lo, hi)."""
    spec = get_family(fid)
    return [t for t in range(lo, hi) if spec.admissible(t) is not None]


def lucas_specializations(fid: str, indices: Iterable[int]
                          ) -> list[tuple[int, int, FamilyInstance, LucasRule]]:
    spec = get_family(fid)
    if not spec.lucas_rules:
        raise ValueError(f"{fid} has no Lucas rules")
    out = []
    for rule in spec.lucas_rules:
        for i in indices:
            t = rule.t(i)
            v = t * t + rule.pell_shift
            if v % 5 or isqrt(v // 5) ** 2 != v // 5:
                raise InvariantBreach(f"{fid}: t={t} violates t^2+{rule.pell_shift} = 5s^2")
            out.append((i, t, specialize(spec, t), rule))
    return out


# -- apolarity ----------------------------------------------------------------------

@dataclass
class ApolarResult:
    apolar: bool
    n: int
    p: list[CycloElt] | None = None  # coefficients in t
    q: list[CycloElt] | None = None
    mismatch: int | None = None      # first x-degree where matching fails

    def __bool__(self) -> bool:
        return self.apolar

    def to_json(self) -> dict:
        enc = (lambda v: [c.to_json() for c in v]) if self.apolar else (lambda v: None)
        return {"apolar": self.apolar, "n": self.n, "p": enc(self.p), "q": enc(self.q),
                "mismatch": self.mismatch}


def _tpoly_mul(a: list[CycloElt], b: list[CycloElt], n: int) -> list[CycloElt]:
    if not a or not b:
        return []
    out = [CycloElt.scalar(n, 0) for _ in range(len(a) + len(b) - 1)]
    for i, u in enumerate(a):
        for j, v in enumerate(b):
            out[i + j] = out[i + j] + u * v
    return out


def _tpoly_trim(a: list[CycloElt]) -> list[CycloElt]:
    a = list(a)
    while a and not a[-1]:
        a.pop()
    return a


def apolarity_check(f: Poly | BiPoly, n: int) -> ApolarResult:
    """Try to write f = p (x - w)^n + q (x - w')^n with w, w' the primitive n-th roots of unity.

    p and q are solved from the top two coefficients in Q(w)[t]; the
    remaining coefficients are then compared.
    """
    if n not in (3, 4, 6):
        raise ValueError("n must be 3, 4 or 6")
    if isinstance(f, Poly):
        f = BiPoly([Poly((c,)) if c else Poly() for c in f.coeffs])
    if f.degree != n:
        return ApolarResult(False, n, mismatch=f.degree)
    w = CycloElt.zeta(n, 1)
    w2 = CycloElt.zeta(n, n - 1)
    lead = f.lc

    def lift(c: Poly) -> list[CycloElt]:
        return [CycloElt.scalar(n, a) for a in c.coeffs]

    # p + q = lc, p w + q w' = -c_(n-1)/n
    lc = lift(lead)
    sub = [x * Fraction(-1, n) for x in lift(f.coeffs[n - 1])]
    inv = (w - w2).inverse()
    width = max(len(lc), len(sub))
    pad = lambda v: v + [CycloElt.scalar(n, 0)] * (width - len(v))
    lc, sub = pad(lc), pad(sub)
    p = [(s - c * w2) * inv for s, c in zip(sub, lc)]
    q = [c - a for c, a in zip(lc, p)]
    for k in range(n + 1):
        e = n - k
        term = [a * (comb(n, k) * (-w) ** e) for a in p]
        term2 = [b * (comb(n, k) * (-w2) ** e) for b in q]
        lhs = _tpoly_trim([a + b for a, b in zip(term, term2)])
        rhs = _tpoly_trim(lift(f.coeffs[k]))
        if lhs != rhs:
            return ApolarResult(False, n, mismatch=k)
    return ApolarResult(True, n, _tpoly_trim(p), _tpoly_trim(q))


# -- the genus one parametrization ----------------------------------------------------

class _XY:
    """Sparse polynomials in x, y over Q: {(i, j): coeff}."""

    def __init__(self, terms: Mapping[tuple[int, int], Fraction] | None = None):
        self.t = {k: Fraction(v) for k, v in (terms or {}).items() if v}

    @classmethod
    def const(cls, c):
        return cls({(0, 0): c})

    def __add__(self, o):
        o = o if isinstance(o, _XY) else _XY.const(o)
        out = dict(self.t)
        for k, v in o.t.items():
            out[k] = out.get(k, 0) + v
        return _XY(out)

    __radd__ = __add__

    def __neg__(self):
        return _XY({k: -v for k, v in self.t.items()})

    def __sub__(self, o):
        return self + (-(o if isinstance(o, _XY) else _XY.const(o)))

    def __mul__(self, o):
        o = o if isinstance(o, _XY) else _XY.const(o)
        out: dict = {}
        for (a, b), u in self.t.items():
            for (c, d), v in o.t.items():
                out[(a + c, b + d)] = out.get((a + c, b + d), 0) + u * v
        return _XY(out)

    __rmul__ = __mul__

    def __pow__(self, e):
        r = _XY.const(1)
        for _ in range(e):
            r = r * self
        return r

    def reduce_y2(self, rhs: "_XY") -> "_XY":
        """Replace y^2 by rhs (a polynomial in x alone) until deg_y <= 1."""
        cur = self
        while any(j >= 2 for (_, j) in cur.t):
            out = _XY()
            for (i, j), v in cur.t.items():
                if j >= 2:
                    out = out + _XY({(i, j - 2): v}) * rhs
                else:
                    out = out + _XY({(i, j): v})
            cur = out
        return cur

    def is_zero(self) -> bool:
        return not self.t


X_ = _XY({(1, 0): 1})
Y_ = _XY({(0, 1): 1})
WEIERSTRASS_RHS = 4 * X_ ** 3 + X_ ** 2 - 2 * X_ - 7
MINIMAL_MODEL = (1, 0, 1, -1, -2)  # a1, a2, a3, a4, a6 of y^2 + xy + y = x^3 - x - 2


def _b_invariants(a):
    a1, a2, a3, a4, a6 = a
    return (a1 * a1 + 4 * a2, 2 * a4 + a1 * a3, a3 * a3 + 4 * a6)


def _ec_add(P, Q, a):
    """Group law on y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6; None is infinity."""
    a1, a2, a3, a4, a6 = a
    if P is None:
        return Q
    if Q is None:
        return P
    (x1, y1), (x2, y2) = P, Q
    if x1 == x2 and y1 + y2 + a1 * x2 + a3 == 0:
        return None
    if x1 == x2:
        lam = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) / Fraction(2 * y1 + a1 * x1 + a3)
    else:
        lam = (y2 - y1) / Fraction(x2 - x1)
    nu = y1 - lam * x1
    x3 = lam * lam + a1 * lam - a2 - x1 - x2
    y3 = -(lam + a1) * x3 - nu - a3
    return (x3, y3)


@dataclass
class EllipticCheck:
    identity: bool
    model_change: dict | None
    torsion_t: list[int]
    torsion_points: list[tuple[int, int]]
    torsion_order: int | None

    @property
    def ok(self) -> bool:
        return (self.identity and self.model_change is not None
                and sorted(self.torsion_t) == [-22, 3] and self.torsion_order == 3)

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        return {"identity": self.identity, "model_change": self.model_change,
                "torsion_t": self.torsion_t,
                "torsion_points": [[str(a), str(b)] for a, b in self.torsion_points],
                "torsion_order": self.torsion_order, "ok": self.ok}


def elliptic_parametrization_check(search: int = 6) -> EllipticCheck:
    """Verify t = ((x+3)y - 5x^2 + 1)/2 on y^2 = 4x^3 + x^2 - 2x - 7 solves the T4 quintic,
    and relate that curve to y^2 + xy + y = x^3 - x - 2."""
    main = get_family("T4").main
    t = ((X_ + 3) * Y_ - 5 * X_ ** 2 + 1) * Fraction(1, 2)
    total = _XY()
    for i, c in enumerate(main.coeffs):
        for k, a in enumerate(c.coeffs):
            if a:
                total = total + a * X_ ** i * t ** k
    identity = total.reduce_y2(WEIERSTRASS_RHS).is_zero()

    # the curve Y^2 = 4x^3 + b2 x^2 + 2 b4 x + b6 has b-invariants (1, -1, -7)
    target = (1, -1, -7)
    change = None
    for u in range(1, search + 1):
        for r in range(-search, search + 1):
            b2, b4, b6 = _b_invariants(MINIMAL_MODEL)
            # x = u^2 x' + r on the minimal model
            nb2 = Fraction(b2 + 12 * r, u ** 2)
            nb4 = Fraction(b4 + r * b2 + 6 * r * r, u ** 4)
            nb6 = Fraction(b6 + 2 * r * b4 + r * r * b2 + 4 * r ** 3, u ** 6)
            if (nb2, nb4, nb6) == target:
                change = {"u": u, "r": r}
                break
        if change:
            break
    if change:
        # exact check of Y = 2y + a1 x + a3 with the found (u, r) = (1, 0)
        a1, a2, a3, a4, a6 = MINIMAL_MODEL
        lhs = (2 * Y_ + a1 * X_ + a3) ** 2 - WEIERSTRASS_RHS
        rhs = 4 * (Y_ ** 2 + a1 * X_ * Y_ + a3 * Y_ - X_ ** 3 - a2 * X_ ** 2 - a4 * X_ - a6)
        if not (lhs - rhs).is_zero() or change != {"u": 1, "r": 0}:
            change = None
        else:
            change.update({"s": 0, "w": 0, "Y": "2y + x + 1"})

    ts, pts = [], []
    x0 = 2
    y2 = 4 * x0 ** 3 + x0 ** 2 - 2 * x0 - 7
    r = isqrt(y2)
    if r * r == y2:
        for yy in sorted({r, -r}, reverse=True):
            tv = Fraction((x0 + 3) * yy - 5 * x0 * x0 + 1, 2)
            if tv.denominator == 1:
                ts.append(int(tv))
            # matching point on the minimal model
            pts.append((x0, (yy - x0 - 1) // 2))
    order = None
    if pts:
        P = (Fraction(pts[0][0]), Fraction(pts[0][1]))
        Q = P
        for k in range(2, 13):
            Q = _ec_add(Q, P, MINIMAL_MODEL)
            if Q is None:
                order = k
                break
    return EllipticCheck(identity, change, sorted(ts), pts, order)


def tschirnhaus_check(fid: str, t: int) -> bool:
    """Specialize a stored pre-image polynomial and its transformation at t and verify the map."""
    from .resolvent import verify_tschirnhaus

    spec = get_family(fid)
    ts = spec.raw.get("tschirnhaus")
    if not ts:
        raise ValueError(f"{fid} has no stored transformation")
    num = BiPoly.from_json(ts["num_coeffs"]).specialize(t)
    den = Poly.from_json(ts["den_coeffs"])(t)
    target = get_family(ts["target"]).main.specialize(t)
    return verify_tschirnhaus(spec.main.specialize(t), num, den, target)


def printed_main(fid: str) -> BiPoly | None:
    """The polynomial exactly as printed, when the stored main was corrected."""
    coeffs = get_family(fid).raw.get("printed_coeffs")
    return BiPoly.from_json(coeffs) if coeffs else None


def parse_t_range(text: str) -> range:
    """'a..b' inclusive."""
    lo, _, hi = text.partition("..")
    return range(int(parse_rational(lo)), int(parse_rational(hi)) + 1)
