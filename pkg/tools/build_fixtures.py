"""Expand the family transcriptions into coefficient arrays.

Run once after editing FAMILIES; writes src/unramforge/data/families.json.
Needs sympy (dev only). The test suite re-derives every array.
"""

import hashlib
import json
from pathlib import Path

import sympy as sp

t, x, y, z = sp.symbols("t x y z")
OUT = Path(__file__).resolve().parents[1] / "src" / "unramforge" / "data" / "families.json"

CUBIC_RAW = "y^3-ty^2-(2t^2-7t+21)x+t^3+28"
CUBIC = "y**3-t*y**2-(2*t**2-7*t+21)*y+t**3+28"
CUBIC9_RAW = "y^3-3(t^2-3t+9)x+(t-6)(t^2-3t+9)"
CUBIC9 = "y**3-3*(t**2-3*t+9)*y+(t-6)*(t**2-3*t+9)"
T4_MAIN = "x**5+10*x**3-5*t*x**2-15*x-t**2+t-16"
T4_SUB = "y**4+5*(t**2+16)*y**2+5*(t**2+16)*(t-2)**2"
T6_MAIN = "x**5-10*x**3-5*x**2*t**2+5*(t**3+2*t**2+4*t+5)*x-(t**3+2*t**2+5*t+8)*t"
T6_ALT = "(x**2-5)**2*x+(20*x-8)*t-5*(x-1)**2*t**2+(5*x-2)*t**3-t**4"
T6_SUB = "y**4+5*(t+2)*(t**2+4)*t*y**2+5*(t**2+4)*(t+2)**2*(t-1)**2*t**2"
T8_MAIN = ("(x+4)*(x-1)**4+20*(x-1)**2*t+(10*x**2-20*x+26)*t**2+(5*x**2-10*x+13)*t**3"
           "+(-5*x+6)*t**4+2*t**5")
T8_SUB = "y**4+5*(t+2)*(t**2+4)*t*y**2+5*(t**2+4)*(t+2)**2*(t+1)**2*t**2"
T12_MAIN = ("x**9+27*x**7-9*(t**3-4*t**2+11*t-6)*x**6+27*(t-2)*(t**2-4*t+8)*(t**2-3*t+9)*x**5"
            "-9*(t**2-4*t+8)*(t**2-3*t+9)*(t**4-7*t**3+26*t**2-48*t+36)*x**4"
            "-3*(7*t**2-18*t+63)*(t**2-3*t+9)*(t**2-4*t+8)**2*x**3"
            "-27*(t**2-5*t+10)*(t**2-4*t+8)**2*(t**2-3*t+9)**2*x**2"
            "+9*(t**3-6*t**2+18*t-24)*(t**2-3*t+9)**2*(t**2-4*t+8)**3*x"
            "-(t**6-11*t**5+61*t**4-213*t**3+475*t**2-660*t+468)*(t**2-3*t+9)**2*(t**2-4*t+8)**3")
T13_MAIN = ("x**9+27*x**7+9*(t**3-5*t**2+14*t-18)*x**6-27*(t-1)*(t**2-2*t+5)*(t**2-3*t+9)*x**5"
            "+9*(t**2-2*t+5)*(t**2-3*t+9)*(t**3-2*t**2+5*t+12)*x**4"
            "-3*(t**2-3*t+9)*(10*t**2-33*t+90)*(t**2-2*t+5)**2*x**3"
            "+27*(t**2-3*t+6)*(t**2-2*t+5)**2*(t**2-3*t+9)**2*x**2"
            "-9*(t**2-2*t+5)**3*(t**2-3*t+9)**3*x"
            "+(t**4-5*t**3+27*t**2-54*t+135)*(t**2-3*t+9)**2*(t**2-2*t+5)**3")
S3_DEG7 = "x**7-5*x**6-3*x**5+8*x**4+6*x**3-3*x**2-4*x-1+4*t*x**3*(x+1)"
S3_DEG8 = "(y+1)*(y**7-y**6-11*y**5+y**4+41*y**3+25*y**2-34*y-29)-t*(2*y+3)**2"


def poly(expr, var="x", raw=None, **extra):
    d = {"var": var, "expr": expr}
    if raw:
        d["raw"] = raw
    d.update(extra)
    return d


FAMILIES = [
    dict(id="T4", kind="theorem", p=5,
         description="F20 quintic over a cyclic quartic field, unramified when t = -5, 1, 3, 9 mod 25",
         main=poly(T4_MAIN, raw="x^5+10x^3-5tx^2-15x-t^2+t-16"),
         subfield=poly(T4_SUB, "y", raw="y^4+5(t^2+16)y^2 + 5(t^2+16)(t-2)^2"),
         classes=[[-5, 25], [1, 25], [3, 25], [9, 25]],
         radicand={"descriptor": "quadratic subfield of the cyclic quartic", "kernel_expr": "5*(t**2+16)"},
         witness_rule={"t0": 1, "modulus": 25, "u0": -9, "u_step": -10},
         source="A4 (apolar cyclic quartic), transformed; pre-image T4pre"),
    dict(id="T5", kind="theorem", p=5,
         description="D5 specialization of T4 along the Pell solutions t = 2 L(20i-5)",
         main=poly(T4_MAIN, raw="x^5+10x^3-5tx^2-15x-t^2+t-16"),
         subfield=poly(T4_SUB, "y", raw="y^4+5(t^2+16)y^2 + 5(t^2+16)(t-2)^2"),
         classes=[[-5, 25], [1, 25], [3, 25], [9, 25]],
         radicand={"descriptor": "sqrt(-sqrt((t^2+16)/500))", "kernel_expr": "t**2+16"},
         lucas_rules=[{"mult": 2, "step": 20, "offset": -5, "pell_shift": 16}],
         source="T4 with t^2+16 = 5 s^2"),
    dict(id="T6", kind="theorem", p=5,
         description="F20 quintic from the genus one cyclic quartic, t = -1 mod 5, -8, -2 mod 25, 0 mod 125",
         main=poly(T6_MAIN, raw="x^5-10x^3-5x^2t^2+5(t^3+2t^2+4t+5)x-(t^3+2t^2+5t+8)t",
                   alt_expr=T6_ALT),
         subfield=poly(T6_SUB, "y", raw="y^4+5(t+2)(t^2+4)ty^2+5(t^2+4)(t+2)^2(t-1)^2t^2"),
         classes=[[-1, 5], [-8, 25], [-2, 25], [0, 125]],
         radicand={"descriptor": "quadratic subfield of the cyclic quartic", "kernel_expr": "5*(t**2+4)"},
         source="G4 (genus one cyclic quartic), transformed; pre-image T6pre"),
    dict(id="T7", kind="theorem", p=5,
         description="D5 specialization of T6 along t = L(4i-1)",
         main=poly(T6_MAIN, raw="x^5-10x^3-5x^2t^2+5(t^3+2t^2+4t+5)x-(t^3+2t^2+5t+8)t",
                   alt_expr=T6_ALT),
         subfield=poly(T6_SUB, "y", raw="y^4+5(t+2)(t^2+4)ty^2+5(t^2+4)(t+2)^2(t-1)^2t^2"),
         classes=[[-1, 5], [-8, 25], [-2, 25], [0, 125]],
         radicand={"descriptor": "sqrt(-t(t+2)sqrt(5t^2+20))", "kernel_expr": "t**2+4"},
         lucas_rules=[{"mult": 1, "step": 4, "offset": -1, "pell_shift": 4}],
         source="T6 with t^2+4 = 5 s^2"),
    dict(id="T8", kind="theorem", p=5,
         description="F20 quintic, t = 7, 11 mod 25, -2, 0 mod 125 or 989 mod 3125; Lucas rules L(20i-15), L(100i-25)",
         main=poly(T8_MAIN, raw="(x+4)(x-1)^4+20(x-1)^2t+(10x^2-20x+26)t^2+(5x^2-10x+13)t^3+(-5x+6)t^4+2t^5"),
         subfield=poly(T8_SUB, "y", raw="y^4+5(t+2)(t^2+4)ty^2+5(t^2+4)(t+2)^2(t+1)^2t^2"),
         classes=[[7, 25], [11, 25], [-2, 125], [0, 125], [989, 3125]],
         radicand={"descriptor": "sqrt(-t(t+2)sqrt((t^2+4)/125))", "kernel_expr": "5*(t**2+4)"},
         lucas_rules=[{"mult": 1, "step": 20, "offset": -15, "pell_shift": 4},
                      {"mult": 1, "step": 100, "offset": -25, "pell_shift": 4}],
         source="G4, other direction"),
    dict(id="T9", kind="theorem", p=7,
         description="F42 septic from the apolar sextic, t = 0, 5, 8, 17, 20, 25 mod 49",
         main=poly("x**7-21*x**5+70*x**4-105*x**3-28*(4*t**2-12*t+33)*x**2+7*(96*t**2-288*t+859)*x"
                   "+64*t**3-1264*t**2+3792*t-9642",
                   raw="x^7-21x^5+70x^4-105x^3-28(4t^2-12t+33)x^2+7(96t^2-288t+859)x+64t^3-1264t^2+3792t-9642"),
         subfield=poly(CUBIC, "y", raw=CUBIC_RAW),
         classes=[[0, 49], [5, 49], [8, 49], [17, 49], [20, 49], [25, 49]],
         radicand={"descriptor": "sqrt(-7(t^2-3t+9))", "kernel_expr": "-7*(t**2-3*t+9)"},
         source="A6 (apolar sextic, corrected)"),
    dict(id="T10", kind="theorem", p=7,
         description="F42 septic from the genus two sextic, t = 2 mod 7, -21, -18, -16, -8, 11 mod 49, 743 mod 2401",
         main=poly("x**7+21*x**5-7*(t**2-4*t+10)*x**4+28*(t**2-3*t+15)*x**3-7*(5*t**3-8*t**2+12*t+72)*x**2"
                   "+7*(5*t+6)*(2*t**2-7*t+22)*x-t**5-20*t**4-94*t**3+410*t**2-1584*t+1224",
                   raw="x^7+21x^5-7(t^2-4t+10)x^4+28(t^2-3t+15)x^3-7(5t^3-8t^2+12t+72)x^2+7(5t+6)(2t^2-7t+22)x-t^5-20t^4-94t^3+410t^2-1584t+1224"),
         subfield=poly(CUBIC, "y", raw=CUBIC_RAW),
         classes=[[2, 7], [-21, 49], [-18, 49], [-16, 49], [-8, 49], [11, 49], [743, 2401]],
         radicand={"descriptor": "sqrt(-7(t-2)^2-28)", "kernel_expr": "-7*(t-2)**2-28"},
         source="G6 (genus two sextic)"),
    dict(id="T11", kind="theorem", p=7,
         description="F42 septic, other direction with t -> 3-t, t = 3 mod 7, -17, -5, 5, 7, 13 mod 49, 743 mod 2401",
         main=poly("x**7-7*t*x**5-7*(t**2-4*t+11)*x**4+28*(t**2-t+3)*x**3+7*(3*t**2-13*t+36)*t*x**2"
                   "+7*(t**4-18*t**3+68*t**2-176*t+192)*x-t**5-23*t**4+184*t**3-816*t**2+1536*t-2304",
                   raw="x^7-7tx^5-7(t^2-4t+11)x^4+28(t^2-t+3)x^3+7(3t^2-13t+36)tx^2+7(t^4-18t^3+68t^2-176t+192)x-t^5-23t^4+184t^3-816t^2+1536t-2304"),
         subfield=poly(CUBIC, "y", raw=CUBIC_RAW),
         classes=[[3, 7], [-17, 49], [-5, 49], [5, 49], [7, 49], [13, 49], [743, 2401]],
         radicand={"descriptor": "sqrt(-7(t-1)^2-28)", "kernel_expr": "-7*(t-1)**2-28"},
         source="G6, other direction"),
    dict(id="T12", kind="theorem", p=3,
         description="F54 nonic from the genus two sextic, t = -12, 11, 6 mod 27",
         main=poly(T12_MAIN, raw="x^9+27x^7-9(t^3-4t^2+11t-6)x^6+... (see expr)"),
         subfield=poly(CUBIC9, "y", raw=CUBIC9_RAW),
         classes=[[-12, 27], [11, 27], [6, 27]],
         classes_raw="-12,11,6 or 11 mod 27",
         radicand={"descriptor": "sqrt(-3(t-2)^2-12)", "kernel_expr": "-3*(t-2)**2-12"},
         source="G6"),
    dict(id="T13", kind="theorem", p=3,
         description="F54 nonic, other direction with t -> 3-t, t = 5, 10 mod 27",
         main=poly(T13_MAIN, raw="x^9+27x^7+9(t^3-5t^2+14t-18)x^6-27(t-1)(t^2-2*t+5)(t^2-3t+9)x^5+... (see expr)"),
         subfield=poly(CUBIC9, "y", raw=CUBIC9_RAW),
         classes=[[5, 27], [10, 27]],
         radicand={"descriptor": "sqrt(-3(t-1)^2-12)", "kernel_expr": "-3*(t-1)**2-12"},
         source="G6, other direction"),
    dict(id="T14", kind="theorem", p=7,
         description="non-geometric F42 septic, t = -16, -11, -5, 0, 6, 11 mod 49 or 743 mod 2401",
         main=poly("x**7-14*x**4-7*(t-3)*x**3+14*t*x**2-28*x+t**2-11*t+33",
                   raw="x^7-14x^4-7(t-3)x^3+14tx^2-28x+t^2-11t+33"),
         subfield=poly(CUBIC, "y", raw=CUBIC_RAW),
         classes=[[-16, 49], [-11, 49], [-5, 49], [0, 49], [6, 49], [11, 49], [743, 2401]],
         radicand={"descriptor": "sqrt(-7)", "kernel_expr": "-7"},
         source="A3b = x^3+tx^2+(t-3)x-1"),
    dict(id="T15", kind="theorem", p=2,
         description="2^3-elementary extension of a PGL3(2) septic field, every integer t",
         main=poly(S3_DEG8, "y", raw="(y+1)(y^7-y^6-11y^5+y^4+41y^3+25y^2-34y-29)-t(2y+3)^2"),
         subfield=poly(S3_DEG7, "x", raw="x^7-5x^6-3x^5+8x^4+6x^3-3x^2-4x-1+4tx^3(x+1)"),
         classes=[[0, 1]],
         radicand={"descriptor": "none (PGL3(2) base)", "kernel_expr": "1"},
         source="LaMacchia septic at u = -1, t -> 4t+2"),
    # unit-generating and auxiliary polynomials
    dict(id="A3", kind="source", description="apolar cyclic cubic",
         main=poly("x**3-t*x**2-(t+3)*x-1", raw="x^3 - tx^2 - (t+3)x - 1"), apolar=3),
    dict(id="A3b", kind="source", description="cyclic cubic behind T14",
         main=poly("x**3+t*x**2+(t-3)*x-1", raw="x^3+tx^2+(t-3)x-1")),
    dict(id="A4", kind="source", description="apolar cyclic quartic",
         main=poly("x**4-t*x**3-6*x**2+t*x+1", raw="x^4 -tx^3 -6x^2 + tx +1"), apolar=4),
    dict(id="A6", kind="source", description="apolar cyclic sextic, x^4 coefficient restored",
         main=poly("x**6-2*t*x**5+5*(t-3)*x**4+20*x**3-5*t*x**2+2*(t-3)*x+1",
                   raw="x^6-2tx^5+5(t-3)x^3 + 20x^3 -5tx^2 + 2(t-3)x+1"), apolar=6),
    dict(id="A6raw", kind="source", description="apolar cyclic sextic as printed (two x^3 terms)",
         main=poly("x**6-2*t*x**5+5*(t-3)*x**3+20*x**3-5*t*x**2+2*(t-3)*x+1",
                   raw="x^6-2tx^5+5(t-3)x^3 + 20x^3 -5tx^2 + 2(t-3)x+1")),
    dict(id="G4", kind="source", description="genus one cyclic quartic",
         main=poly("x**4-t**2*x**3-(t**3+2*t**2+4*t+2)*x**2-t**2*x+1",
                   raw="x^4-t^2x^3-(t^3+2t^2+4t+2)x^2-t^2x+1")),
    dict(id="G5", kind="source", description="cyclic quintic of positive genus",
         main=poly("x**5-t**2*x**4-(t**3+6*t**2+10*t+10)*x**3-(t**4+5*t**3+11*t**2+15*t+5)*x**2"
                   "+(t**3+4*t**2+10*t+10)*x-1",
                   raw="x^5-t^2x^4-(t^3+6t^2+10t+10)x^3-(t^4+5t^3+11t^2+15t+5)x^2+(t^3+4t^2+10t+10)x - 1")),
    dict(id="G6", kind="source", description="genus two cyclic sextic",
         main=poly("x**6-t*x**5-(t**2-5*t+12)*x**4+(t**3-4*t**2+10*t-2)*x**3"
                   "-(t**3-6*t**2+17*t-21)*x**2-(t**2-3*t+6)*x-1",
                   raw="x^6-tx^5-(t^2-5t+12)x^4+(t^3-4t^2+10t-2)x^3-(t^3-6t^2+17t-21)x^2-(t^2-3t+6)x-1")),
    dict(id="Qplus", kind="source", description="units of real quadratic fields",
         main=poly("x**2-t*x+1", raw="x^2-tx+1")),
    dict(id="Qminus", kind="source", description="units of norm -1",
         main=poly("x**2-t*x-1", raw="x^2-tx-1")),
    dict(id="T4pre", kind="source", description="quintic before transformation to T4",
         main=poly("z**5-10*z**3+20*z**2+(5*t**2+65)*z-t**3-2*t**2-16*t-28", "z",
                   raw="z^5-10z^3+20z^2+(5t^2+65)z-t^3-2t^2-16t-28"),
         tschirnhaus={"num": "(t+6)*z**4+(t-14)*z**3+(t**2-11*t-22)*z**2-(3*t**2+3*t-150)*z+4*t**3+20*t**2+68*t-8",
                      "den": "t**3+4*t**2+60*t+32", "target": "T4"}),
    dict(id="T4lucas", kind="source", description="quadratic whose roots feed the Lucas radical form of T4",
         main=poly("v**2-(t**2-t+16)*v+t**3+2*t**2+16*t+28", "v",
                   raw="v^2-(t^2-t+16)v+t^3+2t^2+16t+28")),
    dict(id="T6pre", kind="source", description="quintic before transformation to T6",
         main=poly("z**5-10*z**3+5*(t**3+2*t**2+4*t+4)*z**2-5*(t**4+2*t**3+4*t**2+8*t+3)*z"
                   "+t**7+4*t**6+10*t**5+22*t**4+29*t**3+26*t**2+20*t+4", "z",
                   raw="z^5-10z^3+5(t^3+2t^2+4t+4)z^2-5(t^4+2t^3+4t^2+8t+3)z+t^7+4t^6+10t^5+22t^4+29t^3+26t^2+20t+4")),
    dict(id="S3z8", kind="source", description="2^3.PGL3(2) octic before reduction",
         main=poly("z**8-(36+16*t)*z**6+64*z**5+(96*t**2+336*t-42)*z**4+(128-256*t)*z**3"
                   "-(256*t**3+960*t**2-16*t+68)*z**2+(1792*t-320)*z+(256*t**4+768*t**3-160*t**2-592*t+17)", "z",
                   raw="z^8-(36+16t)z^6+64z^5+(96t^2+336t-42)z^4+(128-256t)z^3-(256t^3+960t^2-16t+68)z^2+(1792t-320)z+(256t^4+768t^3-160t^2-592t+17)")),
    # worked examples over Q
    dict(id="S1_quartic", kind="example", description="cyclic quartic units",
         main=poly("x**4-47*x**3+519*x**2+47*x+1", raw="x^4 -47x^3 + 519x^2 + 47x + 1")),
    dict(id="S1_P47", kind="example", description="resolvent quintic from the sqrt(-47) orbit",
         main=poly("x**5-10*x**3-2605*x**2+5860*x+443629", raw="x^5 - 10x^3 -2605x^2 + 5860x + 443629")),
    dict(id="S1_P235", kind="example", description="resolvent quintic from the reversed orbit, computed",
         main=poly("x**5-10*x**3-2605*x**2+5860*x+167504", raw="x^5 - 10x^3 -2605x^2 + 5680x + 167504"),
         printed_expr="x**5-10*x**3-2605*x**2+5680*x+167504"),
    dict(id="S1_47", kind="example", p=5, description="reduced D5 quintic over Q(sqrt(-47))",
         main=poly("x**5+x**4+x**3-x**2-2*x-1", raw="x^5+x^4+x^3-x^2-2x-1"),
         subfield=poly("y**2+y+12", "y"), classes=[[0, 1]],
         radicand={"descriptor": "sqrt(-47)", "kernel_expr": "-47"}),
    dict(id="S1_235", kind="example", p=5, description="Eisenstein D5 quintic over Q(sqrt(-235)), x^2 coefficient corrected",
         main=poly("x**5-35*x**2+50*x+20", raw="x^5 - 35x^3 + 50x + 20"),
         printed_expr="x**5-35*x**3+50*x+20",
         subfield=poly("y**2+y+59", "y"), classes=[[0, 1]],
         radicand={"descriptor": "sqrt(-235)", "kernel_expr": "-235"}),
]


def t_coeffs(expr):
    c = sp.Poly(sp.expand(sp.sympify(expr, locals={"t": t})), t)
    cs = [str(c.coeff_monomial(t ** k)) for k in range(c.degree() + 1)] if c != 0 else []
    while cs and cs[-1] == "0":
        cs.pop()
    return cs


def expand(spec, key="expr"):
    var = sp.Symbol(spec["var"])
    e = sp.expand(sp.sympify(spec[key], locals={"t": t, spec["var"]: var}))
    n = sp.degree(e, var)
    rows = []
    for i in range(n + 1):
        c = sp.Poly(e.coeff(var, i), t)
        cs = [int(c.coeff_monomial(t ** k)) for k in range(c.degree() + 1)] if c != 0 else []
        while cs and cs[-1] == 0:
            cs.pop()
        rows.append([str(v) for v in cs])
    return rows


def main():
    entries = []
    for fam in FAMILIES:
        fam = json.loads(json.dumps(fam))
        for key in ("main", "subfield"):
            if key in fam:
                fam[key]["coeffs"] = expand(fam[key])
                if "alt_expr" in fam[key]:
                    fam[key]["alt_coeffs"] = expand(fam[key], "alt_expr")
        if "printed_expr" in fam:
            fam["printed_coeffs"] = expand({"var": fam["main"]["var"], "expr": fam["printed_expr"]})
        if "radicand" in fam:
            fam["radicand"]["kernel_coeffs"] = t_coeffs(fam["radicand"]["kernel_expr"])
        if "tschirnhaus" in fam:
            ts = fam["tschirnhaus"]
            ts["num_coeffs"] = expand({"var": fam["main"]["var"], "expr": ts["num"]})
            ts["den_coeffs"] = t_coeffs(ts["den"])
        entries.append(fam)
    body = json.dumps(entries, sort_keys=True, separators=(",", ":"))
    doc = {"version": 1, "checksum": hashlib.sha256(body.encode()).hexdigest(), "families": entries}
    OUT.write_text(json.dumps(doc, indent=1, sort_keys=True) + "\n")
    print(f"wrote {len(entries)} entries to {OUT}")


if __name__ == "__main__":
    main()
