import json
from fractions import Fraction
from importlib import resources

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from unramforge.exactalg import BiPoly, Poly
from unramforge.families import (
    FixtureError,
    apolarity_check,
    catalog,
    elliptic_parametrization_check,
    enumerate_admissible,
    fixture_checksum,
    get_family,
    load_fixture_document,
    lucas_specializations,
    parse_t_range,
    printed_main,
    specialize,
    tschirnhaus_check,
)

T = sp.Symbol("t")
RAW = json.loads(resources.files("unramforge").joinpath("data/families.json").read_text())
ENTRIES = {e["id"]: e for e in RAW["families"]}
THEOREMS = [f.id for f in catalog("theorem")]


def sympy_bipoly(expr, var):
    v = sp.Symbol(var)
    p = sp.Poly(sp.expand(sp.sympify(expr)), v, T)
    deg = p.degree(v)
    rows = []
    for i in range(deg + 1):
        ci = sp.Poly(p.as_expr().coeff(v, i), T) if i else sp.Poly(p.as_expr().subs(v, 0), T)
        rows.append([sp.Rational(c) for c in reversed(ci.all_coeffs())])
    return rows


def stored_rows(coeffs):
    return [[Fraction(c) for c in row] for row in coeffs]


def trim(rows):
    out = []
    for r in rows:
        r = list(r)
        while r and r[-1] == 0:
            r.pop()
        out.append(r)
    return out


def test_checksum_stable():
    doc = load_fixture_document()
    assert fixture_checksum(doc["families"]) == doc["checksum"]


def test_checksum_detects_edit():
    doc = json.loads(json.dumps(RAW))
    doc["families"][0]["main"]["coeffs"][0][0] = "-17"
    assert fixture_checksum(doc["families"]) != RAW["checksum"]


def test_fixture_error_on_tamper(monkeypatch):
    import unramforge.families as fam

    bad = dict(RAW, checksum="0" * 64)
    monkeypatch.setattr(fam.json, "loads", lambda text: bad)
    with pytest.raises(FixtureError):
        fam.load_fixture_document()


@pytest.mark.parametrize("fid", sorted(ENTRIES))
def test_coefficients_rederived_from_expressions(fid):
    e = ENTRIES[fid]
    for key in ("main", "subfield"):
        if key in e:
            want = trim(sympy_bipoly(e[key]["expr"], e[key]["var"]))
            assert trim(stored_rows(e[key]["coeffs"])) == want


def test_t6_alternative_form_agrees():
    e = ENTRIES["T6"]["main"]
    assert sp.expand(sp.sympify(e["expr"]) - sp.sympify(e["alt_expr"])) == 0


def test_radicand_kernels_rederived():
    for e in ENTRIES.values():
        rad = e.get("radicand")
        if rad and "kernel_coeffs" in rad:
            ref = sp.Poly(sp.sympify(rad["kernel_expr"]), T)
            got = [Fraction(c) for c in rad["kernel_coeffs"]]
            assert trim([got]) == trim([[sp.Rational(c) for c in reversed(ref.all_coeffs())]])


@pytest.mark.parametrize("fid", THEOREMS)
def test_every_theorem_family_specializes(fid):
    spec = get_family(fid)
    ts = enumerate_admissible(fid, -60, 61)
    assert ts
    inst = specialize(fid, ts[0])
    assert inst.admissible and inst.congruence_class in [tuple(c) for c in spec.classes]
    assert inst.main.is_monic() and inst.main.degree == spec.main.degree


def test_enumerate_examples():
    assert enumerate_admissible("T4", 0, 30) == [1, 3, 9, 20, 26, 28]
    assert enumerate_admissible("T9", 0, 49) == [0, 5, 8, 17, 20, 25]
    assert enumerate_admissible("T8", 980, 1000) == [982, 986, 989, 998]


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["T4", "T6", "T9", "T12", "T14"]), st.integers(-500, 500),
       st.integers(1, 80))
def test_enumerate_matches_specialize(fid, lo, width):
    got = enumerate_admissible(fid, lo, lo + width)
    assert got == [t for t in range(lo, lo + width) if specialize(fid, t).admissible]


def test_parse_t_range_inclusive():
    assert list(parse_t_range("-2..3")) == [-2, -1, 0, 1, 2, 3]


def test_unknown_family():
    with pytest.raises(KeyError):
        get_family("T99")


@pytest.mark.parametrize("fid", ["T5", "T7", "T8"])
def test_lucas_specializations_admissible(fid):
    rows = lucas_specializations(fid, range(-3, 4))
    assert rows
    for _, t, inst, rule in rows:
        s2, r = divmod(t * t + rule.pell_shift, 5)
        assert r == 0 and sp.sqrt(s2).is_integer
        assert inst.admissible


def test_lucas_specialization_values():
    from unramforge.cheblucas import lucas_number

    t5 = [t for _, t, _, _ in lucas_specializations("T5", range(0, 3))]
    assert t5 == [2 * lucas_number(20 * i - 5) for i in range(3)]
    with pytest.raises(ValueError):
        lucas_specializations("T4", range(2))


@pytest.mark.parametrize("fid,n", [("A3", 3), ("A4", 4), ("A6", 6)])
def test_apolar_sources(fid, n):
    assert apolarity_check(get_family(fid).main, n).apolar


def test_printed_sextic_is_not_apolar():
    assert not apolarity_check(get_family("A6raw").main, 6).apolar


def test_apolarity_rejects_generic():
    f = BiPoly([Poly((1,)), Poly((0, 1)), Poly((0, 0, 1)), Poly((1,))])
    assert not apolarity_check(f, 3).apolar


def test_elliptic_model():
    r = elliptic_parametrization_check()
    assert r.identity
    assert sorted(r.torsion_t) == [-22, 3]


@pytest.mark.parametrize("t", [-22, 3])
def test_t4_torsion_points_reducible(t):
    from unramforge.exactalg import is_irreducible_Q

    assert not is_irreducible_Q(specialize("T4", t).main).irreducible


@pytest.mark.parametrize("t", [-7, -1, 0, 1, 2, 5, 11])
def test_t4_pre_image_transform(t):
    assert tschirnhaus_check("T4pre", t)


def test_t4_pre_image_generic():
    # the same check symbolically: resultant in z eliminates to T4 up to the constant
    e = ENTRIES["T4pre"]
    z, x = sp.symbols("z x")
    num = sp.sympify(e["tschirnhaus"]["num"])
    den = sp.sympify(e["tschirnhaus"]["den"])
    f = sp.sympify(e["main"]["expr"])
    g = sp.sympify(ENTRIES["T4"]["main"]["expr"])
    for tv in (2, 13):
        r = sp.resultant(f.subs(T, tv), den.subs(T, tv) * x - num.subs(T, tv), z)
        q, rem = sp.div(sp.Poly(r, x), sp.Poly(g.subs(T, tv), x))
        assert rem.is_zero and q.degree() == 0


def test_printed_main_only_for_corrected():
    assert printed_main("T4") is None
