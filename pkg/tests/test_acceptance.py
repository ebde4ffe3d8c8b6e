"""The twelve acceptance criteria, one test each.

Every test records a single PASS/FAIL line, printed in the terminal summary.
Tolerances are pinned here: exact identities stay exact, scans use
B = 10^4, tau = 0.05 and seed 0, and wall-clock budgets are asserted.
"""

import json
import subprocess
import sys
import time
from importlib import resources

import pytest

from conftest import ACCEPTANCE
from oracles import roots_mod
from unramforge.certify import certify_family, galois_scan, local_ramification, pgl_pair_checks
from unramforge.cheblucas import (
    admissible_thm2,
    cheb_fixed_points_mod,
    cheb_monic,
    lucas_number,
    pell_sequence,
    resolvent_root_poly,
)
from unramforge.exactalg import (
    Poly,
    discriminant,
    eisenstein_prime,
    factorint,
    newton_witness_lift,
    valuation,
)
from unramforge.families import (
    catalog,
    elliptic_parametrization_check,
    enumerate_admissible,
    fixture_checksum,
    get_family,
    load_fixture_document,
    lucas_specializations,
    specialize,
)
from unramforge.resolvent import (
    ResolventConfig,
    construct_Pn,
    orbit_from_json,
    verify_permutation_polynomial,
    verify_tschirnhaus,
)
from unramforge.selftest import (
    G47,
    G235_PRINTED,
    P235,
    P235_PRINTED,
    QUARTIC,
    SIGMA1,
    SIGMA2,
    T47,
    T235,
)

SCAN_BOUND = 10 ** 4
TAU = 0.05
SEED = 0


def record(n, ok, detail):
    ACCEPTANCE[n] = (bool(ok), detail)
    print(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


def load_orbit(name):
    ref = resources.files("unramforge") / "data" / "orbits" / f"{name}.json"
    return orbit_from_json(json.loads(ref.read_text()))


def test_criterion_01_quartic_orbit():
    t0 = time.perf_counter()
    checks = [verify_permutation_polynomial(QUARTIC, *s) for s in (SIGMA1, SIGMA2)]
    dt = time.perf_counter() - t0
    ok = all(c.valid and c.cycle_type == (4,) for c in checks) and dt < 1
    record(1, ok, f"both generators are 4-cycles on the quartic roots ({dt:.2f} s)")


def test_criterion_02_resolvent():
    t0 = time.perf_counter()
    orbit, target = load_orbit("sqrt-47")
    res = construct_Pn(ResolventConfig(5), orbit, search=True, target=target)
    dt = time.perf_counter() - t0
    ok47 = res.poly == target and res.tried <= 625 and dt < 30

    orbit, printed = load_orbit("sqrt-235")
    got = construct_Pn(ResolventConfig(5), orbit).poly
    status = "pass" if got == printed else "discrepancy"
    fallback = True
    if status == "discrepancy":
        scan = galois_scan(got, SCAN_BOUND, "D5", tau=TAU, seed=SEED)
        # disc support: 5 and the primes of disc Q(sqrt(-235)); anything else must be unramified
        outside = [q for q in factorint(abs(discriminant(got))) if q not in (5, 47)]
        support = all(local_ramification(got, q)["status"] == "unramified" for q in outside)
        fallback = scan.consistent and support
    ok = ok47 and got == P235 and fallback
    record(2, ok, f"sqrt(-47) exact after {res.tried} branch(es) in {dt:.2f} s; "
                  f"sqrt(-235) {status} (x coefficient {got[1]} vs printed {printed[1]}), "
                  f"D5 scan and disc support {'hold' if fallback else 'fail'}")


def test_criterion_03_tschirnhaus():
    first = verify_tschirnhaus(load_orbit("sqrt-47")[1], *T47, G47)
    second = verify_tschirnhaus(P235_PRINTED, *T235, G235_PRINTED)
    disc_ok = discriminant(G47) == 2209
    eis = eisenstein_prime(G235_PRINTED) == 5
    ok = first and second and disc_ok and eis
    record(3, ok, f"first identity {first}; second printed identity {second}; "
                  f"disc 2209 {disc_ok}; Eisenstein at 5 {eis}")


def test_criterion_04_chebyshev_lucas():
    comp = all(cheb_monic(m * n) == cheb_monic(m).compose(cheb_monic(n))
               for m in range(1, 33) for n in range(1, 33) if m * n <= 32)
    frob = all((cheb_monic(p) - Poly.monomial(p)).mod(p) == Poly() for p in (2, 3, 5, 7, 11, 13))
    r5 = resolvent_root_poly(5) == Poly((0, -2, 0, 1))
    lucas = [lucas_number(0), lucas_number(1), lucas_number(7), 2 * lucas_number(-5),
             2 * lucas_number(15), 2 * lucas_number(35)] == [2, 1, 29, -22, 2728, 41266478]
    record(4, comp and frob and r5 and lucas,
           f"composition {comp}; mod p {frob}; r = x^3-2x {r5}; Lucas numbers {lucas}")


def test_criterion_05_pell():
    a = pell_sequence("T4_t2p16", 7)
    b = pell_sequence("T6_t2p4", 7)
    forms = all(a.satisfies_form(t) for t in a.terms) and all(b.satisfies_form(t) for t in b.terms)
    rec = pell_sequence("T4_unramified_b", 4)
    b_ok = rec.recurrence[0] == 15127 and rec.terms == [2 * lucas_number(20 * i - 5)
                                                        for i in range(4)]
    l_ok = [lucas_number(4 * i - 1) for i in range(3)] == [-1, 4, 29]
    record(5, forms and b_ok and l_ok,
           f"Pell forms on terms 0-6 {forms}; 15127 recurrence {b_ok}; L(4i-1) {l_ok}")


def test_criterion_06_theorem4_certificates():
    t0 = time.perf_counter()
    irreducible = passed = rule_ok = rule_total = 0
    failures = []
    for t in enumerate_admissible("T4", -500, 501):
        c = certify_family("T4", t, seed=SEED)
        if c.check("irreducible_main").status != "pass" or \
                c.check("irreducible_subfield").status != "pass":
            continue
        irreducible += 1
        if c.verdict == "pass":
            passed += 1
        else:
            failures.append(t)
        if (t - 1) % 25 == 0:
            rule_total += 1
            rule_ok += int(c.check("p_adic").data.get("u", "nan")) == -9 - 10 * ((t - 1) // 25)
    dt = time.perf_counter() - t0
    ok = passed == irreducible and rule_ok == rule_total and dt < 120
    record(6, ok, f"{passed}/{irreducible} irreducible instances pass; witness rule "
                  f"{rule_ok}/{rule_total}; {dt:.1f} s" + (f"; failing t {failures[:5]}" if failures else ""))


def test_criterion_07_elliptic():
    r = elliptic_parametrization_check()
    ok = r.identity and sorted(r.torsion_t) == [-22, 3]
    record(7, ok, f"identity {r.identity}; x = 2 gives t in {sorted(r.torsion_t)}")


def test_criterion_08_pgl_pair():
    rep = pgl_pair_checks()
    q = Poly((-1417, 23976, -95472, -3456, 6912))
    fam = get_family("T15")
    # independent of the interpolation: compare at 12 sample points
    pts = all(discriminant(fam.subfield.specialize(t)) == q(t) ** 2 and
              discriminant(fam.main.specialize(t)) == q(t) ** 2 for t in range(-6, 6))
    mod2 = rep["deg7_mod2_constant"] and rep["deg8_mod2_parity_split"]
    ok = rep["disc_identity"] and pts and mod2 and rep["Q_odd"] and rep["deg7_three_real"]
    record(8, ok, f"disc = Q^2 {rep['disc_identity']} (12-point check {pts}); mod 2 shapes {mod2}; "
                  f"Q odd {rep['Q_odd']}; degree 7 real roots {rep['deg7_three_real']}")


def test_criterion_09_galois_scans():
    t0 = time.perf_counter()
    p47 = load_orbit("sqrt-47")[1]
    d5 = galois_scan(p47, SCAN_BOUND, "D5", tau=TAU, seed=SEED)
    z5 = galois_scan(p47, SCAN_BOUND, "Z5", tau=TAU, seed=SEED)
    no14 = d5.observed((1, 4)) == 0
    f20 = galois_scan(specialize("T4", 1).main, SCAN_BOUND, "F20", tau=TAU, seed=SEED)
    pgl = galois_scan(get_family("T15").subfield.specialize(0), SCAN_BOUND, "PGL3_2",
                      tau=TAU, seed=SEED)
    dt = time.perf_counter() - t0
    ok = (d5.consistent and not d5.unexpected and not z5.consistent and no14
          and f20.consistent and f20.observed((1, 4)) > 0
          and pgl.consistent and pgl.observed((1, 2, 4)) > 0 and dt < 180)
    record(9, ok, f"D5 distance {d5.distance:.4f}, Z5 rejected {not z5.consistent}, no 1.4 {no14}; "
                  f"F20 distance {f20.distance:.4f}; PGL3_2 distance {pgl.distance:.4f}; {dt:.1f} s")


def test_criterion_10_admissibility():
    fixed = sorted(u.value for u in cheb_fixed_points_mod(3, 3))
    brute = roots_mod(cheb_monic(3) - Poly.x(), 27)
    adm = [j for j in range(-200, 201) if admissible_thm2(j, 5, 1).admissible]
    witnessed = 0
    for j in adm:
        f = cheb_monic(5) - Poly((j,))
        u, _ = newton_witness_lift(f, 5, valuation(discriminant(f), 5) + 1)
        witnessed += u is not None
    ok = fixed == brute and witnessed == len(adm) and adm
    record(10, ok, f"fixed points mod 27 {fixed} match brute force; "
                   f"{witnessed}/{len(adm)} admissible j have a 5-adic root")


def test_criterion_11_catalog():
    doc = load_fixture_document()
    checksum = fixture_checksum(doc["families"]) == doc["checksum"]
    families = all(enumerate_admissible(f.id, -60, 61) and
                   specialize(f.id, enumerate_admissible(f.id, -60, 61)[0]).admissible
                   for f in catalog("theorem"))
    lucas = True
    for fid in ("T5", "T7", "T8"):
        for _, t, inst, rule in lucas_specializations(fid, range(-3, 4)):
            s2, r = divmod(t * t + rule.pell_shift, 5)
            from math import isqrt
            lucas &= r == 0 and isqrt(s2) ** 2 == s2 and inst.admissible
    record(11, checksum and families and lucas,
           f"checksum {checksum}; all theorem families specialize and enumerate {families}; "
           f"Lucas rules for T5, T7, T8 {lucas}")


def test_criterion_12_determinism():
    cmd = [sys.executable, "-m", "unramforge.cli", "selftest", "--seed", "0"]
    env = {k: v for k, v in __import__("os").environ.items() if k != "FORGE_SEED"}
    a = subprocess.run(cmd, capture_output=True, env=env)
    b = subprocess.run(cmd, capture_output=True, env=env)
    ok = a.stdout == b.stdout and a.returncode == b.returncode == 0 and a.stdout
    record(12, ok, f"two selftest runs byte-identical ({len(a.stdout)} bytes, exit {a.returncode})")


def test_corrected_second_tschirnhaus_identity():
    # not a criterion: the computed quintic does map onto x^5-35x^2+50x+20
    from unramforge.selftest import G235

    assert verify_tschirnhaus(P235, *T235, G235)
    assert eisenstein_prime(G235) == 5
