import json
from fractions import Fraction
from importlib import resources

import pytest

from oracles import X, to_sympy
from unramforge.cyclotomic import QuadraticElt
from unramforge.exactalg import Poly, discriminant
from unramforge.resolvent import (
    OrbitSpec,
    ResolventConfig,
    construct_Pn,
    cyclic_order,
    dual_orbit,
    map_order,
    maps_are_inverse,
    orbit_from_json,
    reduce_mod,
    verify_permutation_polynomial,
    verify_tschirnhaus,
)
from unramforge.selftest import (
    G47,
    G235,
    G235_PRINTED,
    P47,
    P235,
    P235_PRINTED,
    QUARTIC,
    SIGMA1,
    SIGMA2,
    T47,
    T235,
)


def load(name):
    ref = resources.files("unramforge") / "data" / "orbits" / f"{name}.json"
    return orbit_from_json(json.loads(ref.read_text()))


def test_reduce_mod():
    assert reduce_mod(Fraction(1, 2), 5) == 3
    assert reduce_mod(Fraction(3, 4), 7) == 6


def test_exponent_table_n5():
    # E[i][j] = <j/i>; each row is a permutation of I_5
    tab = ResolventConfig(5).table
    assert tab[2][1] == 3 and tab[3][1] == 2 and tab[4][4] == 1
    assert all(sorted(row.values()) == [1, 2, 3, 4] for row in tab.values())


def test_cyclic_order():
    assert cyclic_order(5, 2) == [1, 2, 4, 3]
    with pytest.raises(ValueError):
        cyclic_order(5, 4)


def test_trivial_orbit():
    orbit = OrbitSpec(5, {i: 1 for i in range(1, 5)}, "trivial")
    res = construct_Pn(ResolventConfig(5), orbit)
    assert res.poly == Poly((-4, 1)) * Poly((1, 1)) ** 4


@pytest.mark.parametrize("t", [3, 7, 18])
def test_constant_orbit(t):
    # [DERIVED] b_i = t: every exponent row sums to 10, so e_j = t^2 and the
    # roots are 4t^2 and -t^2 (four times)
    orbit = OrbitSpec(5, {i: t for i in range(1, 5)})
    res = construct_Pn(ResolventConfig(5), orbit)
    assert res.poly == Poly((-4 * t * t, 1)) * Poly((t * t, 1)) ** 4


def test_sqrt47_resolvent_with_search():
    orbit, target = load("sqrt-47")
    assert target == P47
    res = construct_Pn(ResolventConfig(5), orbit, search=True, target=target)
    assert res.poly == P47
    assert res.tried <= 625


def test_precision_idempotent():
    orbit, _ = load("sqrt-47")
    a = construct_Pn(ResolventConfig(5), orbit, bits=256)
    b = construct_Pn(ResolventConfig(5), orbit, bits=1024)
    assert a.poly == b.poly


def test_sqrt235_resolvent_computed():
    orbit, printed = load("sqrt-235")
    assert printed == P235_PRINTED
    res = construct_Pn(ResolventConfig(5), orbit)
    assert res.poly == P235
    assert res.poly != printed


def test_reversed_sqrt47_gives_same_as_sqrt235():
    orbit, _ = load("sqrt-47")
    res = construct_Pn(ResolventConfig(5), orbit.reversed_cycle(2))
    assert res.poly == P235


def test_quartic_root_orbit():
    orbit, target = load("quartic-roots")
    assert construct_Pn(ResolventConfig(5), orbit).poly == target == P47


def test_resolvent_discriminants_are_squares():
    # D5 lies in A5, so both quintics must have square discriminant
    from math import isqrt

    for f in (P47, P235):
        d = discriminant(f)
        assert d > 0 and isqrt(d) ** 2 == d


def test_dual_orbit_sqrt47():
    a = {1: QuadraticElt.make(-13, 1, -47), 2: QuadraticElt.make(-21, -1, -47, 2),
         3: QuadraticElt.make(-21, 1, -47, 2), 4: QuadraticElt.make(-13, -1, -47)}
    d = dual_orbit(5, a)
    assert d.poly == Poly((1, 47, 519, -47, 1))
    assert not d.degenerate


def test_dual_orbit_sqrt235_same_quartic():
    a = {1: QuadraticElt.make(-21, 1, -235, 2), 2: -13, 3: -13,
         4: QuadraticElt.make(-21, -1, -235, 2)}
    assert dual_orbit(5, a).poly == QUARTIC


def test_dual_orbit_constant_is_degenerate():
    d = dual_orbit(5, {i: 3 for i in range(1, 5)})
    assert d.degenerate
    assert d.poly == Poly((3, 1)) ** 4


def test_dual_orbit_rejects_non_orbit():
    a = {1: QuadraticElt.make(0, 1, -47), 2: 0, 3: 0, 4: 0}
    with pytest.raises(ValueError):
        dual_orbit(5, a)


def test_permutation_generators():
    for sigma in (SIGMA1, SIGMA2):
        chk = verify_permutation_polynomial(QUARTIC, *sigma)
        assert chk.valid and chk.order == 4 and chk.cycle_type == (4,)
    assert maps_are_inverse(QUARTIC, SIGMA1, SIGMA2)


def test_permutation_rejects_non_map():
    chk = verify_permutation_polynomial(QUARTIC, Poly((1, 1)), 1)
    assert not chk.valid
    assert map_order(QUARTIC, Poly((0, 1)), 1) == 1


def test_tschirnhaus_sqrt47():
    assert verify_tschirnhaus(P47, *T47, G47)
    assert discriminant(G47) == 2209


def test_tschirnhaus_sqrt235_corrected():
    assert verify_tschirnhaus(P235, *T235, G235)


def test_tschirnhaus_sqrt235_printed_fails():
    # printed target is totally real, the source quintic is not
    from unramforge.exactalg import sturm_real_roots

    assert not verify_tschirnhaus(P235_PRINTED, *T235, G235_PRINTED)
    assert not verify_tschirnhaus(P235, *T235, G235_PRINTED)
    assert sturm_real_roots(G235_PRINTED) == 5
    assert sturm_real_roots(P235) == 1


def test_tschirnhaus_against_sympy_resultant():
    import sympy as sp

    y = sp.Symbol("y")
    num, den = T47
    r = sp.resultant(to_sympy(P47).as_expr(), den * y - to_sympy(num).as_expr(), X)
    g = sp.Poly(r, y).monic()
    assert [int(c) for c in reversed(g.all_coeffs())] == list(G47.coeffs)
