import random
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from oracles import X, resultant_oracle, roots_mod, to_sympy
from unramforge.exactalg import (
    BiPoly,
    Poly,
    SearchExhausted,
    discriminant,
    eisenstein_prime,
    factor_mod_p,
    factor_over_Z,
    factorint,
    hensel_lift_root,
    interpolate,
    is_irreducible_Q,
    is_squarefree_mod_p,
    newton_converges,
    newton_witness_lift,
    newton_witness_search,
    p_maximal_order,
    reduce_mod,
    resultant,
    roots_mod_prime_power,
    squarefree_kernel,
    sturm_real_roots,
    valuation,
)

small_int_polys = st.lists(st.integers(-9, 9), min_size=2, max_size=6).map(Poly).filter(
    lambda f: f.degree >= 1)
monic_polys = st.lists(st.integers(-9, 9), min_size=1, max_size=5).map(lambda c: Poly(c + [1]))


def test_reduce_mod_examples():
    assert reduce_mod(Fraction(1, 2), 5) == 3
    assert reduce_mod(7, 5) == 2
    assert reduce_mod(Fraction(3, 4), 7) == 6
    with pytest.raises(ValueError):
        reduce_mod(Fraction(1, 5), 5)


def test_poly_parse_round_trip():
    f = Poly((443629, 5860, -2605, -10, 0, 1))
    assert Poly.parse(f.format()) == f
    assert Poly.parse("x^5 - 10*x^3 - 2605*x^2 + 5860*x + 443629") == f


@given(small_int_polys)
def test_poly_parse_inverts_format(f):
    assert Poly.parse(f.format()) == f


@settings(max_examples=60, deadline=None)
@given(small_int_polys, small_int_polys)
def test_resultant_matches_sylvester(f, g):
    assert resultant(f, g) == resultant_oracle(f, g)


@settings(max_examples=60, deadline=None)
@given(small_int_polys, small_int_polys)
def test_resultant_antisymmetry(f, g):
    sign = -1 if (f.degree * g.degree) % 2 else 1
    assert resultant(f, g) == sign * resultant(g, f)


@settings(max_examples=40, deadline=None)
@given(small_int_polys, small_int_polys, small_int_polys)
def test_resultant_multiplicative(f, g, h):
    assert resultant(f, g * h) == resultant(f, g) * resultant(f, h)


def test_rational_resultant_path():
    f = Poly((Fraction(1, 2), 0, 1))
    g = Poly((Fraction(-1, 3), 1))
    assert resultant(f, g) == resultant_oracle(f, g)


@settings(max_examples=60, deadline=None)
@given(small_int_polys)
def test_discriminant_matches_sympy(f):
    assert discriminant(f) == sp.discriminant(to_sympy(f))


@settings(max_examples=50, deadline=None)
@given(monic_polys, st.sampled_from([2, 3, 5, 7]))
def test_disc_vanishes_mod_p_iff_not_squarefree(f, p):
    if f.degree < 2:
        return
    assert (discriminant(f) % p == 0) == (not is_squarefree_mod_p(f, p))


def test_known_discriminants():
    assert discriminant(Poly((-1, -2, -1, 1, 1, 1))) == 2209
    assert discriminant(Poly((1, 0, 1))) == -4


@settings(max_examples=40, deadline=None)
@given(monic_polys, st.sampled_from([2, 3, 5, 7, 11]))
def test_factor_mod_p_product(f, p):
    prod = Poly((1,))
    for g, e in factor_mod_p(f, p):
        for _ in range(e):
            prod = prod * g
    assert (prod - f).mod(p) == Poly()


@settings(max_examples=30, deadline=None)
@given(small_int_polys, small_int_polys)
def test_factor_over_Z_matches_sympy(f, g):
    h = f * g
    content, facs = factor_over_Z(h)
    ours = sorted((tuple(q.primitive().coeffs), e) for q, e in facs if q.degree > 0)
    _, theirs = sp.factor_list(to_sympy(h))
    ref = []
    for q, e in theirs:
        c = [int(x) for x in reversed(q.all_coeffs())]
        if c[-1] < 0:
            c = [-x for x in c]
        ref.append((tuple(c), e))
    ours = [(c if c[-1] > 0 else tuple(-x for x in c), e) for c, e in ours]
    assert sorted(ours) == sorted(ref)


def test_irreducibility_examples():
    assert is_irreducible_Q(Poly((-1, -2, -1, 1, 1, 1))).irreducible
    assert not is_irreducible_Q(Poly((-1, 0, 0, 0, 1))).irreducible
    assert eisenstein_prime(Poly((20, 50, 0, -35, 0, 1))) == 5
    assert eisenstein_prime(Poly((1, 1, 1))) is None


def test_factorint_and_kernel():
    n = 2 ** 5 * 3 * 101 * 10007
    assert factorint(n) == {2: 5, 3: 1, 101: 1, 10007: 1}
    assert squarefree_kernel(-7 * 9 * 4) == -7
    assert valuation(Fraction(50, 3), 5) == 2
    assert valuation(0, 3) == float("inf")


@settings(max_examples=40, deadline=None)
@given(monic_polys)
def test_sturm_counts_real_roots(f):
    if f.degree < 1:
        return
    sq = to_sympy(f)
    assert sturm_real_roots(f) == len(set(sp.real_roots(sq)))


@pytest.mark.parametrize("p,k", [(3, 3), (5, 2), (7, 2), (2, 5)])
def test_roots_mod_prime_power_brute(p, k):
    f = Poly((-2, 0, 0, 1)) * Poly((1, 1)) + Poly((p,))
    assert sorted(roots_mod_prime_power(f, p, k)) == roots_mod(f, p ** k)


def test_hensel_lift_root_compatible():
    f = Poly((-2, 0, 1))  # sqrt 2 in Z_7
    for k in range(1, 8):
        a = hensel_lift_root(f, 7, 3, k)
        b = hensel_lift_root(f, 7, 3, k + 2)
        assert b.value % 7 ** k == a.value
        assert f.eval_mod(b.value, 7 ** (k + 2)) == 0


def test_newton_converges_criterion():
    f = Poly((-2, 0, 1))
    assert newton_converges(f, 7, 3).converges
    assert not newton_converges(f, 5, 2).converges


def test_witness_lift_finds_root_where_one_exists():
    # x^2 - 17 has a 2-adic root; needs u mod 8 information
    f = Poly((-17, 0, 1))
    u, _ = newton_witness_lift(f, 2, valuation(discriminant(f), 2) + 1)
    assert u is not None and newton_converges(f, 2, u).converges


def test_witness_lift_proves_absence():
    # 5 is not a square in Z_3 and x^2 - 3 is ramified; complete search says no
    for f in (Poly((-5, 0, 1)), Poly((-3, 0, 1))):
        u, _ = newton_witness_lift(f, 3, valuation(discriminant(f), 3) + 1)
        assert u is None
        assert newton_witness_search(f, 3, 2) is None


def test_witness_lift_budget():
    f = Poly((0, 0, 0, 0, 0, 0, 0, 1)) - Poly((2 ** 20,))
    with pytest.raises(SearchExhausted):
        newton_witness_lift(f, 2, 40, node_budget=50)


@settings(max_examples=25, deadline=None)
@given(monic_polys, st.sampled_from([2, 3, 5]))
def test_witness_lift_agrees_with_brute(f, p):
    if f.degree < 2 or discriminant(f) == 0:
        return
    depth = valuation(discriminant(f), p) + 1
    u, _ = newton_witness_lift(f, p, depth)
    found = u is not None
    brute = any(newton_converges(f, p, r).converges for r in range(p ** min(depth, 6)))
    if depth <= 6:
        assert found == brute
    elif brute:
        assert found


# Round 2 local orders.  Oracle: v_p(d_K) is a field invariant, so it must not
# change under a Tschirnhaus transform theta -> h(theta).


def _char_poly(f, h):
    """Characteristic polynomial of h(theta) via resultant in sympy."""
    y = sp.Symbol("y")
    r = sp.resultant(to_sympy(f).as_expr(), y - to_sympy(h).as_expr(), X)
    c = sp.Poly(r, y).all_coeffs()
    return Poly([int(v) for v in reversed(c)]).monic()


@pytest.mark.parametrize("f,p,vd,vi", [
    (Poly((-2, 0, 0, 1)), 2, 2, 0),
    (Poly((-2, 0, 0, 1)), 3, 3, 0),
    (Poly((3, 0, 1)), 2, 0, 1),
    (Poly((-5, 0, 1)), 2, 0, 1),
    (Poly((-8, 0, 1)), 2, 3, 1),
    (Poly((-1, -2, -1, 1, 1, 1)), 47, 2, 0),
])
def test_round2_known_fields(f, p, vd, vi):
    o = p_maximal_order(f, p)
    assert (o.field_disc_valuation, o.index_valuation) == (vd, vi)


def test_round2_common_index_divisor():
    # Dedekind's cubic: 2 splits completely, so no generator gives the ring of integers
    f = Poly((8, -2, 1, 1))  # x^3 + x^2 - 2x + 8
    o = p_maximal_order(f, 2)
    assert o.index_valuation == 1 and o.field_disc_valuation == 0


@settings(max_examples=15, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=3, max_size=3), st.sampled_from([2, 3, 5]),
       st.integers(0, 10 ** 6))
def test_round2_tschirnhaus_invariance(coeffs, p, seed):
    f = Poly(coeffs + [1])
    if discriminant(f) == 0 or not is_irreducible_Q(f).irreducible:
        return
    rng = random.Random(seed)
    h = Poly([rng.randint(-3, 3) for _ in range(3)])
    g = _char_poly(f, h)
    if discriminant(g) == 0:
        return
    assert p_maximal_order(f, p).field_disc_valuation == \
        p_maximal_order(g, p).field_disc_valuation


def test_interpolate_and_bipoly():
    pts = [(i, i ** 3 - 2 * i + 5) for i in range(5)]
    assert interpolate(pts) == Poly((5, -2, 0, 1))
    f = BiPoly([Poly((1,)), Poly((0, -1)), Poly((1,))])
    assert f.specialize(3) == Poly((1, -3, 1))
