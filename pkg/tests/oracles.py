"""Independent oracles used by the tests.

Kept deliberately naive: Sylvester determinants, brute-force residue scans and
sympy cross-checks. None of this shares code with the package.
"""

from fractions import Fraction
from itertools import permutations

import sympy as sp

X = sp.Symbol("x")


def to_sympy(f):
    return sp.Poly(list(reversed([sp.Rational(c.numerator, c.denominator)
                                  if isinstance(c, Fraction) else int(c)
                                  for c in f.coeffs])) or [0], X)


def sylvester(f, g):
    """Sylvester matrix rows for coefficient lists given low degree first."""
    a = list(reversed(f))
    b = list(reversed(g))
    m, n = len(a) - 1, len(b) - 1
    size = m + n
    rows = []
    for i in range(n):
        rows.append([0] * i + a + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + b + [0] * (size - n - 1 - i))
    return rows


def bareiss_det(rows):
    """Determinant via Fraction elimination (exact, no pivot cleverness)."""
    a = [[Fraction(x) for x in r] for r in rows]
    n = len(a)
    if n == 0:
        return Fraction(1)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            if a[r][c]:
                q = a[r][c] / a[c][c]
                a[r] = [x - q * y for x, y in zip(a[r], a[c])]
    return det


def resultant_oracle(f, g):
    fc = [Fraction(c) for c in f.coeffs]
    gc = [Fraction(c) for c in g.coeffs]
    return bareiss_det(sylvester(fc, gc))


def roots_mod(f, m):
    return [r for r in range(m) if f.eval_mod(r, m) == 0]


def cycle_type(perm):
    seen = set()
    out = []
    for i in range(len(perm)):
        if i not in seen:
            k, j = 0, i
            while j not in seen:
                seen.add(j)
                j = perm[j]
                k += 1
            out.append(k)
    return tuple(sorted(out))


def group_closure(gens):
    """All elements generated by permutations given as tuples."""
    ident = tuple(range(len(gens[0])))
    elems = {ident}
    frontier = [ident]
    while frontier:
        new = []
        for e in frontier:
            for g in gens:
                h = tuple(g[e[i]] for i in range(len(e)))
                if h not in elems:
                    elems.add(h)
                    new.append(h)
        frontier = new
    return elems


def brute_cycle_types(n):
    return {cycle_type(p) for p in permutations(range(n))}
