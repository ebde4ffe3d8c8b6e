"""Resultants and discriminants.

Conventions: ``res(f, g) = lc(f)^deg(g) * prod g(a)`` over the roots ``a`` of f,
and ``disc(f) = (-1)^(n(n-1)/2) * res(f, f') / lc(f)``.
"""

from __future__ import annotations

from fractions import Fraction

from .poly import BiPoly, Poly


def resultant(f: Poly, g: Poly) -> int | Fraction:
    """Resultant; subresultant PRS for integer inputs, Euclid over Q otherwise."""
    if not f or not g:
        raise ValueError("resultant of a zero polynomial")
    if f.is_integral() and g.is_integral():
        return _subresultant([int(c) for c in f.coeffs], [int(c) for c in g.coeffs])
    return _resultant_q(f, g)


def _content(a: list[int]) -> int:
    from math import gcd
    c = 0
    for x in a:
        c = gcd(c, x)
    return c


def _prem(a: list[int], b: list[int]) -> list[int]:
    """lc(b)^(deg a - deg b + 1) * a mod b, coefficient lists constant first."""
    a = a[:]
    db, lb = len(b) - 1, b[-1]
    for _ in range(len(a) - len(b) + 1):
        top = a[-1]
        a = [lb * x for x in a]
        shift = len(a) - 1 - db
        for i, c in enumerate(b):
            a[i + shift] -= top * c
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a


def _subresultant(a: list[int], b: list[int]) -> int:
    # Collins/Brown subresultant algorithm with exact integer divisions.
    ca, cb = _content(a), _content(b)
    a = [x // ca for x in a]
    b = [x // cb for x in b]
    da, db = len(a) - 1, len(b) - 1
    t = ca ** db * cb ** da
    s = 1
    if da < db:
        a, b = b, a
        if da % 2 and db % 2:
            s = -1
    g = h = 1
    while True:
        da, db = len(a) - 1, len(b) - 1
        if db == 0:
            if da == 0:
                return s * t
            # h <- h^(1 - da) * lc(b)^da
            num = b[-1] ** da
            hh = num * h if da == 0 else num // h ** (da - 1)
            return s * t * hh
        delta = da - db
        if da % 2 and db % 2:
            s = -s
        r = _prem(a, b)
        if not r:
            return 0
        div = g * h ** delta
        a, b = b, [x // div for x in r]
        g = a[-1]
        h = g ** delta if delta == 1 else (g ** delta // h ** (delta - 1) if delta else h)


def _resultant_q(f: Poly, g: Poly) -> int | Fraction:
    acc: int | Fraction = 1
    while True:
        m, n = f.degree, g.degree
        if n == 0:
            return _as_int(acc * Fraction(g.lc) ** m)
        if m == 0:
            return _as_int(acc * Fraction(f.lc) ** n)
        if m < n:
            # res(f, g) = (-1)^(mn) res(g, f)
            if (m * n) % 2:
                acc = -acc
            f, g = g, f
            continue
        # res(g, f) = lc(g)^(m - deg r) res(g, r) with r = f mod g,
        # and res(f, g) = (-1)^(mn) res(g, f)
        r = f % g
        if not r:
            return 0
        if (m * n) % 2:
            acc = -acc
        acc = acc * Fraction(g.lc) ** (m - r.degree)
        f, g = g, r


def _as_int(v):
    v = Fraction(v)
    return v.numerator if v.denominator == 1 else v


def discriminant(f: Poly) -> int | Fraction:
    n = f.degree
    if n < 1:
        raise ValueError("discriminant needs degree >= 1")
    r = resultant(f, f.derivative())
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return _as_int(Fraction(sign * r) / f.lc)


def interpolate(points: list[tuple[int, int | Fraction]]) -> Poly:
    """Newton divided-difference interpolation over Q."""
    xs = [Fraction(x) for x, _ in points]
    table = [Fraction(y) for _, y in points]
    n = len(points)
    coef = [table[0]]
    for level in range(1, n):
        table = [
            (table[i + 1] - table[i]) / (xs[i + level] - xs[i]) for i in range(n - level)
        ]
        coef.append(table[0])
    result = Poly()
    basis = Poly((1,))
    for k, c in enumerate(coef):
        result = result + basis * c
        basis = basis * Poly((-xs[k], 1))
    return result


class InterpolationMismatch(ArithmeticError):
    pass


def disc_degree_bound(f: BiPoly) -> int:
    # disc is homogeneous of degree 2n-2 in the coefficients
    return (2 * f.degree - 2) * max(f.t_degree, 0)


def disc_in_t(f: BiPoly, bound: int | None = None, extra_points: int = 3,
              max_retries: int = 4) -> Poly:
    """Discriminant of ``f`` as a polynomial in t, by evaluation and interpolation.

    ``f`` must have a constant nonzero leading x-coefficient so specialization
    commutes with the discriminant. ``extra_points`` additional evaluations
    check the interpolant; on mismatch the bound is doubled.
    """
    if f.lc.degree != 0:
        raise ValueError("disc_in_t requires a constant leading coefficient in x")
    if f.degree < 1:
        raise ValueError("degree in x must be at least 1")
    if bound is None:
        bound = disc_degree_bound(f)
    for _ in range(max_retries):
        npts = bound + 1
        ts = _centered(npts + extra_points)
        vals = [(t, discriminant(f.specialize(t))) for t in ts]
        interp = interpolate(vals[:npts])
        if all(interp(t) == v for t, v in vals[npts:]):
            if not interp.is_integral():
                raise InterpolationMismatch("interpolated discriminant is not integral")
            return interp
        bound *= 2
    raise InterpolationMismatch(f"interpolation did not stabilise (bound {bound})")


def _centered(count: int) -> list[int]:
    out, k = [0], 1
    while len(out) < count:
        out.append(k)
        if len(out) < count:
            out.append(-k)
        k += 1
    return out
