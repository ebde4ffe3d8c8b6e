"""Dense univariate polynomials over Z and Q, and over Z[t].

Coefficients are stored constant term first. ``Poly`` holds ``int`` and
``Fraction`` coefficients (integer-valued fractions are normalized to ``int``),
so the same class serves as both IntPoly and RatPoly. ``BiPoly`` is a
polynomial in x whose coefficients are ``Poly`` objects in t.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import reduce
from typing import Any, Iterable, Sequence


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def parse_rational(s: str | int) -> int | Fraction:
    if isinstance(s, int):
        return s
    s = s.strip()
    if "/" in s:
        return _norm(Fraction(s))
    return int(s)


def format_rational(c: int | Fraction) -> str:
    c = _norm(c)
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    return str(c)


class Poly:
    """Immutable dense polynomial with exact coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_norm(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # -- construction -------------------------------------------------
    @classmethod
    def x(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def monomial(cls, degree: int, c=1) -> "Poly":
        return cls([0] * degree + [c])

    @classmethod
    def from_roots(cls, roots: Iterable) -> "Poly":
        out = cls((1,))
        for r in roots:
            out = out * cls((-r, 1))
        return out

    @classmethod
    def from_json(cls, data: Sequence[str | int]) -> "Poly":
        return cls(parse_rational(c) for c in data)

    def to_json(self) -> list[str]:
        return [format_rational(c) for c in self.coeffs]

    # -- basic properties ----------------------------------------------
    @property
    def degree(self) -> int:
        """Degree; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else 0

    def __getitem__(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __len__(self) -> int:
        return len(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly((other,)).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.coeffs)

    def is_monic(self) -> bool:
        return self.lc == 1

    def is_constant(self) -> bool:
        return self.degree <= 0

    # -- arithmetic ------------------------------------------------------
    @staticmethod
    def _coerce(other) -> "Poly":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly((other,))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Poly([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly(c * other for c in self.coeffs)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Poly":
        if e < 0:
            raise ValueError("negative power")
        result, base = Poly((1,)), self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __truediv__(self, c) -> "Poly":
        if isinstance(c, Poly):
            return self.exact_div(c)
        return Poly(Fraction(x) / c for x in self.coeffs)

    def divmod(self, g: "Poly") -> tuple["Poly", "Poly"]:
        """Division with remainder over Q."""
        g = self._coerce(g)
        if not g:
            raise ZeroDivisionError("division by the zero polynomial")
        r = list(self.coeffs)
        dg, lc = g.degree, g.lc
        if len(r) - 1 < dg:
            return Poly(), self
        q = [0] * (len(r) - dg)
        inv_int = lc in (1, -1)
        for k in range(len(r) - 1 - dg, -1, -1):
            c = r[k + dg]
            if c == 0:
                continue
            c = c * lc if inv_int else Fraction(c) / lc
            q[k] = c
            for j, gj in enumerate(g.coeffs):
                if gj:
                    r[k + j] -= c * gj
        return Poly(q), Poly(r[:dg])

    def __floordiv__(self, g) -> "Poly":
        return self.divmod(g)[0]

    def __mod__(self, g) -> "Poly":
        return self.divmod(g)[1]

    def exact_div(self, g: "Poly") -> "Poly":
        q, r = self.divmod(g)
        if r:
            raise ArithmeticError("polynomial division is not exact")
        return q

    def pseudo_divmod(self, g: "Poly") -> tuple["Poly", "Poly"]:
        """``lc(g)^(deg f - deg g + 1) * f = q*g + r`` over the coefficient ring."""
        if not g:
            raise ZeroDivisionError("division by the zero polynomial")
        df, dg = self.degree, g.degree
        if df < dg:
            return Poly(), self
        scale = g.lc ** (df - dg + 1)
        q, r = (self * scale).divmod(g)
        return q, r

    # -- evaluation and calculus ----------------------------------------
    def __call__(self, x: Any):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_mod(self, x: int, m: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % m
        return acc

    def compose(self, g: "Poly") -> "Poly":
        """``f(g(x))``."""
        acc = Poly()
        for c in reversed(self.coeffs):
            acc = acc * g + c
        return acc

    def derivative(self) -> "Poly":
        return Poly(i * c for i, c in enumerate(self.coeffs) if i)

    def shift(self, a) -> "Poly":
        """``f(x + a)``."""
        return self.compose(Poly((a, 1)))

    def reverse(self) -> "Poly":
        return Poly(reversed(self.coeffs))

    # -- content ----------------------------------------------------------
    def content(self) -> int | Fraction:
        """Positive rational content; ``primitive() * content() == self`` up to sign."""
        if not self.coeffs:
            return 0
        nums = [Fraction(c) for c in self.coeffs]
        den = reduce(lambda a, b: a * b // math.gcd(a, b), (c.denominator for c in nums), 1)
        g = reduce(math.gcd, (int(c * den) for c in nums), 0)
        return _norm(Fraction(g, den))

    def primitive(self) -> "Poly":
        """Integer polynomial with content 1 and positive leading coefficient."""
        if not self.coeffs:
            return self
        c = self.content()
        p = Poly(Fraction(x) / c for x in self.coeffs)
        return -p if p.lc < 0 else p

    def monic(self) -> "Poly":
        if not self.coeffs:
            raise ZeroDivisionError("zero polynomial has no monic form")
        lc = self.lc
        if lc == 1:
            return self
        return Poly(Fraction(c) / lc for c in self.coeffs)

    def max_norm(self) -> int | Fraction:
        return max((abs(c) for c in self.coeffs), default=0)

    def mod(self, m: int) -> "Poly":
        """Reduce integer coefficients into ``[0, m)``."""
        return Poly(c % m for c in self.coeffs)

    def mods(self, m: int) -> "Poly":
        """Reduce integer coefficients into the symmetric range around 0."""
        half = m // 2
        return Poly(((c + half) % m) - half for c in self.coeffs)

    # -- display ----------------------------------------------------------
    def format(self, var: str = "x") -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if i == 0:
                body = format_rational(a)
            else:
                mon = var if i == 1 else f"{var}^{i}"
                body = mon if a == 1 else f"{format_rational(a)}*{mon}"
            terms.append((sign, body))
        s = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            s += f" {sign} {body}"
        return s

    @classmethod
    def parse(cls, text: str, var: str = "x") -> "Poly":
        """Inverse of ``format`` for expanded sums such as ``x^5 - 10*x^3 + 3/2``.

        Accepts ``^`` or ``**`` for powers and an optional ``*``.
        """
        src = text.replace(" ", "").replace("**", "^")
        if not src:
            raise ValueError("empty polynomial")
        term = re.compile(r"([+-]?)(\d+(?:/\d+)?)?(\*?%s(?:\^(\d+))?)?" % re.escape(var))
        coeffs: dict[int, int | Fraction] = {}
        pos = 0
        while pos < len(src):
            m = term.match(src, pos)
            if not m or m.end() == pos or not (m.group(2) or m.group(3)):
                raise ValueError(f"cannot parse polynomial near {src[pos:]!r}")
            if m.group(3) and m.group(3).startswith("*") and not m.group(2):
                raise ValueError(f"dangling '*' in {text!r}")
            c = parse_rational(m.group(2)) if m.group(2) else 1
            if m.group(1) == "-":
                c = -c
            e = int(m.group(4)) if m.group(4) else (1 if m.group(3) else 0)
            coeffs[e] = coeffs.get(e, 0) + c
            pos = m.end()
            if pos < len(src) and src[pos] not in "+-":
                raise ValueError(f"cannot parse polynomial near {src[pos:]!r}")
        top = max(coeffs)
        return cls(coeffs.get(i, 0) for i in range(top + 1))

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"Poly({list(self.coeffs)!r})"


X = Poly.x()


# -- gcd and squarefree machinery over Q ---------------------------------------

def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Monic gcd over Q (zero if both inputs are zero)."""
    while g:
        f, g = g, f % g
    return f.monic() if f else f


def int_poly_gcd(f: Poly, g: Poly) -> Poly:
    """Primitive gcd over Z with positive leading coefficient."""
    h = poly_gcd(f, g)
    return h.primitive() if h else h


def squarefree_part(f: Poly) -> Poly:
    """``f / gcd(f, f')``, primitive."""
    g = poly_gcd(f, f.derivative())
    return f.exact_div(g).primitive()


def squarefree_decomposition(f: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm over Q; returns primitive factors with multiplicities."""
    if f.degree < 1:
        return []
    out = []
    df = f.derivative()
    a = poly_gcd(f, df)
    b = f.exact_div(a)
    c = df.exact_div(a)
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        a = poly_gcd(b, d)
        b = b.exact_div(a)
        c = d.exact_div(a)
        d = c - b.derivative()
        if a.degree > 0:
            out.append((a.primitive(), i))
        i += 1
    return out


def is_squarefree(f: Poly) -> bool:
    return poly_gcd(f, f.derivative()).degree == 0


# -- polynomials in t over x -----------------------------------------------------

class BiPoly:
    """Polynomial in x whose coefficients are integer polynomials in t."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Poly | Sequence]):
        cs = [c if isinstance(c, Poly) else Poly(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("BiPoly is immutable")

    @classmethod
    def from_json(cls, data: Sequence[Sequence[str]]) -> "BiPoly":
        return cls(Poly.from_json(row) for row in data)

    def to_json(self) -> list[list[str]]:
        return [c.to_json() for c in self.coeffs]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def t_degree(self) -> int:
        return max((c.degree for c in self.coeffs), default=-1)

    @property
    def lc(self) -> Poly:
        return self.coeffs[-1] if self.coeffs else Poly()

    def __eq__(self, other) -> bool:
        return isinstance(other, BiPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def specialize(self, t) -> Poly:
        return Poly(c(t) for c in self.coeffs)

    def mod(self, p: int) -> "BiPoly":
        return BiPoly(c.mod(p) for c in self.coeffs)

    def t_coefficient(self, k: int) -> Poly:
        """The x-polynomial multiplying ``t^k``."""
        return Poly(c[k] for c in self.coeffs)

    def substitute_t(self, g: Poly) -> "BiPoly":
        """Replace t by the polynomial ``g(t)``."""
        return BiPoly(c.compose(g) for c in self.coeffs)

    @classmethod
    def from_t_coefficients(cls, rows: Sequence[Poly]) -> "BiPoly":
        """Inverse of ``t_coefficient``: ``sum_k rows[k](x) * t^k``."""
        n = max((r.degree for r in rows), default=-1) + 1
        return cls(Poly(r[i] for r in rows) for i in range(n))

    def format(self, var: str = "x", tvar: str = "t") -> str:
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mon = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            cs = c.format(tvar)
            if c.degree > 0 and mon:
                parts.append(f"({cs})*{mon}")
            elif mon:
                parts.append(mon if c == 1 else ("-" + mon if c == -1 else f"{cs}*{mon}"))
            else:
                parts.append(cs)
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"BiPoly({[list(c.coeffs) for c in self.coeffs]!r})"
