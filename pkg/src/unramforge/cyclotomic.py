"""Arithmetic in Q(zeta_n) and certified complex embeddings.

Elements of Q(zeta_n) are stored in the power basis 1, zeta, ..., zeta^(phi(n)-1)
modulo the n-th cyclotomic polynomial. ``QuadCyclo`` adjoins a square root
sqrt(d) formally, giving the algebra Q(zeta_n)[s]/(s^2 - d) in which dual
orbits are computed exactly. ``ComplexApprox`` carries a rigorous radius
through every arithmetic operation.
"""

from __future__ import annotations

import math
from itertools import islice, product
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from mpmath.ctx_mp import MPContext

from .exactalg.poly import Poly, format_rational, parse_rational

DEFAULT_BITS = 256


# -- cyclotomic polynomials ----------------------------------------------------

@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> Poly:
    """Phi_n by exact division of x^n - 1 by Phi_d for the proper divisors d."""
    if n < 1:
        raise ValueError("n must be positive")
    f = Poly.monomial(n) - 1
    for d in range(1, n):
        if n % d == 0:
            f = f.exact_div(cyclotomic_poly(d))
    return f


def units(n: int) -> list[int]:
    """I_n: the residues in [0, n) prime to n, ascending."""
    if n == 1:
        return [0]
    return [i for i in range(1, n) if math.gcd(i, n) == 1]


def euler_phi(n: int) -> int:
    return len(units(n))


# -- certified complex approximations --------------------------------------------

_CONTEXTS: dict[int, MPContext] = {}


def _ctx(bits: int) -> MPContext:
    ctx = _CONTEXTS.get(bits)
    if ctx is None:
        ctx = MPContext()
        ctx.prec = bits + 16
        _CONTEXTS[bits] = ctx
    return ctx


class PrecisionExhausted(ArithmeticError):
    """The error radius grew too large for the requested conclusion."""


@dataclass(frozen=True)
class ComplexApprox:
    """A complex number known to lie within ``err`` of ``value``."""

    value: object  # mpc in the context for ``bits``
    err: object    # mpf upper bound on |true - value|
    bits: int

    @property
    def ctx(self) -> MPContext:
        return _ctx(self.bits)

    @classmethod
    def exact(cls, z, bits: int) -> "ComplexApprox":
        """Approximate an exact rational (or a Python complex with rational parts)."""
        ctx = _ctx(bits)
        if isinstance(z, Fraction):
            v = ctx.mpc(ctx.mpf(z.numerator) / z.denominator)
        else:
            v = ctx.mpc(z)
        return cls(v, cls._ulp(ctx, v, bits), bits)

    @classmethod
    def root_of_unity(cls, n: int, k: int, bits: int) -> "ComplexApprox":
        ctx = _ctx(bits)
        k %= n
        if k == 0:
            return cls(ctx.mpc(1), ctx.mpf(0), bits)
        v = ctx.expjpi(ctx.mpf(2 * k) / n)
        return cls(v, ctx.ldexp(ctx.mpf(1), -bits + 2), bits)

    @staticmethod
    def _ulp(ctx, v, bits):
        return abs(v) * ctx.ldexp(ctx.mpf(1), -bits + 1) + ctx.ldexp(ctx.mpf(1), -2 * bits)

    def _wrap(self, other) -> "ComplexApprox":
        if isinstance(other, ComplexApprox):
            return other
        if isinstance(other, (int, Fraction)):
            return ComplexApprox.exact(Fraction(other), self.bits)
        raise TypeError(type(other))

    def __add__(self, other):
        o = self._wrap(other)
        v = self.value + o.value
        return ComplexApprox(v, self.err + o.err + self._ulp(self.ctx, v, self.bits), self.bits)

    __radd__ = __add__

    def __neg__(self):
        return ComplexApprox(-self.value, self.err, self.bits)

    def __sub__(self, other):
        return self + (-self._wrap(other))

    def __rsub__(self, other):
        return self._wrap(other) + (-self)

    def __mul__(self, other):
        o = self._wrap(other)
        v = self.value * o.value
        e = (abs(self.value) * o.err + abs(o.value) * self.err + self.err * o.err
             + self._ulp(self.ctx, v, self.bits))
        return ComplexApprox(v, e, self.bits)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not supported")
        result = ComplexApprox(self.ctx.mpc(1), self.ctx.mpf(0), self.bits)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def nth_root(self, n: int, branch: int = 0) -> "ComplexApprox":
        """The principal n-th root times zeta_n^branch."""
        ctx = self.ctx
        lower = abs(self.value) - self.err
        if lower <= 2 * self.err:
            raise PrecisionExhausted("radicand not separated from zero")
        c = ctx.root(self.value, n)
        # |(1+w)^(1/n) - 1| <= 2|w|/n for |w| <= 1/2
        e = abs(c) * 2 * self.err / (n * lower) + self._ulp(ctx, c, self.bits) * 4
        root = ComplexApprox(c, e, self.bits)
        if branch % n:
            root = root * ComplexApprox.root_of_unity(n, branch, self.bits)
        return root

    def nearest_integer(self) -> int | None:
        """The unique Gaussian-real integer within the error disc, if certified."""
        ctx = self.ctx
        if self.err >= ctx.mpf(1) / 4:
            return None
        re, im = self.value.real, self.value.imag
        n = int(ctx.nint(re))
        if abs(re - n) <= self.err and abs(im) <= self.err:
            return n
        return None

    def contains_zero(self) -> bool:
        return abs(self.value) <= self.err

    def as_complex(self) -> complex:
        return complex(self.value)

    def __repr__(self) -> str:
        ctx = self.ctx
        return f"ComplexApprox({ctx.nstr(self.value, 15)} ± {ctx.nstr(self.err, 3)})"


def evaluate_poly(f: Poly, z: ComplexApprox) -> ComplexApprox:
    acc = ComplexApprox.exact(Fraction(0), z.bits)
    for c in reversed(f.coeffs):
        acc = acc * z + Fraction(c)
    return acc


def expand_roots(roots: Sequence[ComplexApprox]) -> list[ComplexApprox]:
    """Coefficients (constant first) of prod (x - r) with propagated error."""
    bits = roots[0].bits
    coeffs = [ComplexApprox.exact(Fraction(1), bits)]
    for r in roots:
        nxt = [None] * (len(coeffs) + 1)
        nxt[len(coeffs)] = coeffs[-1]
        for k in range(len(coeffs) - 1, 0, -1):
            nxt[k] = coeffs[k - 1] - r * coeffs[k]
        nxt[0] = -(r * coeffs[0])
        coeffs = nxt
    return coeffs


# -- Q(zeta_n) -------------------------------------------------------------------

class CycloElt:
    """Element of Q(zeta_n) in the power basis modulo Phi_n."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs: Sequence = ()):
        phi = cyclotomic_poly(n)
        p = Poly(coeffs)
        if p.degree >= phi.degree:
            p = p % phi
        cs = list(p.coeffs) + [0] * (phi.degree - len(p.coeffs))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("CycloElt is immutable")

    @classmethod
    def zeta(cls, n: int, k: int = 1) -> "CycloElt":
        return cls(n, Poly.monomial(k % n).coeffs)

    @classmethod
    def scalar(cls, n: int, c) -> "CycloElt":
        return cls(n, (c,))

    def poly(self) -> Poly:
        return Poly(self.coeffs)

    def _same(self, other) -> "CycloElt":
        if isinstance(other, CycloElt):
            if other.n != self.n:
                raise ValueError("elements of different cyclotomic fields")
            return other
        if isinstance(other, (int, Fraction)):
            return CycloElt.scalar(self.n, other)
        return NotImplemented

    def __eq__(self, other) -> bool:
        o = self._same(other)
        if o is NotImplemented:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self) -> int:
        return hash((self.n, self.coeffs))

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def __add__(self, other):
        o = self._same(other)
        if o is NotImplemented:
            return o
        return CycloElt(self.n, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycloElt(self.n, [-a for a in self.coeffs])

    def __sub__(self, other):
        o = self._same(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycloElt(self.n, [a * other for a in self.coeffs])
        o = self._same(other)
        if o is NotImplemented:
            return o
        return CycloElt(self.n, ((self.poly() * o.poly()) % cyclotomic_poly(self.n)).coeffs)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = CycloElt.scalar(self.n, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def inverse(self) -> "CycloElt":
        """Inverse via the extended Euclidean algorithm against Phi_n."""
        if not self:
            raise ZeroDivisionError("inverse of zero in Q(zeta_n)")
        r0, r1 = cyclotomic_poly(self.n), self.poly()
        s0, s1 = Poly(), Poly((1,))
        while r1.degree > 0:
            q, r = r0.divmod(r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
        inv = CycloElt(self.n, (s1 * Fraction(1) / r1.lc).coeffs)
        if inv * self != 1:  # pragma: no cover - guaranteed by the algorithm
            raise ArithmeticError("inverse verification failed")
        return inv

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * Fraction(1, 1) * (Fraction(1) / other)
        return self * self._same(other).inverse()

    def galois(self, k: int) -> "CycloElt":
        """sigma_k: zeta -> zeta^k, for k prime to n."""
        if math.gcd(k, self.n) != 1:
            raise ValueError(f"{k} is not prime to {self.n}")
        out = [0] * self.n
        for i, c in enumerate(self.coeffs):
            out[i * k % self.n] += c
        return CycloElt(self.n, out)

    def embed(self, bits: int = DEFAULT_BITS) -> ComplexApprox:
        """Value at zeta = exp(2 pi i / n), with a certified radius."""
        acc = ComplexApprox.exact(Fraction(0), bits)
        for i, c in enumerate(self.coeffs):
            if c:
                acc = acc + ComplexApprox.root_of_unity(self.n, i, bits) * Fraction(c)
        return acc

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational(self) -> int | Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return self.coeffs[0]

    def to_json(self) -> dict:
        return {"n": self.n, "coefficients": [format_rational(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: Mapping) -> "CycloElt":
        return cls(int(data["n"]), [parse_rational(c) for c in data["coefficients"]])

    def __repr__(self) -> str:
        return f"CycloElt({self.n}, {self.poly().format('z')})"


@dataclass(frozen=True)
class QuadraticElt:
    """x + y*sqrt(d) with rational x, y; sqrt(d) is i*sqrt(|d|) when d < 0."""

    x: Fraction
    y: Fraction
    d: int

    @classmethod
    def make(cls, x, y, d: int, den=1) -> "QuadraticElt":
        return cls(Fraction(x) / den, Fraction(y) / den, d)

    def conjugate(self) -> "QuadraticElt":
        return QuadraticElt(self.x, -self.y, self.d)

    def embed(self, bits: int = DEFAULT_BITS) -> ComplexApprox:
        ctx = _ctx(bits)
        root = ctx.sqrt(ctx.mpc(self.d))
        r = ComplexApprox(root, ComplexApprox._ulp(ctx, root, bits) * 2, bits)
        return ComplexApprox.exact(self.x, bits) + r * self.y

    def to_json(self) -> list[str]:
        return [format_rational(self.x), format_rational(self.y), str(self.d)]

    @classmethod
    def from_json(cls, data: Sequence) -> "QuadraticElt":
        x, y, d = data[:3]
        den = parse_rational(data[3]) if len(data) > 3 else 1
        return cls.make(parse_rational(x), parse_rational(y), int(d), den)


class QuadCyclo:
    """re + im*s in Q(zeta_n)[s]/(s^2 - d)."""

    __slots__ = ("re", "im", "d")

    def __init__(self, re: CycloElt, im: CycloElt, d: int):
        object.__setattr__(self, "re", re)
        object.__setattr__(self, "im", im)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("QuadCyclo is immutable")

    @classmethod
    def from_quadratic(cls, q: QuadraticElt, n: int) -> "QuadCyclo":
        return cls(CycloElt.scalar(n, q.x), CycloElt.scalar(n, q.y), q.d)

    @property
    def n(self) -> int:
        return self.re.n

    def _same(self, other) -> "QuadCyclo":
        if isinstance(other, QuadCyclo):
            if other.d != self.d:
                raise ValueError("different quadratic radicands")
            return other
        if isinstance(other, (int, Fraction)):
            other = CycloElt.scalar(self.n, other)
        if isinstance(other, CycloElt):
            return QuadCyclo(other, CycloElt.scalar(self.n, 0), self.d)
        return NotImplemented

    def __eq__(self, other) -> bool:
        o = self._same(other)
        if o is NotImplemented:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self) -> int:
        return hash((self.re, self.im, self.d))

    def __add__(self, other):
        o = self._same(other)
        if o is NotImplemented:
            return o
        return QuadCyclo(self.re + o.re, self.im + o.im, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadCyclo(-self.re, -self.im, self.d)

    def __sub__(self, other):
        o = self._same(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __mul__(self, other):
        o = self._same(other)
        if o is NotImplemented:
            return o
        return QuadCyclo(self.re * o.re + self.im * o.im * self.d,
                         self.re * o.im + self.im * o.re, self.d)

    __rmul__ = __mul__

    def is_rational(self) -> bool:
        return self.re.is_rational() and not self.im

    def embed(self, bits: int = DEFAULT_BITS) -> ComplexApprox:
        s = QuadraticElt(Fraction(0), Fraction(1), self.d).embed(bits)
        return self.re.embed(bits) + self.im.embed(bits) * s

    def __repr__(self) -> str:
        return f"QuadCyclo({self.re!r} + ({self.im!r})*sqrt({self.d}))"


# -- normal bases -----------------------------------------------------------------

def _det(rows: list[list[Fraction]]) -> Fraction:
    m = [[Fraction(c) for c in r] for r in rows]
    n = len(m)
    det = Fraction(1)
    for i in range(n):
        piv = next((r for r in range(i, n) if m[r][i] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != i:
            m[i], m[piv] = m[piv], m[i]
            det = -det
        det *= m[i][i]
        for r in range(i + 1, n):
            f = m[r][i] / m[i][i]
            if f:
                for c in range(i, n):
                    m[r][c] -= f * m[i][c]
    return det


def is_normal_basis_generator(omega: CycloElt) -> bool:
    rows = [list(omega.galois(k).coeffs) for k in units(omega.n)]
    return _det(rows) != 0


def default_normal_element(n: int) -> CycloElt:
    """zeta when its conjugates span (n squarefree), else the first small vector that works."""
    omega = CycloElt.zeta(n)
    if is_normal_basis_generator(omega):
        return omega
    phi = euler_phi(n)
    for vec in islice(product(range(3), repeat=phi), 1, 20000):
        omega = CycloElt(n, vec)
        if is_normal_basis_generator(omega):
            return omega
    raise ArithmeticError(f"no normal element found for n={n}")  # pragma: no cover


def normal_basis(n: int, omega: CycloElt | None = None) -> dict[int, CycloElt]:
    """omega_k = sigma_k(omega) for k in I_n."""
    if omega is None:
        omega = default_normal_element(n)
    elif not is_normal_basis_generator(omega):
        raise ValueError("conjugates of omega do not form a basis")
    return {k: omega.galois(k) for k in units(n)}


def normal_basis_expand(n: int, a: Mapping[int, object],
                        omega: CycloElt | None = None) -> dict[int, object]:
    """b_j = sum_i a_i * omega_<ij> over i, j in I_n.

    The a_i may be rationals or ``QuadraticElt`` values; in the latter case
    the b_j are ``QuadCyclo`` elements.
    """
    basis = normal_basis(n, omega)
    idx = units(n)
    if set(a) != set(idx):
        raise ValueError(f"a must be indexed by I_{n} = {idx}")
    out = {}
    for j in idx:
        acc = None
        for i in idx:
            w = basis[i * j % n]
            ai = a[i]
            term = (QuadCyclo.from_quadratic(ai, n) * w if isinstance(ai, QuadraticElt)
                    else w * Fraction(ai))
            acc = term if acc is None else acc + term
        out[j] = acc
    return out


def complex_embed(e: CycloElt, bits: int = DEFAULT_BITS) -> ComplexApprox:
    return e.embed(bits)
