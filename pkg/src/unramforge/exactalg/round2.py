"""Local p-maximal orders by the Round 2 (Pohst-Zassenhaus) iteration.

Orders are kept as upper-triangular Hermite bases over the power basis
1, theta, ..., theta^(n-1) of Q[x]/(f), with f monic and integral. Each round
takes the p-radical I of the current order O and replaces O by the
multiplier ring {x : xI in I}; the order is p-maximal once that stops growing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .integers import valuation
from .poly import Poly

Vec = list  # list[Fraction], power-basis coordinates


def _mulmod(a: Vec, b: Vec, f: list[int]) -> Vec:
    n = len(f) - 1
    prod = [Fraction(0)] * (2 * n - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    prod[i + j] += x * y
    for k in range(2 * n - 2, n - 1, -1):
        c = prod[k]
        if c:
            for i in range(n):
                prod[k - n + i] -= c * f[i]
    return prod[:n]


def _structure_mod(basis: list[Vec], f: list[int], p: int) -> list[list[list[int]]]:
    """table[i][j] = coordinates of basis_i * basis_j, reduced mod p."""
    n = len(basis)
    table = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            c = [_as_int_mod(x, p) for x in coords(basis, _mulmod(basis[i], basis[j], f))]
            table[i][j] = table[j][i] = c
    return table


def _mul_table(a: list[int], b: list[int], table, p: int) -> list[int]:
    n = len(a)
    out = [0] * n
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    xy = x * y
                    for k, c in enumerate(table[i][j]):
                        if c:
                            out[k] += xy * c
    return [v % p for v in out]


def _power_table(a: list[int], e: int, table, p: int, one: list[int]) -> list[int]:
    result = one
    while e:
        if e & 1:
            result = _mul_table(result, a, table, p)
        e >>= 1
        if e:
            a = _mul_table(a, a, table, p)
    return result


def hnf(rows: list[Vec], n: int) -> list[Vec]:
    """Upper-triangular Hermite basis of the Z-span of rational rows (full rank)."""
    den = 1
    for r in rows:
        for x in r:
            den = lcm(den, Fraction(x).denominator)
    work = [[int(Fraction(x) * den) for x in r] for r in rows]
    work = [r for r in work if any(r)]
    basis = []
    for j in range(n):
        while True:
            nz = [r for r in work if r[j]]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda r: abs(r[j]))
            piv = nz[0]
            for r in nz[1:]:
                qq = r[j] // piv[j]
                for k in range(j, n):
                    r[k] -= qq * piv[k]
            work = [r for r in work if any(r)]
        piv = next((r for r in work if r[j]), None)
        if piv is None:
            raise ValueError("generators do not span a full-rank lattice")
        work.remove(piv)
        if piv[j] < 0:
            piv = [-x for x in piv]
        basis.append(piv)
    for i in range(n):
        for k in range(i):
            qq = basis[k][i] // basis[i][i]
            if qq:
                basis[k] = [a - qq * b for a, b in zip(basis[k], basis[i])]
    return [[Fraction(x, den) for x in r] for r in basis]


def coords(basis: list[Vec], v: Vec) -> Vec:
    """Solve sum c_i basis_i = v for an upper-triangular basis."""
    v = list(v)
    c = []
    for i, row in enumerate(basis):
        ci = Fraction(v[i]) / row[i]
        c.append(ci)
        if ci:
            for k in range(i, len(v)):
                v[k] -= ci * row[k]
    return c


def _combine(basis: list[Vec], c) -> Vec:
    n = len(basis)
    out = [Fraction(0)] * n
    for ci, row in zip(c, basis):
        if ci:
            for k in range(n):
                out[k] += ci * row[k]
    return out


def left_kernel_mod(rows: list[list[int]], p: int) -> list[list[int]]:
    """Basis of {k : sum k_i rows_i = 0 mod p}."""
    m = len(rows)
    if m == 0:
        return []
    width = len(rows[0])
    # row-reduce [rows | I] and read the kernel off the zero rows
    aug = [[x % p for x in r] + [1 if i == j else 0 for j in range(m)] for i, r in enumerate(rows)]
    r = 0
    for col in range(width):
        piv = next((i for i in range(r, m) if aug[i][col]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = pow(aug[r][col], -1, p)
        aug[r] = [x * inv % p for x in aug[r]]
        for i in range(m):
            if i != r and aug[i][col]:
                c = aug[i][col]
                aug[i] = [(a - c * b) % p for a, b in zip(aug[i], aug[r])]
        r += 1
    return [row[width:] for row in aug[r:]]


def _as_int_mod(x: Fraction, p: int) -> int:
    if x.denominator % p == 0:
        raise ArithmeticError("coordinate is not p-integral")
    return x.numerator * pow(x.denominator, -1, p) % p


@dataclass(frozen=True)
class LocalOrder:
    p: int
    basis: tuple  # rows of the Hermite basis, power-basis coordinates
    index_valuation: int  # v_p([O : Z[theta]])
    rounds: int
    field_disc_valuation: int
    radical_dimension: int  # dim over F_p of (p-radical)/pO in the final order

    @property
    def ramified(self) -> bool:
        return self.field_disc_valuation > 0

    def to_json(self) -> dict:
        return {"p": self.p, "index_valuation": self.index_valuation, "rounds": self.rounds,
                "field_disc_valuation": self.field_disc_valuation,
                "radical_dimension": self.radical_dimension}


def _radical(basis: list[Vec], f: list[int], p: int) -> tuple[list[Vec], int]:
    n = len(basis)
    e = p
    while e < n:
        e *= p
    table = _structure_mod(basis, f, p)
    one = [_as_int_mod(c, p) for c in coords(basis, [Fraction(1)] + [Fraction(0)] * (n - 1))]
    unit = [[int(i == j) for j in range(n)] for i in range(n)]
    frob = [_power_table(u, e, table, p, one) for u in unit]
    ker = left_kernel_mod(frob, p)
    gens = [_combine(basis, k) for k in ker] + [[p * x for x in w] for w in basis]
    return hnf(gens, n), len(ker)


def _multipliers(basis: list[Vec], ideal: list[Vec], f: list[int], p: int) -> list[Vec]:
    n = len(basis)
    rows = []
    for w in basis:
        row = []
        for g in ideal:
            row.extend(_as_int_mod(c, p) for c in coords(ideal, _mulmod(w, g, f)))
        rows.append(row)
    u = left_kernel_mod(rows, p)
    gens = [[x / p for x in _combine(basis, k)] for k in u] + [list(w) for w in basis]
    return hnf(gens, n)


def p_maximal_order(f: Poly, p: int, max_rounds: int = 64) -> LocalOrder:
    """The p-maximal order containing Z[theta], theta a root of monic f."""
    from .resultant import discriminant

    if not f.is_integral() or not f.is_monic():
        raise ValueError("need a monic integer polynomial")
    fc = [int(c) for c in f.coeffs]
    n = f.degree
    basis = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    vdisc = valuation(discriminant(f), p)
    rounds = 0
    while True:
        ideal, rad_dim = _radical(basis, fc, p)
        if rad_dim == 0:
            break
        new = _multipliers(basis, ideal, fc, p)
        if all(new[i][i] == basis[i][i] for i in range(n)):
            break
        basis = new
        rounds += 1
        if rounds >= max_rounds:
            raise RuntimeError("round 2 did not stabilise")
    vindex = -sum(valuation(b[i].numerator, p) - valuation(b[i].denominator, p)
                  for i, b in enumerate(basis))
    return LocalOrder(p, tuple(tuple(b) for b in basis), vindex, rounds,
                      vdisc - 2 * vindex, rad_dim)
