"""Real root counting by Sturm sequences."""

from __future__ import annotations

from fractions import Fraction

from .poly import Poly, squarefree_part


def sturm_sequence(f: Poly) -> list[Poly]:
    seq = [f, f.derivative()]
    while seq[-1].degree > 0:
        r = seq[-2] % seq[-1]
        if not r:
            break
        seq.append(-r)
    return seq


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _variations(signs: list[int]) -> int:
    signs = [s for s in signs if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sign_changes_at(seq: list[Poly], x) -> int:
    return _variations([_sign(p(Fraction(x))) for p in seq])


def sturm_real_roots(f: Poly) -> int:
    """Number of distinct real roots of ``f``."""
    if f.degree < 1:
        return 0
    seq = sturm_sequence(squarefree_part(f))
    at_pos = _variations([_sign(p.lc) for p in seq])
    at_neg = _variations([_sign(p.lc) * (-1) ** p.degree for p in seq])
    return at_neg - at_pos


def sturm_roots_in(f: Poly, a, b) -> int:
    """Distinct real roots in the half-open interval ``(a, b]``."""
    seq = sturm_sequence(squarefree_part(f))
    return sign_changes_at(seq, a) - sign_changes_at(seq, b)
