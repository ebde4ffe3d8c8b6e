"""Exact integer, rational and polynomial algebra."""

from .factor import (
    DEFAULT_DEGREE_CAP,
    DegreeTooLarge,
    IrreducibilityResult,
    eisenstein_prime,
    factor_over_Z,
    hensel_lift_factorization,
    is_irreducible_Q,
)
from .integers import (
    FactorizationBudgetExceeded,
    factorint,
    is_prime,
    primes_up_to,
    reduce_mod,
    squarefree_kernel,
    valuation,
)
from .modp import degree_pattern, factor_mod_p, is_irreducible_mod_p, is_squarefree_mod_p
from .padic import (
    NewtonCheck,
    PAdicInt,
    SearchExhausted,
    hensel_lift_root,
    newton_converges,
    newton_witness_lift,
    newton_witness_search,
    roots_mod_prime_power,
)
from .poly import (
    X,
    BiPoly,
    Poly,
    int_poly_gcd,
    is_squarefree,
    poly_gcd,
    squarefree_decomposition,
    squarefree_part,
)
from .resultant import disc_in_t, discriminant, interpolate, resultant
from .round2 import LocalOrder, p_maximal_order
from .sturm import sturm_real_roots, sturm_roots_in

IntPoly = Poly
RatPoly = Poly

__all__ = [
    "BiPoly", "DEFAULT_DEGREE_CAP", "DegreeTooLarge", "FactorizationBudgetExceeded",
    "IntPoly", "IrreducibilityResult", "LocalOrder", "NewtonCheck", "PAdicInt", "Poly",
    "RatPoly", "SearchExhausted", "X",
    "degree_pattern", "disc_in_t", "discriminant", "eisenstein_prime", "factor_mod_p",
    "factor_over_Z", "factorint", "hensel_lift_factorization", "hensel_lift_root",
    "int_poly_gcd", "interpolate", "is_irreducible_Q", "is_irreducible_mod_p", "is_prime",
    "is_squarefree", "is_squarefree_mod_p", "newton_converges", "newton_witness_lift",
    "newton_witness_search", "p_maximal_order", "poly_gcd", "primes_up_to", "reduce_mod", "resultant", "roots_mod_prime_power",
    "squarefree_decomposition", "squarefree_kernel", "squarefree_part",
    "sturm_real_roots", "sturm_roots_in", "valuation",
]
