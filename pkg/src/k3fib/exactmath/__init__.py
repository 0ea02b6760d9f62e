"""Exact arithmetic: rationals, prime fields, sparse polynomials, rational
functions, univariate factoring and integer matrix normal forms."""

from fractions import Fraction as BigRat

from .fields import QQ, GF, PrimeField, RationalField, FpElem, is_prime, legendre_symbol
from .poly import MultiPoly, NotExactDivision, polyvars, to_text
from .gcd import poly_gcd, poly_cofactors
from .ratfunc import MultiRat, substitute, parse, parse_poly, as_rat, SubstitutionError
from .factor import (factor_univariate, factor_mod_p, factor_rational, expand_factorization,
                     roots_in_field, UnsupportedDegree)
from .matrix import IntMatrix, smith_normal_form, det_bareiss, rational_inverse, hermite_rows

__all__ = [
    "BigRat", "QQ", "GF", "PrimeField", "RationalField", "FpElem", "is_prime", "legendre_symbol",
    "MultiPoly", "NotExactDivision", "polyvars", "to_text", "poly_gcd", "poly_cofactors",
    "MultiRat", "substitute", "parse", "parse_poly", "as_rat", "SubstitutionError",
    "factor_univariate", "factor_mod_p", "factor_rational", "expand_factorization",
    "roots_in_field", "UnsupportedDegree",
    "IntMatrix", "smith_normal_form", "det_bareiss", "rational_inverse", "hermite_rows",
]

from .sqrt import poly_sqrt, rat_sqrt, is_square

__all__ += ["poly_sqrt", "rat_sqrt", "is_square"]
