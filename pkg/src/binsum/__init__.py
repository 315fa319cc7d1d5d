"""Exact invariant polynomials and binomial-sum recurrences."""

from .charpoly import char_poly, split_factorization
from .exactpoly import LaurentZ, MPoly, ZPoly, ZSeries, binomial
from .invariant import coeff_table, invariant_poly, lucas, weight_part
from .report import VerifyReport
from .sums import a_seq, fib

__all__ = [
    "LaurentZ",
    "MPoly",
    "VerifyReport",
    "ZPoly",
    "ZSeries",
    "a_seq",
    "binomial",
    "char_poly",
    "coeff_table",
    "fib",
    "invariant_poly",
    "lucas",
    "split_factorization",
    "weight_part",
]
