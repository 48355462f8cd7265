"""Equivariant Hilbert series and asymptotics of Inc-invariant chains of ideals."""

from .asymptotics import (
    AsymptoticProfile,
    asymptotic_profile,
    partial_fractions,
    special_path_profile,
)
from .birational import BiRational, series_coeff, solve_linear
from .chains import ChainSpec, materialize, promote_monoid, stability_index
from .engine import cross_check, equivariant_hilbert, per_width_decomposition_check
from .errors import EquichainError
from .grid import IncMap, Monomial, inc_divides, parse_monomial
from .groebner import (
    GridPolynomial,
    buchberger_lex,
    equivariant_gb_truncation,
    initial_chain,
    parse_polynomial,
)
from .hilbert import UniRational, hilbert_quotient
from .ideals import MonomialIdeal

__all__ = [
    "AsymptoticProfile",
    "BiRational",
    "ChainSpec",
    "EquichainError",
    "GridPolynomial",
    "IncMap",
    "Monomial",
    "MonomialIdeal",
    "UniRational",
    "asymptotic_profile",
    "buchberger_lex",
    "cross_check",
    "equivariant_gb_truncation",
    "equivariant_hilbert",
    "hilbert_quotient",
    "inc_divides",
    "initial_chain",
    "materialize",
    "parse_monomial",
    "parse_polynomial",
    "partial_fractions",
    "per_width_decomposition_check",
    "promote_monoid",
    "series_coeff",
    "solve_linear",
    "special_path_profile",
    "stability_index",
]
