"""Exact computations with Frobenius powers, saturations and local cohomology
over standard graded rings of prime characteristic."""

from .graded import (
    NEG_INF,
    H0Summary,
    HilbertNumerator,
    alpha,
    end_degree,
    h0_summary,
    hilbert_numerator,
    krull_dimension,
    length_of_quotient,
)
from .groebner import GroebnerBasis, buchberger, eliminate, ideal_member, normal_form
from .ideals import (
    Ideal,
    QuotientPresentation,
    colon_element,
    colon_ideal,
    frobenius_power,
    intersect,
    ordinary_power,
    saturate_irrelevant,
)
from .lab import (
    ann_exponent,
    brenner_bound,
    chudnovsky_check,
    eghk_estimate,
    element_trick_length,
    find_trick_element,
    frobenius_closure_degree_check,
    frobenius_closure_probe,
    frobenius_profile,
    powers_profile,
    symbolic_power,
    tight_closure_witness_search,
)
from .poly import Polynomial, frobenius_image, parse_polynomial, poly_mul
from .ring import PrimeField, Ring

__version__ = "0.1.0"

__all__ = [
    "GroebnerBasis",
    "H0Summary",
    "HilbertNumerator",
    "Ideal",
    "NEG_INF",
    "Polynomial",
    "PrimeField",
    "QuotientPresentation",
    "Ring",
    "alpha",
    "ann_exponent",
    "brenner_bound",
    "buchberger",
    "chudnovsky_check",
    "colon_element",
    "colon_ideal",
    "eghk_estimate",
    "element_trick_length",
    "eliminate",
    "end_degree",
    "find_trick_element",
    "frobenius_closure_degree_check",
    "frobenius_closure_probe",
    "frobenius_image",
    "frobenius_power",
    "frobenius_profile",
    "h0_summary",
    "hilbert_numerator",
    "ideal_member",
    "intersect",
    "krull_dimension",
    "length_of_quotient",
    "normal_form",
    "ordinary_power",
    "parse_polynomial",
    "poly_mul",
    "powers_profile",
    "saturate_irrelevant",
    "symbolic_power",
    "tight_closure_witness_search",
]
