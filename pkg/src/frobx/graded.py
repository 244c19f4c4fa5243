"""Hilbert series, lengths, end degrees and H^0_m(R/J) for homogeneous ideals.

All counts are taken over S = F_p[x_1..x_m]; an ideal J containing the
relations Q has S/J = R/J, so nothing here needs quotient arithmetic.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

from .ideals import Ideal, NotHomogeneousError, saturation
from .monomial import (
    divide_one_minus_t,
    has_finite_colength,
    hilbert_numerator as _monomial_numerator,
    peval,
    root_one_multiplicity,
    series_coefficient,
    trim,
)


@functools.total_ordering
class _MinusInfinity:
    """End degree / dimension of the zero module."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("-inf")

    def __repr__(self):
        return "-inf"

    __str__ = __repr__

    def __reduce__(self):
        return (_MinusInfinity, ())


NEG_INF = _MinusInfinity()


class NotFiniteLengthError(ValueError):
    pass


@dataclass(frozen=True)
class HilbertNumerator:
    """``N(t)`` with ``HS(S/J) = N(t)/(1-t)^nvars``; lowest degree first."""

    coefficients: tuple[int, ...]
    nvars: int

    def __call__(self, t):
        return peval(list(self.coefficients), t)

    def is_zero(self) -> bool:
        return not self.coefficients

    def hilbert_function(self, d: int) -> int:
        if d < 0:
            return 0
        return series_coefficient(list(self.coefficients), self.nvars, d)

    def dimension(self):
        if self.is_zero():
            return NEG_INF
        return self.nvars - root_one_multiplicity(list(self.coefficients))

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coefficients):
            if c:
                terms.append(f"{c}" if i == 0 else f"{c}*t^{i}")
        return " + ".join(terms).replace("+ -", "- ") or "0"


def _leading_exponents(J: Ideal) -> list[tuple[int, ...]]:
    return [g.lm for g in J.basis.elements]


def hilbert_numerator(J: Ideal) -> HilbertNumerator:
    J.require_homogeneous("the Hilbert series")
    cached = J.__dict__.get("_hilbert")
    if cached is None:
        nv = J.ring.nvars
        cached = HilbertNumerator(tuple(_monomial_numerator(_leading_exponents(J), nv)), nv)
        J.__dict__["_hilbert"] = cached
    return cached


def krull_dimension(J: Ideal):
    """``dim S/J``; the unit ideal gives :data:`NEG_INF`."""
    return hilbert_numerator(J).dimension()


def is_finite_length(J: Ideal) -> bool:
    return J.is_unit() or has_finite_colength(_leading_exponents(J), J.ring.nvars)


def _quotient_polynomial(J: Ideal) -> list[int]:
    """The Hilbert polynomial of a finite-length S/J, as a list by degree."""
    if not is_finite_length(J):
        raise NotFiniteLengthError("quotient is not of finite length")
    if J.is_unit():
        return []
    if J.homogeneous:
        N = hilbert_numerator(J)
        return divide_one_minus_t(list(N.coefficients), N.nvars)
    raise NotHomogeneousError("graded lengths need a homogeneous ideal")


def length_of_quotient(J: Ideal) -> int:
    return sum(_quotient_polynomial(J))


def end_degree(J: Ideal):
    """Top degree of S/J (finite length required); NEG_INF for the unit ideal."""
    h = _quotient_polynomial(J)
    return len(h) - 1 if h else NEG_INF


def hilbert_function(J: Ideal, d: int) -> int:
    return hilbert_numerator(J).hilbert_function(d)


def alpha(J: Ideal) -> int:
    """Least degree d with ``J_d`` strictly larger than ``Q_d``."""
    J.require_homogeneous("alpha")
    Q = J.presentation.relation_ideal
    if J.is_relations_only():
        raise ValueError("ideal is zero in the quotient ring")
    NJ, NQ = hilbert_numerator(J), hilbert_numerator(Q)
    top = max(g.degree for g in J.basis.elements)
    for d in range(top + 1):
        if NJ.hilbert_function(d) < NQ.hilbert_function(d):
            return d
    raise AssertionError("no degree separates J from Q")


@dataclass(frozen=True)
class H0Summary:
    """Length, end degree and Hilbert polynomial of ``J^sat / J``."""

    length: int
    end: object
    diff: tuple[int, ...]


def h0_summary(J: Ideal, sat: Ideal | None = None) -> H0Summary:
    J.require_homogeneous("H^0 summary")
    if sat is None:
        sat = saturation(J)
    NJ, NS = hilbert_numerator(J), hilbert_numerator(sat)
    diff = trim([a - b for a, b in _zip_pad(NJ.coefficients, NS.coefficients)])
    try:
        D = divide_one_minus_t(diff, J.ring.nvars)
    except ValueError:
        raise RuntimeError("J^sat/J is not of finite length; inconsistent saturation") from None
    if any(c < 0 for c in D):
        raise RuntimeError("negative Hilbert function for J^sat/J")
    if not D:
        return H0Summary(0, NEG_INF, ())
    return H0Summary(sum(D), len(D) - 1, tuple(D))


def _zip_pad(a, b):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return zip(a, b)
