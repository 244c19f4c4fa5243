"""Characteristic-p invariants built on saturation and Hilbert series.

Profiles over Frobenius powers ``I^[q]`` and ordinary powers ``I^n``,
annihilation exponents, the two-length element trick, symbolic powers,
Frobenius/tight closure probes and the closed-form degree bound for
two-generated ideals on plane curves.
"""

from __future__ import annotations

import logging
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, combinations_with_replacement

from .graded import (
    NEG_INF,
    alpha,
    end_degree,
    h0_summary,
    is_finite_length,
    krull_dimension,
    length_of_quotient,
)
from .ideals import (
    Ideal,
    colon_ideal,
    frobenius_power,
    ordinary_power,
    saturation,
)
from .poly import Polynomial
from .ring import MAX_EXPONENT, ExponentOverflowError

log = logging.getLogger(__name__)


class TrickElementError(ValueError):
    pass


def ceil_div(a: int, b: int) -> int:
    return (a + b - 1) // b


def annihilator(J: Ideal) -> Ideal:
    """``Ann H^0_m(R/J) = (J : J^sat)``."""
    J.require_homogeneous("the annihilator of H^0")
    sat = saturation(J)
    return colon_ideal(J, sat)


def ann_exponent(J: Ideal) -> int:
    """Least a with ``m^a H^0_m(R/J) = 0``.

    With A the annihilator, ``m^a ⊆ A`` iff ``(R/A)_d = 0`` for all
    ``d ≥ a``, so a is one more than the top degree of R/A.
    """
    J.require_homogeneous("the annihilator of H^0")
    if saturation(J) == J:
        return 0
    A = annihilator(J)
    if A.is_unit():
        return 0
    if not is_finite_length(A):
        raise RuntimeError("annihilator of H^0 is not m-primary")
    return end_degree(A) + 1


def ring_dimension(I: Ideal):
    return krull_dimension(I.presentation.relation_ideal)


# Frobenius profiles -------------------------------------------------------


@dataclass(frozen=True)
class FrobeniusRow:
    e: int
    q: int
    h0_length: int
    h0_end: object
    ann_exp: int
    v: int | None
    ratio_hk: Fraction
    ratio_v: Fraction | None

    @property
    def ceil_ratio(self) -> int:
        return ceil_div(self.ann_exp, self.q)


@dataclass(frozen=True)
class FrobeniusProfile:
    ideal: Ideal
    rows: tuple[FrobeniusRow, ...]
    b_hat: int
    c_hat: int
    dim: int


def frobenius_row(I: Ideal, e: int, dim: int) -> FrobeniusRow:
    q = I.ring.p**e
    J = frobenius_power(I, e)
    h0 = h0_summary(J)
    a = ann_exponent(J)
    v = end_degree(J) if is_finite_length(J) and not J.is_unit() else None
    return FrobeniusRow(
        e=e,
        q=q,
        h0_length=h0.length,
        h0_end=h0.end,
        ann_exp=a,
        v=v,
        ratio_hk=Fraction(h0.length, q**dim),
        ratio_v=None if v is None else Fraction(v, q),
    )


def _frobenius_task(args):
    I, e, dim = args
    return frobenius_row(I, e, dim)


def _run_rows(task, jobs, threads: int):
    if threads <= 1 or len(jobs) <= 1:
        return [task(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(task, jobs))


def _check_scale(I: Ideal, factor: int) -> None:
    # fail before the first row rather than after hours of smaller ones
    top = max((g.degree for g in I.generators if not g.is_zero()), default=0)
    if top * factor > MAX_EXPONENT:
        raise ExponentOverflowError(f"generator degree {top} times {factor} exceeds 2^31-1")


def frobenius_profile(I: Ideal, e_max: int, threads: int = 1, e_min: int = 1) -> FrobeniusProfile:
    I.require_homogeneous("a Frobenius profile")
    if e_max < e_min or e_min < 0:
        raise ValueError("need 0 <= e_min <= e_max")
    _check_scale(I, I.ring.p**e_max)
    dim = ring_dimension(I)
    jobs = [(I, e, dim) for e in range(e_min, e_max + 1)]
    rows = sorted(_run_rows(_frobenius_task, jobs, threads), key=lambda r: r.e)
    ceils = [r.ceil_ratio for r in rows]
    b_hat = max(ceils)
    c_hat = max(ceils[len(ceils) // 2:])
    return FrobeniusProfile(I, tuple(rows), b_hat, c_hat, dim)


@dataclass(frozen=True)
class EghkEstimate:
    ratios: tuple[Fraction, ...]
    flag: str
    value: Fraction


def eghk_estimate(profile: FrobeniusProfile) -> EghkEstimate:
    ratios = tuple(r.ratio_hk for r in profile.rows)
    if len(ratios) < 2:
        raise ValueError("need at least two rows")
    flag = "exact" if ratios[-1] == ratios[-2] else "estimate"
    return EghkEstimate(ratios, flag, ratios[-1])


# element trick ---------------------------------------------------------------


def _family_member(I: Ideal, mode: str, k: int) -> tuple[Ideal, int]:
    if mode == "frobenius":
        return frobenius_power(I, k), I.ring.p**k
    if mode == "ordinary":
        return ordinary_power(I, k), k
    raise ValueError(f"unknown mode {mode!r}")


def element_trick_length(I: Ideal, s: Polynomial, mode: str = "frobenius", k: int = 1) -> int:
    """``2 l(R/(I_k + s^n)) - l(R/(I_k + s^2n))`` with n = q or k.

    I_k is ``I^[p^k]`` in frobenius mode and ``I^k`` in ordinary mode.
    """
    if isinstance(s, str):
        s = I.presentation.parse(s)
    if not s.is_homogeneous() or I.presentation.relation_ideal.contains(s):
        raise TrickElementError("trick element must be homogeneous and nonzero in R")
    In, n = _family_member(I, mode, k)
    sn = s**n
    lengths = []
    for power in (sn, sn * sn):
        aug = In.with_generators([power])
        if not is_finite_length(aug):
            raise TrickElementError(f"R/(I + ({s})^{n}) is not of finite length")
        lengths.append(length_of_quotient(aug))
    out = 2 * lengths[0] - lengths[1]
    if out < 0:
        raise TrickElementError("negative trick length; element meets an associated prime")
    return out


def _trick_candidates(I: Ideal, degree_cap: int, rng: random.Random):
    ring = I.ring
    xs = [Polynomial.variable(ring, v) for v in ring.variables]
    yield from xs
    for d in range(2, degree_cap + 1):
        for combo in combinations_with_replacement(range(ring.nvars), d):
            m = Polynomial.one(ring)
            for i in combo:
                m = m * xs[i]
            yield m
    for d in range(1, degree_cap + 1):
        mons = []
        for combo in combinations_with_replacement(range(ring.nvars), d):
            m = Polynomial.one(ring)
            for i in combo:
                m = m * xs[i]
            mons.append(m)
        for size in (2, 3):
            for pick in combinations(mons, size):
                f = Polynomial.zero(ring)
                for m in pick:
                    f = f + m.scale(rng.randrange(1, ring.p))
                yield f


def find_trick_element(I: Ideal, degree_cap: int = 2, seed: int = 0) -> Polynomial:
    """First homogeneous s with ``I + (s)`` of finite colength that passes the e = 1 cross-check."""
    I.require_homogeneous("the element trick")
    dim = krull_dimension(I)
    if dim == NEG_INF or dim < 1:
        raise TrickElementError("ideal must have dimension at least one")
    J1 = frobenius_power(I, 1)
    target = h0_summary(J1).length
    rel = I.presentation.relation_ideal
    seen = set()
    for s in _trick_candidates(I, degree_cap, random.Random(seed)):
        if s in seen or rel.contains(s) or I.contains(s):
            continue
        seen.add(s)
        if not is_finite_length(I.with_generators([s])):
            continue
        try:
            if element_trick_length(I, s, "frobenius", 1) == target:
                return s
        except TrickElementError:
            continue
    raise TrickElementError(f"no trick element up to degree {degree_cap}; supply one manually")


# ordinary and symbolic powers --------------------------------------------------


@dataclass(frozen=True)
class PowersRow:
    n: int
    h0_length: int
    ann_exp: int
    alpha_sat: int
    ratio_alpha: Fraction
    ratio_len: Fraction


@dataclass(frozen=True)
class PowersProfile:
    ideal: Ideal
    rows: tuple[PowersRow, ...]
    d_hat: int
    waldschmidt_upper: Fraction
    symbolic: bool
    warnings: tuple[str, ...] = field(default=())


def powers_row(I: Ideal, n: int, dim: int) -> PowersRow:
    J = ordinary_power(I, n)
    sat = saturation(J)
    h0 = h0_summary(J, sat)
    a = ann_exponent(J)
    al = 0 if sat.is_unit() else alpha(sat)
    return PowersRow(n, h0.length, a, al, Fraction(al, n), Fraction(h0.length, n**dim))


def _powers_task(args):
    I, n, dim = args
    return powers_row(I, n, dim)


def _symbolic_warnings(I: Ideal) -> list[str]:
    out = []
    dim = krull_dimension(I)
    if dim != 1:
        out.append(f"ideal has dimension {dim}, not 1; sat(I^n) need not be the symbolic power")
    if saturation(I) != I:
        out.append("ideal is not saturated, so it is not a relevant prime")
    return out


def powers_profile(I: Ideal, n_max: int, symbolic: bool = False, threads: int = 1) -> PowersProfile:
    I.require_homogeneous("a powers profile")
    if n_max < 1:
        raise ValueError("n_max must be positive")
    _check_scale(I, n_max)
    warnings = _symbolic_warnings(I) if symbolic else []
    for w in warnings:
        log.warning(w)
    dim = ring_dimension(I)
    jobs = [(I, n, dim) for n in range(1, n_max + 1)]
    rows = sorted(_run_rows(_powers_task, jobs, threads), key=lambda r: r.n)
    tail = rows[len(rows) // 2:]
    d_hat = max(ceil_div(r.ann_exp, r.n) for r in tail)
    wald = min(r.ratio_alpha for r in rows)
    return PowersProfile(I, tuple(rows), d_hat, wald, symbolic, tuple(warnings))


def symbolic_power(P: Ideal, n: int) -> Ideal:
    """``P^(n) = sat(P^n)`` for a homogeneous prime of dimension one (primality trusted)."""
    dim = krull_dimension(P)
    if dim != 1:
        raise ValueError(f"symbolic powers via saturation need dimension one, got {dim}")
    return saturation(ordinary_power(P, n))


def fekete_violations(profile: PowersProfile) -> list[tuple[int, int]]:
    """Pairs (n, m) with ``alpha(n+m) > alpha(n) + alpha(m)`` among computed rows."""
    al = {r.n: r.alpha_sat for r in profile.rows}
    bad = []
    for n in al:
        for m in al:
            if n <= m and n + m in al and al[n + m] > al[n] + al[m]:
                bad.append((n, m))
    return bad


def chudnovsky_check(profile: PowersProfile, alpha_p: int, N: int) -> list[bool]:
    lhs = Fraction(alpha_p + N - 1, N)
    return [lhs <= r.ratio_alpha for r in profile.rows]


# closure probes --------------------------------------------------------------


@dataclass
class ClosureReport:
    element: Polynomial
    ideal: Ideal
    e_max: int
    frobenius_member: int | None = None
    tight_witness: Polynomial | None = None
    witness_verified_up_to: int | None = None

    @property
    def frobenius_text(self) -> str:
        if self.frobenius_member is None:
            return f"not up to e_max={self.e_max}"
        return f"e={self.frobenius_member}"

    @property
    def tight_text(self) -> str:
        if self.tight_witness is None:
            return "none found"
        return f"c={self.tight_witness} verified up to e={self.witness_verified_up_to}"


def _as_poly(I: Ideal, x) -> Polynomial:
    return I.presentation.parse(x) if isinstance(x, str) else x.to_ring(I.ring)


def frobenius_closure_probe(x, I: Ideal, e_max: int) -> ClosureReport:
    x = _as_poly(I, x)
    if not x.is_homogeneous():
        raise ValueError("element must be homogeneous")
    _check_scale(I.with_generators([x]), I.ring.p**e_max)
    report = ClosureReport(x, I, e_max)
    for e in range(e_max + 1):
        if frobenius_power(I, e).contains(x.frobenius(e)):
            report.frobenius_member = e
            break
    if report.frobenius_member is not None:
        for e in range(report.frobenius_member + 1, e_max + 1):
            if not frobenius_power(I, e).contains(x.frobenius(e)):
                raise AssertionError("Frobenius membership is not persistent")
    return report


def _witness_candidates(I: Ideal, cap: int):
    ring = I.ring
    xs = [Polynomial.variable(ring, v) for v in ring.variables]
    yield Polynomial.one(ring)
    for d in range(1, cap + 1):
        mons = []
        for combo in combinations_with_replacement(range(ring.nvars), d):
            m = Polynomial.one(ring)
            for i in combo:
                m = m * xs[i]
            mons.append(m)
        yield from mons
        for a, b in combinations(mons, 2):
            yield a + b


def tight_closure_witness_search(x, I: Ideal, witness_degree_cap: int = 4, e_max: int = 3) -> ClosureReport:
    """Look for c, nonzero in R, with ``c x^q ∈ I^[q]`` for q = p..p^e_max.

    Success is evidence for ``x ∈ I*`` only up to the tested q.
    """
    x = _as_poly(I, x)
    if not x.is_homogeneous():
        raise ValueError("element must be homogeneous")
    _check_scale(I.with_generators([x]), I.ring.p**e_max)
    report = ClosureReport(x, I, e_max)
    rel = I.presentation.relation_ideal
    levels = [(frobenius_power(I, e), x.frobenius(e)) for e in range(1, e_max + 1)]
    for c in _witness_candidates(I, witness_degree_cap):
        if rel.contains(c):
            continue
        if all(Ie.contains(c * xq) for Ie, xq in levels):
            report.tight_witness = c
            report.witness_verified_up_to = e_max
            break
    return report


def frobenius_closure_degree_check(I: Ideal, c: int, e_max: int) -> bool:
    """True iff every degree-c monomial nonzero in R lands in ``I^[q]`` after Frobenius, e = 1..e_max."""
    if not is_finite_length(I):
        raise ValueError("ideal must be m-primary")
    if I.is_unit():
        return True
    ring = I.ring
    rel = I.presentation.relation_ideal
    xs = [Polynomial.variable(ring, v) for v in ring.variables]
    mons = []
    for combo in combinations_with_replacement(range(ring.nvars), c):
        m = Polynomial.one(ring)
        for i in combo:
            m = m * xs[i]
        if not rel.contains(m):
            mons.append(m)
    for e in range(1, e_max + 1):
        Ie = frobenius_power(I, e)
        for m in mons:
            if not Ie.contains(m.frobenius(e)):
                return False
    return True


def brenner_bound(d: int, d1, d2, e) -> tuple[Fraction, Fraction]:
    """``(d1 + d2 + e, ((d-1)(d-2) - 2)/d + 1)`` for a degree-d plane curve."""
    if d < 1:
        raise ValueError("curve degree must be positive")
    a = Fraction(d1) + Fraction(d2) + Fraction(e)
    b = Fraction((d - 1) * (d - 2) - 2, d) + 1
    return a, b
