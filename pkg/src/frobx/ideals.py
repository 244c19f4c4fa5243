"""Ideals of a quotient R = S/Q, represented by their preimages in S.

Every operation works in the ambient polynomial ring S; an :class:`Ideal`
always contains the relations Q.  Ideal equality is equality of reduced
grevlex Groebner bases.
"""

from __future__ import annotations

import logging
from functools import cached_property
from itertools import combinations_with_replacement

from .groebner import GroebnerBasis, buchberger, eliminate, exact_divide
from .poly import Polynomial, parse_polynomial
from .ring import Ring

log = logging.getLogger(__name__)

SATURATION_CAP = 10_000
_AUX = "_t"


class NotHomogeneousError(ValueError):
    pass


class QuotientPresentation:
    """Polynomial ring S (grevlex) with relation generators of Q."""

    def __init__(self, ring: Ring, relations=()):
        if ring.order != "grevlex":
            ring = ring.with_order("grevlex")
        self.ring = ring
        rels = []
        for r in relations:
            if isinstance(r, str):
                r = parse_polynomial(r, ring)
            rels.append(r.to_ring(ring))
        self.relations = tuple(r for r in rels if not r.is_zero())

    @classmethod
    def polynomial_ring(cls, p: int, variables) -> QuotientPresentation:
        return cls(Ring(p, tuple(variables)))

    @cached_property
    def homogeneous(self) -> bool:
        return all(r.is_homogeneous() for r in self.relations)

    @cached_property
    def relation_ideal(self) -> Ideal:
        return Ideal(self, ())

    @property
    def nvars(self) -> int:
        return self.ring.nvars

    def parse(self, src: str) -> Polynomial:
        return parse_polynomial(src, self.ring)

    def ideal(self, generators) -> Ideal:
        return Ideal(self, generators)

    def unit_ideal(self) -> Ideal:
        return Ideal(self, [Polynomial.one(self.ring)])

    def maximal_ideal(self) -> Ideal:
        return Ideal(self, [Polynomial.variable(self.ring, v) for v in self.ring.variables])

    def __eq__(self, other):
        if not isinstance(other, QuotientPresentation):
            return NotImplemented
        return self.ring == other.ring and self.relation_ideal.basis == other.relation_ideal.basis

    def __hash__(self):
        return hash(self.ring)

    def __getstate__(self):
        return {"ring": self.ring, "relations": self.relations}

    def __str__(self):
        if not self.relations:
            return f"F_{self.ring.p}[{','.join(self.ring.variables)}]"
        rels = ", ".join(str(r) for r in self.relations)
        return f"F_{self.ring.p}[{','.join(self.ring.variables)}]/({rels})"


class Ideal:
    """An ideal of R = S/Q, stored as generators in S plus the relations.

    The reduced Groebner basis of ``generators + relations`` is computed on
    first use and cached.  Assignment of the cache is a single attribute
    store, so concurrent readers see either nothing or a complete basis.
    """

    def __init__(self, presentation: QuotientPresentation, generators=()):
        self.presentation = presentation
        ring = presentation.ring
        gens = []
        for g in generators:
            if isinstance(g, str):
                g = parse_polynomial(g, ring)
            g = g.to_ring(ring)
            if not g.is_zero():
                gens.append(g)
        self.generators = tuple(gens)

    @property
    def ring(self) -> Ring:
        return self.presentation.ring

    @classmethod
    def from_basis(cls, presentation, basis: GroebnerBasis) -> Ideal:
        ideal = cls(presentation, basis.elements)
        if basis.ring == presentation.ring:
            ideal.__dict__["basis"] = basis
        return ideal

    @cached_property
    def basis(self) -> GroebnerBasis:
        return buchberger(
            list(self.generators) + list(self.presentation.relations), ring=self.ring
        )

    @cached_property
    def homogeneous(self) -> bool:
        return self.presentation.homogeneous and all(g.is_homogeneous() for g in self.generators)

    def require_homogeneous(self, what: str = "this operation") -> None:
        if not self.homogeneous:
            raise NotHomogeneousError(f"{what} needs a homogeneous ideal and presentation")

    def contains(self, f) -> bool:
        if isinstance(f, str):
            f = parse_polynomial(f, self.ring)
        return self.basis.contains(f)

    def __contains__(self, f) -> bool:
        return self.contains(f)

    def issubset(self, other: Ideal) -> bool:
        return all(other.contains(g) for g in self.basis.elements)

    def is_unit(self) -> bool:
        return self.basis.is_unit()

    def is_relations_only(self) -> bool:
        """True iff the ideal is zero in R (contained in Q)."""
        q = self.presentation.relation_ideal
        return all(q.contains(g) for g in self.generators)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring == other.ring and self.basis == other.basis

    def __hash__(self):
        return hash(self.basis)

    def __getstate__(self):
        # keep the computed basis; drop other caches
        state = {"presentation": self.presentation, "generators": self.generators}
        if "basis" in self.__dict__:
            state["basis"] = self.__dict__["basis"]
        return state

    def __str__(self):
        return "(" + ", ".join(str(g) for g in self.generators) + ")"

    def __repr__(self):
        return f"Ideal{self}"

    # convenience ------------------------------------------------------
    def __add__(self, other: Ideal) -> Ideal:
        return ideal_sum(self, other)

    def __mul__(self, other: Ideal) -> Ideal:
        return ideal_product(self, other)

    def with_generators(self, extra) -> Ideal:
        return Ideal(self.presentation, list(self.generators) + list(extra))


def _same(J: Ideal, K: Ideal) -> None:
    if J.presentation is not K.presentation and J.presentation != K.presentation:
        raise ValueError("ideals live in different presentations")


def ideal_sum(J: Ideal, K: Ideal) -> Ideal:
    _same(J, K)
    return Ideal(J.presentation, J.generators + K.generators)


def ideal_product(J: Ideal, K: Ideal) -> Ideal:
    _same(J, K)
    prods, seen = [], set()
    for a in J.generators:
        for b in K.generators:
            c = a * b
            if c not in seen:
                seen.add(c)
                prods.append(c)
    return Ideal(J.presentation, prods)


def frobenius_power(I: Ideal, e: int) -> Ideal:
    """``I^[q]`` with ``q = p^e``: the ideal of q-th powers of generators."""
    if e < 0:
        raise ValueError("Frobenius exponent must be nonnegative")
    if e == 0:
        return I
    return Ideal(I.presentation, [g.frobenius(e) for g in I.generators])


def ordinary_power(I: Ideal, n: int) -> Ideal:
    """``I^n`` generated by the n-fold products of the listed generators."""
    if n < 1:
        raise ValueError("power must be positive")
    if n == 1:
        return I
    gens = I.generators
    if not gens:
        return I
    prods, seen = [], set()
    for combo in combinations_with_replacement(range(len(gens)), n):
        f = Polynomial.one(I.ring)
        for i in combo:
            f = f * gens[i]
        if f not in seen:
            seen.add(f)
            prods.append(f)
    return Ideal(I.presentation, prods)


# intersections and colons --------------------------------------------------
def _meet(ring: Ring, a, b) -> list[Polynomial]:
    """Generators of ``(a) ∩ (b)`` in S by eliminating t from ``t*(a) + (1-t)*(b)``."""
    ext = Ring(ring.p, (_AUX,) + ring.variables, "block", 1)
    t = Polynomial.variable(ext, _AUX)
    one_minus_t = 1 - t
    gens = [t * g.to_ring(ext) for g in a]
    gens += [one_minus_t * h.to_ring(ext) for h in b]
    G = buchberger(gens, ring=ext)
    return [g.to_ring(ring) for g in eliminate(G, {_AUX})]


def intersect(J: Ideal, K: Ideal) -> Ideal:
    """``J ∩ K`` via fresh-variable elimination."""
    _same(J, K)
    if J.issubset(K):
        return J
    if K.issubset(J):
        return K
    return Ideal(J.presentation, _meet(J.ring, J.basis.elements, K.basis.elements))


def _permuted_ring(ring: Ring, last: int) -> Ring:
    names = [v for i, v in enumerate(ring.variables) if i != last] + [ring.variables[last]]
    return Ring(ring.p, tuple(names), "grevlex")


def _basis_with_last(J: Ideal, var: int) -> GroebnerBasis:
    if var == J.ring.nvars - 1:
        return J.basis
    cache = J.__dict__.setdefault("_perm_bases", {})
    if var not in cache:
        ring = _permuted_ring(J.ring, var)
        cache[var] = buchberger([g.to_ring(ring) for g in J.basis.elements], ring=ring)
    return cache[var]


def _strip_last(G: GroebnerBasis, k: int | None) -> list[Polynomial]:
    """Divide each element by the largest power (at most k) of the last variable."""
    ring = G.ring
    last = ring.nvars - 1
    unit = ring.codec.unit(last)
    out = []
    for g in G.elements:
        nu = min(ring.codec.decode(key)[last] for key in g.term_map)
        if k is not None:
            nu = min(nu, k)
        out.append(Polynomial(ring, {key - nu * unit: c for key, c in g.term_map.items()}) if nu else g)
    return out


def variable_colon(J: Ideal, var: int, k: int | None = 1) -> Ideal:
    """``(J : x_var^k)``; ``k=None`` gives the saturation ``(J : x_var^∞)``.

    Homogeneous ideals use a grevlex basis with ``x_var`` last, where the
    lead term is divisible by ``x_var`` exactly when the whole element is.
    """
    if J.homogeneous:
        G = _basis_with_last(J, var)
        gens = [g.to_ring(J.ring) for g in _strip_last(G, k)]
        return Ideal(J.presentation, gens)
    x = Polynomial.variable(J.ring, J.ring.variables[var])
    if k is not None:
        return _colon_by_intersection(J, x**k)
    ring = J.ring
    ext = Ring(ring.p, (_AUX,) + ring.variables, "block", 1)
    u = Polynomial.variable(ext, _AUX)
    gens = [g.to_ring(ext) for g in J.basis.elements] + [1 - u * x.to_ring(ext)]
    kept = eliminate(buchberger(gens, ring=ext), {_AUX})
    return Ideal(J.presentation, [g.to_ring(ring) for g in kept])


def _colon_by_intersection(J: Ideal, f: Polynomial) -> Ideal:
    # (f) here is principal in S, without the relations
    meet = _meet(J.ring, J.basis.elements, [f])
    return Ideal(J.presentation, [exact_divide(g, f) for g in meet])


def colon_element(J: Ideal, f: Polynomial) -> Ideal:
    """``(J : f) = {g : g f ∈ J}``."""
    if isinstance(f, str):
        f = parse_polynomial(f, J.ring)
    f = f.to_ring(J.ring)
    if f.is_zero():
        raise ZeroDivisionError("colon by the zero element")
    if f.is_constant():
        return J
    if J.contains(f):
        return J.presentation.unit_ideal()
    if f.is_monomial() and J.homogeneous:
        out = J
        for var, e in enumerate(f.lm):
            if e:
                out = variable_colon(out, var, e)
        return out
    return _colon_by_intersection(J, f)


def colon_ideal(J: Ideal, K: Ideal) -> Ideal:
    """``(J : K)`` as the intersection of element colons over K's generators."""
    _same(J, K)
    rel = J.presentation.relation_ideal
    gens = [k for k in K.generators if not rel.contains(k)]
    if not gens:
        raise ZeroDivisionError("colon by the zero ideal")
    out = None
    for k in gens:
        c = colon_element(J, k)
        out = c if out is None else intersect(out, c)
        if out == J:
            break
    return out


def saturation(J: Ideal) -> Ideal:
    """``J^sat = (J : m^∞)`` for m the ideal of all variables.

    Computed as the intersection of the single-variable saturations; when one
    of them is contained in all the others it is the answer outright.
    """
    cached = J.__dict__.get("_saturation")
    if cached is not None:
        return cached
    if J.is_unit():
        sat = J
    else:
        n = J.ring.nvars
        order = [n - 1] + list(range(n - 1))
        parts = []
        for var in order:
            K = variable_colon(J, var, None)
            if K == J:
                # x_var is a nonzerodivisor on S/J, so J is already saturated
                parts = [J]
                break
            parts.append(K)
        sat = None
        non_unit = [K for K in parts if not K.is_unit()]
        if not non_unit:
            sat = J.presentation.unit_ideal()
        else:
            for K in non_unit:
                if all(K is L or K.issubset(L) for L in non_unit):
                    sat = K
                    break
            if sat is None:
                sat = non_unit[0]
                for K in non_unit[1:]:
                    sat = intersect(sat, K)
        if sat == J:
            sat = J
    J.__dict__["_saturation"] = sat
    return sat


def torsion_exponent(J: Ideal, sat: Ideal | None = None) -> int:
    """Smallest t with ``m^t J^sat ⊆ J``, i.e. with ``m^t H^0_m(R/J) = 0``.

    For each generator g of the saturation, the spans of ``m^t g`` modulo J
    are tracked as echelonized normal forms until they vanish.
    """
    if sat is None:
        sat = saturation(J)
    G = J.basis
    ring = J.ring
    p = ring.p
    xs = [Polynomial.variable(ring, v) for v in ring.variables]
    best = 0
    for g in sat.basis.elements:
        layer = [r for r in [G.reduce(g)] if not r.is_zero()]
        t = 0
        while layer:
            t += 1
            if t > SATURATION_CAP:
                raise RuntimeError("torsion exponent search exceeded the iteration cap")
            pivots: dict[int, dict[int, int]] = {}
            nxt = []
            for v in layer:
                for x in xs:
                    r = G.reduce(v * x)
                    vec = _echelon_insert(pivots, dict(r.term_map), p)
                    if vec is not None:
                        nxt.append(Polynomial(ring, vec))
            layer = nxt
        best = max(best, t)
    return best


def _echelon_insert(pivots: dict[int, dict[int, int]], vec: dict[int, int], p: int):
    while vec:
        k = max(vec)
        piv = pivots.get(k)
        if piv is None:
            inv = pow(vec[k], p - 2, p)
            vec = {kk: c * inv % p for kk, c in vec.items()}
            pivots[k] = vec
            return vec
        c = vec[k]
        for kk, pc in piv.items():
            v = (vec.get(kk, 0) - c * pc) % p
            if v:
                vec[kk] = v
            else:
                vec.pop(kk, None)
    return None


def saturate_irrelevant(J: Ideal) -> tuple[Ideal, int]:
    """Return ``(J^sat, k)`` where k is the first step with ``(J : m^k) = (J : m^(k+1))``.

    The chain ``J_k = (J : m^k)`` stabilizes exactly when ``m^k J^sat ⊆ J``,
    so the step equals :func:`torsion_exponent`.
    """
    sat = saturation(J)
    if sat == J:
        return sat, 0
    return sat, torsion_exponent(J, sat)
