"""Buchberger's algorithm producing reduced Groebner bases.

Polynomials are handled as ``{key: coeff}`` maps over a ring's packed
monomial codec (see :mod:`frobx.ring`), so monomial products are integer
additions and order comparisons are integer comparisons.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .poly import Polynomial
from .ring import MAX_EXPONENT, ExponentOverflowError, Ring


class OrderMismatchError(ValueError):
    pass


class _Elem:
    __slots__ = ("key", "ep", "exps", "tail", "terms", "sugar")

    def __init__(self, terms: dict[int, int], codec, sugar: int = 0):
        self.terms = terms
        self.key = max(terms)
        self.ep = codec.packed_exponents(self.key)
        self.exps = codec.decode(self.key)
        self.tail = [(k, c) for k, c in terms.items() if k != self.key]
        self.sugar = sugar


def _reduce(f: dict[int, int], reducers: list[_Elem], codec, p: int, full: bool = True) -> dict[int, int]:
    """Remainder of ``f`` on division by monic ``reducers``.

    With ``full=False`` only the leading term is reduced (top reduction).
    """
    if not f or not reducers:
        return dict(f)
    f = dict(f)
    rem: dict[int, int] = {}
    heap = [-k for k in f]
    heapq.heapify(heap)
    W, sub, G = codec.width, codec._sub_mask, codec.guard
    pop, push = heapq.heappop, heapq.heappush
    leads = [(r.ep, r.key, r.tail) for r in reducers]
    while heap:
        k = -pop(heap)
        c = f.pop(k, 0)
        if not c:
            continue
        ep = k - ((k << W) & sub)
        epg = ep | G
        for lep, lk, tail in leads:
            if (epg - lep) & G == G:
                u = k - lk
                for tk, tc in tail:
                    nk = tk + u
                    old = f.get(nk)
                    if old is None:
                        f[nk] = (-c * tc) % p
                        push(heap, -nk)
                    else:
                        v = (old - c * tc) % p
                        if v:
                            f[nk] = v
                        else:
                            del f[nk]
                break
        else:
            rem[k] = c
            if not full:
                rem.update(f)
                return rem
    return rem


def _monic(f: dict[int, int], p: int) -> dict[int, int]:
    lc = f[max(f)]
    if lc == 1:
        return f
    inv = pow(lc, p - 2, p)
    return {k: c * inv % p for k, c in f.items()}


def _lcm(a, b):
    return tuple(x if x >= y else y for x, y in zip(a, b))


def _groebner_terms(gens: list[dict[int, int]], ring: Ring) -> list[dict[int, int]]:
    codec, p = ring.codec, ring.p
    enc = codec.encode
    divides = codec.divides
    elems: list[_Elem] = []
    active: list[int] = []
    pairs: set[tuple[int, int]] = set()
    heap: list[tuple[int, int, int, int]] = []

    def lcm_key(i, j):
        return enc(_lcm(elems[i].exps, elems[j].exps))

    def update(ih):
        nonlocal active, pairs
        h = elems[ih]
        C = list(active)
        D: list[int] = []
        lcms = {ig: _lcm(h.exps, elems[ig].exps) for ig in C}
        ep_of = {ig: codec.packed_exponents(enc(lcms[ig])) for ig in C}
        for pos, ig in enumerate(C):
            g = elems[ig]
            L = ep_of[ig]
            coprime = h.key + g.key == enc(lcms[ig])
            if coprime:
                D.append(ig)
                continue
            rest = C[pos + 1:]
            if any(divides(ep_of[o], L) for o in rest) or any(divides(ep_of[o], L) for o in D):
                continue
            D.append(ig)
        new_pairs = []
        for ig in D:
            if h.key + elems[ig].key != enc(lcms[ig]):
                new_pairs.append((ig, ih))
        kept = set()
        for (i, j) in pairs:
            L = _lcm(elems[i].exps, elems[j].exps)
            Lk = enc(L)
            if (
                not divides(h.ep, codec.packed_exponents(Lk))
                or enc(_lcm(elems[i].exps, h.exps)) == Lk
                or enc(_lcm(elems[j].exps, h.exps)) == Lk
            ):
                kept.add((i, j))
        for pr in new_pairs:
            L = _lcm(elems[pr[0]].exps, elems[pr[1]].exps)
            if sum(L) > MAX_EXPONENT:
                raise ExponentOverflowError("S-pair degree exceeds 2^31-1")
            kept.add(pr)
            a, b = elems[pr[0]], elems[pr[1]]
            # sugar strategy: the degree the pair would have after homogenizing
            sugar = sum(L) + max(a.sugar - sum(a.exps), b.sugar - sum(b.exps))
            heapq.heappush(heap, (sugar, enc(L), pr[0], pr[1]))
        pairs = kept
        active = [ig for ig in active if not divides(h.ep, elems[ig].ep)] + [ih]

    def add(terms, sugar):
        elems.append(_Elem(terms, codec, sugar))
        update(len(elems) - 1)

    for g in gens:
        r = _reduce(g, [elems[i] for i in active], codec, p)
        if r:
            r = _monic(r, p)
            if 0 in r and len(r) == 1:
                return [{0: 1}]
            add(r, max(sum(codec.decode(k)) for k in g))

    while heap:
        sugar, Lk, i, j = heapq.heappop(heap)
        if (i, j) not in pairs:
            continue
        pairs.discard((i, j))
        f, g = elems[i], elems[j]
        uf, ug = Lk - f.key, Lk - g.key
        s: dict[int, int] = {}
        for k, c in f.tail:
            s[k + uf] = c
        for k, c in g.tail:
            nk = k + ug
            v = (s.get(nk, 0) - c) % p
            if v:
                s[nk] = v
            else:
                s.pop(nk, None)
        r = _reduce(s, [elems[a] for a in active], codec, p)
        if r:
            r = _monic(r, p)
            if 0 in r and len(r) == 1:
                return [{0: 1}]
            add(r, sugar)

    basis = sorted((elems[i] for i in active), key=lambda e: e.key)
    out = []
    for idx, e in enumerate(basis):
        others = basis[:idx] + basis[idx + 1:]
        out.append(_reduce(e.terms, others, codec, p))
    return out


@dataclass(frozen=True, eq=False)
class GroebnerBasis:
    """Reduced Groebner basis: monic, interreduced, sorted by leading monomial."""

    ring: Ring
    elements: tuple[Polynomial, ...]

    @property
    def order(self) -> str:
        return self.ring.order

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __eq__(self, other):
        if not isinstance(other, GroebnerBasis):
            return NotImplemented
        return self.ring == other.ring and self.elements == other.elements

    def __hash__(self):
        return hash((self.ring, self.elements))

    def is_unit(self) -> bool:
        return len(self.elements) == 1 and self.elements[0].is_constant()

    def is_zero(self) -> bool:
        return not self.elements

    def leading_monomials(self) -> list[tuple[int, ...]]:
        return [g.lm for g in self.elements]

    def _reducers(self) -> list[_Elem]:
        cache = self.__dict__.get("_elems")
        if cache is None:
            cache = [_Elem(g.term_map, self.ring.codec) for g in self.elements]
            object.__setattr__(self, "_elems", cache)
        return cache

    def reduce(self, f: Polynomial) -> Polynomial:
        if f.ring != self.ring:
            f = f.to_ring(self.ring)
        return Polynomial(self.ring, _reduce(f.term_map, self._reducers(), self.ring.codec, self.ring.p))

    def contains(self, f: Polynomial) -> bool:
        return self.reduce(f).is_zero()

    def __str__(self):
        return "[" + ", ".join(str(g) for g in self.elements) + "]"


def buchberger(generators, order: str | None = None, ring: Ring | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``generators``.

    ``order`` switches the monomial order of the generators' ring (``"lex"``,
    ``"grevlex"``); pass ``ring`` to compute in an explicit target ring
    (e.g. a block order).  Zero generators are ignored; no generators give
    the zero ideal's empty basis.
    """
    generators = list(generators)
    if ring is None:
        if not generators:
            raise ValueError("need a ring for an empty generator list")
        ring = generators[0].ring
        if order is not None:
            ring = ring.with_order(order)
    gens = [g.to_ring(ring).term_map for g in generators if not g.is_zero()]
    terms = _groebner_terms(gens, ring)
    elems = tuple(Polynomial(ring, t) for t in terms)
    return GroebnerBasis(ring, elems)


def normal_form(f: Polynomial, basis: GroebnerBasis) -> Polynomial:
    return basis.reduce(f)


def ideal_member(f: Polynomial, basis: GroebnerBasis) -> bool:
    return basis.contains(f)


def eliminate(basis: GroebnerBasis, drop) -> list[Polynomial]:
    """Basis elements free of the variables in ``drop``.

    The basis must come from a block order whose leading block is exactly
    ``drop``; an empty ``drop`` returns the basis unchanged.
    """
    drop = set(drop)
    if not drop:
        return list(basis.elements)
    ring = basis.ring
    lead = set(ring.variables[: ring.block]) if ring.order == "block" else set()
    if ring.order == "lex":
        # lex eliminates any leading run of variables
        k = len(drop)
        lead = set(ring.variables[:k])
    if lead != drop:
        raise OrderMismatchError(f"basis order {ring.order} does not eliminate {sorted(drop)}")
    idx = {ring.index(v) for v in drop}
    return [g for g in basis.elements if not (g.variables_used() & idx)]


def exact_divide(f: Polynomial, g: Polynomial) -> Polynomial:
    """Quotient ``f / g``; raises ValueError if ``g`` does not divide ``f``."""
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    ring, p = f.ring, f.ring.p
    codec = ring.codec
    gl = g.lm_key
    gep = codec.packed_exponents(gl)
    ginv = pow(g.lc, p - 2, p)
    gt = g.term_map
    rem = dict(f.term_map)
    quo: dict[int, int] = {}
    while rem:
        k = max(rem)
        if not codec.divides(gep, codec.packed_exponents(k)):
            raise ValueError("inexact polynomial division")
        u = k - gl
        c = rem[k] * ginv % p
        quo[u] = c
        for tk, tc in gt.items():
            nk = tk + u
            v = (rem.get(nk, 0) - c * tc) % p
            if v:
                rem[nk] = v
            else:
                rem.pop(nk, None)
    return Polynomial(ring, quo)
