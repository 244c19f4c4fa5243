"""Combinatorics of monomial ideals: minimal generators and Hilbert numerators.

Integer polynomials in ``t`` are plain lists of coefficients, lowest degree
first, with trailing zeros stripped.
"""

from __future__ import annotations

from math import comb


def trim(a: list[int]) -> list[int]:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def padd(a: list[int], b: list[int]) -> list[int]:
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def psub(a: list[int], b: list[int]) -> list[int]:
    return padd(a, [-c for c in b])


def pshift(a: list[int], d: int) -> list[int]:
    return [0] * d + list(a) if a else []


def pmul(a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(out)


def peval(a: list[int], x) -> int:
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def divide_one_minus_t(a: list[int], times: int = 1) -> list[int]:
    """Exact quotient ``a / (1-t)^times``; ValueError if not divisible."""
    q = trim(a)
    for _ in range(times):
        if not q:
            return []
        if sum(q) != 0:
            raise ValueError("polynomial is not divisible by (1-t)")
        acc, out = 0, []
        for c in q[:-1]:
            acc += c
            out.append(acc)
        q = trim(out)
    return q


def root_one_multiplicity(a: list[int]) -> int:
    """Multiplicity of t = 1 as a root of a nonzero polynomial."""
    a = trim(a)
    if not a:
        raise ValueError("zero polynomial")
    k = 0
    while sum(a) == 0:
        a = divide_one_minus_t(a)
        k += 1
    return k


def series_coefficient(numerator: list[int], nvars: int, d: int) -> int:
    """Coefficient of ``t^d`` in ``numerator / (1-t)^nvars``."""
    total = 0
    for j, c in enumerate(numerator):
        if c and j <= d:
            total += c * comb(d - j + nvars - 1, nvars - 1)
    return total


def divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def minimalize(gens) -> list[tuple[int, ...]]:
    """Minimal generators of the monomial ideal spanned by ``gens``."""
    ordered = sorted(set(map(tuple, gens)), key=lambda m: (sum(m), m))
    out: list[tuple[int, ...]] = []
    for m in ordered:
        if not any(divides(g, m) for g in out):
            out.append(m)
    return out


def has_finite_colength(gens, nvars: int) -> bool:
    """True iff every variable has a pure power among ``gens``."""
    pure = set()
    for m in gens:
        support = [i for i, e in enumerate(m) if e]
        if len(support) == 1:
            pure.add(support[0])
        elif not support:
            return True
    return len(pure) == nvars


def _numerator(gens: list[tuple[int, ...]], nvars: int) -> list[int]:
    if not gens:
        return [1]
    if any(sum(g) == 0 for g in gens):
        return []
    supports = [frozenset(i for i, e in enumerate(g) if e) for g in gens]
    seen: set[int] = set()
    coprime = True
    for s in supports:
        if seen & s:
            coprime = False
            break
        seen |= s
    if coprime:
        out = [1]
        for g in gens:
            out = psub(out, pshift(out, sum(g)))
        return out
    counts = [0] * nvars
    for g, s in zip(gens, supports):
        if len(s) > 1:
            for i in s:
                counts[i] += 1
    var = max(range(nvars), key=lambda i: (counts[i], -i))
    exps = sorted(g[var] for g, s in zip(gens, supports) if len(s) > 1 and g[var] > 0)
    e = exps[(len(exps) - 1) // 2]
    for g, s in zip(gens, supports):
        if s == {var}:
            # keep x^e outside M so the left branch makes progress
            e = min(e, g[var] - 1)
    pivot = tuple(e if i == var else 0 for i in range(nvars))
    left = minimalize(gens + [pivot])
    right = minimalize(
        tuple(max(0, x - e) if i == var else x for i, x in enumerate(g)) for g in gens
    )
    return padd(_numerator(left, nvars), pshift(_numerator(right, nvars), e))


def hilbert_numerator(gens, nvars: int) -> list[int]:
    """Numerator ``N`` with ``HS(S/M) = N(t)/(1-t)^nvars`` for monomial ideal M.

    Recursive pivot splitting: ``N(M) = N(M + (x^e)) + t^e N(M : x^e)``,
    with coprime-support generators as the base case.
    """
    return _numerator(minimalize(gens), nvars)
