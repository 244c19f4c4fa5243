"""Prime fields, polynomial ring descriptors and packed monomial encodings.

Monomials are stored as single Python integers ("keys") whose integer order
is the monomial order and whose integer sum is the monomial product.  Every
key is built from fixed-width fields:

* grevlex: field ``k`` holds the partial sum ``e_1 + ... + e_{k+1}``; the top
  field is the total degree.  Comparing partial sums from the top reproduces
  graded reverse lexicographic comparison.
* lex: field ``n-1-i`` holds ``e_i``.
* block: the first ``k`` variables form a grevlex block placed above a grevlex
  block for the remaining variables.

All three encodings are linear in the exponent vector, so multiplication is
addition of keys and division by a dividing monomial is subtraction.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property

FIELD_BITS = 32
MAX_EXPONENT = 2**31 - 1
_NAME = re.compile(r"^_?[A-Za-z][A-Za-z0-9_]*$")


class ExponentOverflowError(OverflowError):
    pass


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for sp in small:
        if n % sp == 0:
            return n == sp
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or isinstance(self.p, bool):
            raise TypeError("characteristic must be an integer")
        if not 2 <= self.p < 2**31:
            raise ValueError(f"characteristic {self.p} outside [2, 2^31)")
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    def __call__(self, value: int) -> int:
        return value % self.p

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a prime field")
        return pow(a, self.p - 2, self.p)


class MonomialCodec:
    """Order-preserving, additive packing of exponent vectors into ints."""

    def __init__(self, nvars: int, order: str = "grevlex", block: int = 0):
        if order not in ("grevlex", "lex", "block"):
            raise ValueError(f"unknown monomial order {order!r}")
        if order == "block" and not 0 < block < nvars:
            raise ValueError("block order needs 0 < block < number of variables")
        self.n = nvars
        self.order = order
        self.block = block if order == "block" else 0
        W = FIELD_BITS
        self.width = W
        self.mask = (1 << W) - 1
        self.full = (1 << (W * nvars)) - 1
        self.guard = sum(1 << (W * j + W - 1) for j in range(nvars))
        # fields that start a partial-sum run (no predecessor to subtract)
        if order == "grevlex":
            restarts = {0}
        elif order == "block":
            restarts = {0, nvars - block}
        else:
            restarts = set(range(nvars))
        self._sub_mask = sum(
            self.mask << (W * j) for j in range(nvars) if j not in restarts
        )
        # field position holding e_i (after differencing) for each variable
        if order == "grevlex":
            self._pos = list(range(nvars))
        elif order == "lex":
            self._pos = [nvars - 1 - i for i in range(nvars)]
        else:
            lo = nvars - block
            self._pos = [lo + i for i in range(block)] + list(range(lo))
        self._unit = [self.encode(tuple(int(i == j) for j in range(nvars))) for i in range(nvars)]
        self._decode_cache: dict[int, tuple[int, ...]] = {}

    def __reduce__(self):
        return (MonomialCodec, (self.n, self.order, self.block))

    def encode(self, exps) -> int:
        W = self.width
        key = 0
        if self.order == "lex":
            for i, e in enumerate(exps):
                key |= e << (W * (self.n - 1 - i))
            return key
        if self.order == "grevlex":
            runs = [(0, self.n, 0)]
        else:
            lo = self.n - self.block
            runs = [(0, self.block, lo), (self.block, self.n, 0)]
        for start, stop, base in runs:
            s = 0
            for k in range(start, stop):
                s += exps[k]
                key |= s << (W * (base + k - start))
        return key

    def packed_exponents(self, key: int) -> int:
        """Exponents of ``key`` in guarded fields (field layout per ``_pos``)."""
        return key - ((key << self.width) & self._sub_mask)

    def divides(self, a_packed: int, b_packed: int) -> bool:
        G = self.guard
        return ((b_packed | G) - a_packed) & G == G

    def decode(self, key: int) -> tuple[int, ...]:
        hit = self._decode_cache.get(key)
        if hit is not None:
            return hit
        ep = self.packed_exponents(key)
        W, m = self.width, self.mask
        exps = tuple((ep >> (W * j)) & m for j in self._pos)
        if len(self._decode_cache) < 200000:
            self._decode_cache[key] = exps
        return exps

    def degree(self, key: int) -> int:
        if self.order == "grevlex":
            return key >> (self.width * (self.n - 1))
        return sum(self.decode(key))

    def unit(self, i: int) -> int:
        return self._unit[i]


ORDERS = ("grevlex", "lex", "block")


@dataclass(frozen=True)
class Ring:
    """Polynomial ring F_p[variables] with a monomial order.

    ``order`` is ``"grevlex"`` (default), ``"lex"`` or ``"block"``; for the
    block order the first ``block`` variables form the eliminated block.
    """

    p: int
    variables: tuple[str, ...]
    order: str = "grevlex"
    block: int = 0
    _codec: MonomialCodec | None = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        PrimeField(self.p)
        vs = tuple(self.variables)
        object.__setattr__(self, "variables", vs)
        if not vs:
            raise ValueError("a ring needs at least one variable")
        for v in vs:
            if not isinstance(v, str) or not _NAME.match(v):
                raise ValueError(f"invalid variable name {v!r}")
        if len(set(vs)) != len(vs):
            raise ValueError("variable names must be unique")
        if self.order not in ORDERS:
            raise ValueError(f"unknown monomial order {self.order!r}")
        object.__setattr__(self, "_codec", MonomialCodec(len(vs), self.order, self.block))

    @property
    def codec(self) -> MonomialCodec:
        return self._codec

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @cached_property
    def prime_field(self) -> PrimeField:
        return PrimeField(self.p)

    def index(self, name: str) -> int:
        return self.variables.index(name)

    def with_order(self, order: str, block: int = 0) -> "Ring":
        return Ring(self.p, self.variables, order, block)

    def permuted(self, variables) -> "Ring":
        return Ring(self.p, tuple(variables), self.order, self.block)

    def __str__(self):
        return f"F_{self.p}[{','.join(self.variables)}] ({self.order})"
