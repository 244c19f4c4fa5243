"""Sparse multivariate polynomials over a prime field and their text syntax."""

from __future__ import annotations

from functools import cached_property

from .ring import MAX_EXPONENT, ExponentOverflowError, Ring


class ParseError(ValueError):
    pass


def _check_degree(d: int) -> None:
    if d > MAX_EXPONENT:
        raise ExponentOverflowError(f"total degree {d} exceeds 2^31-1")


class Polynomial:
    """Immutable polynomial: a map from packed monomial key to nonzero residue.

    The canonical term sequence (``terms()``) lists monomials strictly
    descending in the ring's order.  Two polynomials are equal iff they share
    a ring and their term maps coincide.
    """

    def __init__(self, ring: Ring, terms: dict[int, int] | None = None):
        self.ring = ring
        self._t = terms if terms is not None else {}

    # construction -----------------------------------------------------
    @classmethod
    def zero(cls, ring: Ring) -> Polynomial:
        return cls(ring, {})

    @classmethod
    def constant(cls, ring: Ring, c: int) -> Polynomial:
        c %= ring.p
        return cls(ring, {0: c} if c else {})

    @classmethod
    def one(cls, ring: Ring) -> Polynomial:
        return cls.constant(ring, 1)

    @classmethod
    def variable(cls, ring: Ring, name: str) -> Polynomial:
        return cls(ring, {ring.codec.unit(ring.index(name)): 1})

    @classmethod
    def monomial(cls, ring: Ring, exps, coeff: int = 1) -> Polynomial:
        exps = tuple(exps)
        if len(exps) != ring.nvars:
            raise ValueError("exponent vector length does not match the ring")
        if any(e < 0 for e in exps):
            raise ValueError("negative exponent")
        _check_degree(sum(exps))
        coeff %= ring.p
        return cls(ring, {ring.codec.encode(exps): coeff} if coeff else {})

    @classmethod
    def from_terms(cls, ring: Ring, terms) -> Polynomial:
        enc, p = ring.codec.encode, ring.p
        out: dict[int, int] = {}
        for exps, c in terms:
            exps = tuple(exps)
            if len(exps) != ring.nvars or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent vector {exps}")
            _check_degree(sum(exps))
            k = enc(exps)
            v = (out.get(k, 0) + c) % p
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return cls(ring, out)

    @classmethod
    def parse(cls, src: str, ring: Ring) -> Polynomial:
        return parse_polynomial(src, ring)

    # inspection -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self._t

    def __bool__(self) -> bool:
        return bool(self._t)

    def __len__(self) -> int:
        return len(self._t)

    @property
    def term_map(self) -> dict[int, int]:
        return self._t

    def terms(self) -> list[tuple[tuple[int, ...], int]]:
        dec = self.ring.codec.decode
        return [(dec(k), self._t[k]) for k in sorted(self._t, reverse=True)]

    @cached_property
    def lm_key(self) -> int:
        if not self._t:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self._t)

    @property
    def lm(self) -> tuple[int, ...]:
        return self.ring.codec.decode(self.lm_key)

    @property
    def lc(self) -> int:
        return self._t[self.lm_key]

    @cached_property
    def degrees(self) -> frozenset[int]:
        deg = self.ring.codec.degree
        return frozenset(deg(k) for k in self._t)

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max(self.degrees, default=-1)

    def is_homogeneous(self) -> bool:
        return len(self.degrees) <= 1

    def is_monomial(self) -> bool:
        return len(self._t) == 1

    def is_constant(self) -> bool:
        return not self._t or (len(self._t) == 1 and 0 in self._t)

    def variables_used(self) -> set[int]:
        used: set[int] = set()
        for exps, _ in self.terms():
            used.update(i for i, e in enumerate(exps) if e)
        return used

    # arithmetic -------------------------------------------------------
    def _same_ring(self, other: Polynomial) -> None:
        if self.ring != other.ring:
            raise ValueError("polynomials live in different rings")

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            self._same_ring(other)
            return other
        if isinstance(other, int):
            return Polynomial.constant(self.ring, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.p
        out = dict(self._t)
        for k, c in other._t.items():
            v = (out.get(k, 0) + c) % p
            if v:
                out[k] = v
            else:
                del out[k]
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        return Polynomial(self.ring, {k: p - c for k, c in self._t.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def scale(self, c: int) -> Polynomial:
        c %= self.ring.p
        if not c:
            return Polynomial.zero(self.ring)
        p = self.ring.p
        return Polynomial(self.ring, {k: v * c % p for k, v in self._t.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self._t or not other._t:
            return Polynomial.zero(self.ring)
        _check_degree(self.degree + other.degree)
        p = self.ring.p
        out: dict[int, int] = {}
        a, b = (self._t, other._t) if len(self._t) <= len(other._t) else (other._t, self._t)
        for ka, ca in a.items():
            for kb, cb in b.items():
                k = ka + kb
                out[k] = (out.get(k, 0) + ca * cb) % p
        return Polynomial(self.ring, {k: v for k, v in out.items() if v})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Polynomial:
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Polynomial.one(self.ring)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def monic(self) -> Polynomial:
        if not self._t:
            return self
        return self.scale(self.ring.prime_field.inv(self.lc))

    def mul_monomial(self, key: int, coeff: int = 1) -> Polynomial:
        p = self.ring.p
        return Polynomial(self.ring, {k + key: c * coeff % p for k, c in self._t.items()})

    def frobenius(self, e: int) -> Polynomial:
        """Return ``f^(p^e)``, computed termwise.

        Over F_p the map is additive and fixes coefficients, so every exponent
        is scaled by ``q = p^e`` and coefficients are left alone.
        """
        if e < 0:
            raise ValueError("Frobenius exponent must be nonnegative")
        q = self.ring.p**e
        if self._t:
            _check_degree(self.degree * q)
        # keys are linear in the exponents
        return Polynomial(self.ring, {k * q: c for k, c in self._t.items()})

    def to_ring(self, ring: Ring) -> Polynomial:
        """Re-express in ``ring`` (same prime, variables matched by name)."""
        if ring == self.ring:
            return self
        if ring.p != self.ring.p:
            raise ValueError("cannot move a polynomial between characteristics")
        idx = [ring.variables.index(v) if v in ring.variables else -1 for v in self.ring.variables]
        enc, dec = ring.codec.encode, self.ring.codec.decode
        out = {}
        n = ring.nvars
        for k, c in self._t.items():
            src = dec(k)
            exps = [0] * n
            for i, e in enumerate(src):
                if e:
                    if idx[i] < 0:
                        raise ValueError(f"variable {self.ring.variables[i]} missing in target ring")
                    exps[idx[i]] = e
            out[enc(exps)] = c
        return Polynomial(ring, out)

    # comparison / display --------------------------------------------
    def __eq__(self, other):
        if isinstance(other, int):
            other = Polynomial.constant(self.ring, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self._t == other._t

    def __hash__(self):
        return hash((self.ring, frozenset(self._t.items())))

    def __getstate__(self):
        return {"ring": self.ring, "_t": self._t}

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({str(self)!r})"


def format_monomial(exps, names) -> str:
    parts = []
    for e, v in zip(exps, names):
        if e == 1:
            parts.append(v)
        elif e:
            parts.append(f"{v}^{e}")
    return "*".join(parts)


def format_polynomial(f: Polynomial) -> str:
    if f.is_zero():
        return "0"
    names = f.ring.variables
    out = []
    for exps, c in f.terms():
        mono = format_monomial(exps, names)
        if not mono:
            out.append(str(c))
        elif c == 1:
            out.append(mono)
        else:
            out.append(f"{c}*{mono}")
    return " + ".join(out)


class _Parser:
    def __init__(self, src: str, ring: Ring):
        self.raw = src
        self.s = "".join(src.split())
        self.i = 0
        self.ring = ring
        self.names = sorted(ring.variables, key=len, reverse=True)

    def error(self, msg: str):
        raise ParseError(f"{msg} in {self.raw!r}")

    def peek(self) -> str:
        return self.s[self.i] if self.i < len(self.s) else ""

    def uint(self) -> int:
        j = self.i
        while j < len(self.s) and self.s[j].isdigit():
            j += 1
        if j == self.i:
            self.error(f"expected a number at position {self.i}")
        v = int(self.s[self.i:j])
        self.i = j
        return v

    def at_var(self) -> bool:
        ch = self.peek()
        return ch.isalpha() or ch == "_"

    def var(self) -> int:
        for name in self.names:
            if self.s.startswith(name, self.i):
                self.i += len(name)
                return self.ring.index(name)
        j = self.i
        while j < len(self.s) and (self.s[j].isalnum() or self.s[j] == "_"):
            j += 1
        self.error(f"undeclared variable {self.s[self.i:j]!r}")

    def factors(self, exps: list[int]) -> None:
        self.factor(exps)
        while True:
            if self.peek() == "*":
                self.i += 1
                if not self.at_var():
                    self.error(f"expected a variable at position {self.i}")
                self.factor(exps)
            elif self.at_var():
                self.factor(exps)
            else:
                return

    def factor(self, exps: list[int]) -> None:
        v = self.var()
        e = 1
        if self.peek() == "^":
            self.i += 1
            e = self.uint()
        exps[v] += e
        if exps[v] > MAX_EXPONENT:
            self.error("exponent overflow (> 2^31-1)")

    def term(self) -> tuple[list[int], int]:
        exps = [0] * self.ring.nvars
        coeff = 1
        if self.peek().isdigit():
            coeff = self.uint()
            if self.peek() == "*":
                self.i += 1
                if not self.at_var():
                    self.error(f"expected a variable at position {self.i}")
                self.factors(exps)
            elif self.at_var():
                self.factors(exps)
        elif self.at_var():
            self.factors(exps)
        else:
            self.error(f"malformed token at position {self.i}")
        if sum(exps) > MAX_EXPONENT:
            self.error("exponent overflow (> 2^31-1)")
        return exps, coeff

    def poly(self) -> Polynomial:
        if not self.s:
            self.error("empty polynomial")
        terms = []
        sign = 1
        if self.peek() == "-":
            sign = -1
            self.i += 1
        exps, c = self.term()
        terms.append((exps, sign * c))
        while self.i < len(self.s):
            ch = self.peek()
            if ch not in "+-":
                self.error(f"malformed token {ch!r} at position {self.i}")
            self.i += 1
            exps, c = self.term()
            terms.append((exps, c if ch == "+" else -c))
        return Polynomial.from_terms(self.ring, terms)


def parse_polynomial(src: str, ring: Ring) -> Polynomial:
    """Parse ``src`` in the ASCII polynomial syntax over ``ring``.

    Coefficients are reduced mod p; juxtaposition and ``*`` both multiply.
    """
    if not isinstance(src, str):
        raise ParseError(f"expected a string, got {type(src).__name__}")
    return _Parser(src, ring).poly()


def poly_mul(f: Polynomial, g: Polynomial) -> Polynomial:
    return f * g


def frobenius_image(f: Polynomial, e: int) -> Polynomial:
    return f.frobenius(e)
