"""Sparse multivariate polynomials over F_p and the Frobenius endomorphism.

Polynomials are immutable maps from exponent tuples to nonzero residues.  They
always live in the ambient polynomial ring; a :class:`RingSpec` with a
defining ideal only changes how ideals are interpreted (see ``groebner``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from . import config
from .errors import ExponentOverflowError, RingMismatchError

Monomial = tuple[int, ...]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_power_exponent(q: int, p: int) -> int | None:
    """Return e with q == p**e, or None when q is not a power of p."""
    if q < 1:
        return None
    e = 0
    while q % p == 0:
        q //= p
        e += 1
    return e if q == 1 else None


def grevlex_key(m: Monomial) -> tuple[int, ...]:
    return (sum(m),) + tuple(-e for e in reversed(m))


@dataclass(frozen=True)
class RingSpec:
    """F_p[variables] modulo an optional defining ideal."""

    prime: int
    variables: tuple[str, ...]
    defining_ideal: tuple["Polynomial", ...] = ()
    _ambient: "RingSpec | None" = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "defining_ideal", tuple(self.defining_ideal))
        if not isinstance(self.prime, int) or not is_prime(self.prime):
            raise ValueError(f"characteristic must be a prime, got {self.prime!r}")
        if not self.variables:
            raise ValueError("a ring needs at least one variable")
        if any(not v for v in self.variables):
            raise ValueError("variable names must be nonempty")
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"duplicate variable names in {self.variables}")
        for g in self.defining_ideal:
            if g.ring.key != self.key:
                raise RingMismatchError("defining ideal generator from a different ring")
            if g.is_zero():
                raise ValueError("defining ideal generators must be nonzero")

    @property
    def key(self) -> tuple[int, tuple[str, ...]]:
        return (self.prime, self.variables)

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def ambient(self) -> "RingSpec":
        if not self.defining_ideal:
            return self
        if self._ambient is None:
            object.__setattr__(self, "_ambient", RingSpec(self.prime, self.variables))
        return self._ambient

    @property
    def is_quotient(self) -> bool:
        return bool(self.defining_ideal)

    def quotient(self, generators: Iterable["Polynomial"]) -> "RingSpec":
        return RingSpec(self.prime, self.variables, tuple(generators))

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c: int) -> "Polynomial":
        c %= self.prime
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def monomial(self, exps: Iterable[int], coeff: int = 1) -> "Polynomial":
        exps = tuple(exps)
        if len(exps) != self.nvars or any(e < 0 for e in exps):
            raise ValueError(f"bad exponent vector {exps} for {self.nvars} variables")
        coeff %= self.prime
        return Polynomial(self, {exps: coeff} if coeff else {})

    def gen(self, name: str) -> "Polynomial":
        try:
            i = self.variables.index(name)
        except ValueError:
            raise KeyError(f"no variable {name!r} in {self.variables}") from None
        return self.monomial(tuple(int(j == i) for j in range(self.nvars)))

    def gens(self) -> tuple["Polynomial", ...]:
        return tuple(self.gen(v) for v in self.variables)

    def describe(self) -> str:
        text = f"Fp({self.prime})[{','.join(self.variables)}]"
        if self.defining_ideal:
            text += " / (" + ", ".join(str(g) for g in self.defining_ideal) + ")"
        return text


class Polynomial:
    """An element of F_p[x_1, ..., x_n] in canonical sparse form."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: RingSpec, terms: Mapping[Monomial, int], *, _trusted: bool = False):
        self.ring = ring.ambient
        if _trusted:
            self.terms = terms
        else:
            p = ring.prime
            clean = {}
            for m, c in terms.items():
                c %= p
                if c:
                    clean[tuple(m)] = c
            self.terms = clean
        self._hash = None

    # --- construction helpers -------------------------------------------------

    def _new(self, terms: dict) -> "Polynomial":
        return Polynomial(self.ring, terms, _trusted=True)

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring.key != self.ring.key:
                raise RingMismatchError(
                    f"incompatible operands: {self.ring.describe()} vs {other.ring.describe()}")
            return other
        if isinstance(other, int):
            return self.ring.const(other)
        return NotImplemented

    # --- predicates and accessors ---------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def variables_used(self) -> set[int]:
        return {i for m in self.terms for i, e in enumerate(m) if e}

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def constant_value(self) -> int:
        return self.terms.get((0,) * self.ring.nvars, 0)

    # --- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.prime
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = (out.get(m, 0) + c) % p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.prime
        return self._new({m: p - c for m, c in self.terms.items()})

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

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.prime
        out: dict[Monomial, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = (out.get(m, 0) + c1 * c2) % p
        _check_exponents(out)
        return self._new({m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def scale(self, c: int) -> "Polynomial":
        c %= self.ring.prime
        if not c:
            return self.ring.zero()
        return self._new({m: (v * c) % self.ring.prime for m, v in self.terms.items()})

    def mul_monomial(self, mono: Monomial, c: int = 1) -> "Polynomial":
        p = self.ring.prime
        c %= p
        if not c:
            return self.ring.zero()
        out = {tuple(a + b for a, b in zip(m, mono)): (v * c) % p for m, v in self.terms.items()}
        _check_exponents(out)
        return self._new(out)

    def __pow__(self, n: int) -> "Polynomial":
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial exponent must be a nonnegative integer")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def substitute_zero(self, names: Iterable[str]) -> "Polynomial":
        """Set the named variables to zero."""
        idx = [self.ring.variables.index(n) for n in names]
        return self._new({m: c for m, c in self.terms.items() if all(m[i] == 0 for i in idx)})

    def monic(self, key=grevlex_key) -> "Polynomial":
        if self.is_zero():
            return self
        lead = max(self.terms, key=key)
        return self.scale(pow(self.terms[lead], -1, self.ring.prime))

    def leading_monomial(self, key=grevlex_key) -> Monomial:
        return max(self.terms, key=key)

    # --- comparisons and printing ---------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = self.ring.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring.key == other.ring.key and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring.key, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.terms)

    def sorted_terms(self) -> list[tuple[Monomial, int]]:
        return sorted(self.terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True)

    def __str__(self) -> str:
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"Polynomial({format_polynomial(self)!r}, p={self.ring.prime})"


def _check_exponents(terms: Mapping[Monomial, int]) -> None:
    cap = config.current().max_exponent
    for m in terms:
        for e in m:
            if e > cap:
                raise ExponentOverflowError(f"exponent {e} exceeds the configured cap {cap}")


def format_monomial(m: Monomial, variables: tuple[str, ...]) -> str:
    parts = []
    for v, e in zip(variables, m):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "*".join(parts)


def format_polynomial(f: Polynomial) -> str:
    """Canonical text: grevlex-descending terms, coefficients as symmetric residues."""
    if f.is_zero():
        return "0"
    p = f.ring.prime
    pieces = []
    for i, (m, c) in enumerate(f.sorted_terms()):
        sign = "+"
        if p > 2 and c > p // 2:
            sign, c = "-", p - c
        mono = format_monomial(m, f.ring.variables)
        if not mono:
            body = str(c)
        elif c == 1:
            body = mono
        else:
            body = f"{c}*{mono}"
        if i == 0:
            pieces.append(("-" if sign == "-" else "") + body)
        else:
            pieces.append(f" {sign} {body}")
    return "".join(pieces)


def frobenius_power(f: Polynomial, e: int) -> Polynomial:
    """Return f**(p**e), computed term-wise (c*m -> c*m**q; c**q == c in F_p).

    For small inputs the result is cross-checked against repeated p-th powers.
    """
    if e < 0:
        raise ValueError("Frobenius iterate must be nonnegative")
    p = f.ring.prime
    q = p**e
    cap = config.current().max_exponent
    out = {}
    for m, c in f.terms.items():
        mq = tuple(a * q for a in m)
        if any(a > cap for a in mq):
            raise ExponentOverflowError(f"exponent overflow computing a {q}-th power (cap {cap})")
        out[mq] = c
    result = Polynomial(f.ring, out, _trusted=True)
    if config.current().check_frobenius and e and len(f.terms) <= 4 and q <= 27:
        slow = f
        for _ in range(e):
            slow = slow**p
        if slow != result:
            raise AssertionError("freshman's dream cross-check failed")
    return result
