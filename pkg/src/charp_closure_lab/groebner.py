"""Groebner-basis kernel: Buchberger with Gebauer-Moeller pair pruning.

Ideals of a quotient ring R = F_p[x]/J are handled in the ambient ring by
adjoining the generators of J to every ideal before any basis computation.
"""

from __future__ import annotations

import heapq
import itertools
import warnings
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from . import config
from .errors import BudgetExceededError, DimensionError, RingMismatchError, UnsupportedInputError
from .poly import Monomial, Polynomial, RingSpec, grevlex_key


@dataclass(frozen=True)
class MonomialOrder:
    kind: str = "grevlex"
    block: int = 0

    def __post_init__(self) -> None:
        if self.kind not in ("grevlex", "lex", "elim"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "elim" and self.block < 1:
            raise ValueError("elimination order needs a positive block size")

    def key(self, m: Monomial) -> tuple[int, ...]:
        if self.kind == "grevlex":
            return grevlex_key(m)
        if self.kind == "lex":
            return m
        k = self.block
        return grevlex_key(m[:k]) + grevlex_key(m[k:])

    def __str__(self) -> str:
        return f"elim({self.block})" if self.kind == "elim" else self.kind


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def elimination(k: int) -> MonomialOrder:
    return MonomialOrder("elim", k)


# --- raw kernel on {monomial: coeff} dicts --------------------------------------


def _divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def _coprime(a: Monomial, b: Monomial) -> bool:
    return all(not (x and y) for x, y in zip(a, b))


class _Basis:
    """Monic polynomials with their leading monomials, used as reducers."""

    def __init__(self, p: int, order: MonomialOrder, counter: list[int], limit: int):
        self.p = p
        self.key = order.key
        self.lts: list[Monomial] = []
        self.polys: list[dict] = []
        self.counter = counter
        self.limit = limit

    def lead(self, f: dict) -> Monomial:
        return max(f, key=self.key)

    def monic(self, f: dict) -> dict:
        lt = self.lead(f)
        inv = pow(f[lt], -1, self.p)
        return {m: (c * inv) % self.p for m, c in f.items()}

    def add(self, f: dict) -> int:
        self.lts.append(self.lead(f))
        self.polys.append(f)
        return len(self.polys) - 1

    def find_reducer(self, m: Monomial, skip: int = -1) -> int:
        for i, lt in enumerate(self.lts):
            if i != skip and lt is not None and _divides(lt, m):
                return i
        return -1

    def reduce(self, f: dict, skip: int = -1, full: bool = True) -> dict:
        """Remainder of f modulo the reducers (all monic)."""
        p = self.p
        key = self.key
        work = dict(f)
        heap = [(tuple(-k for k in key(m)), m) for m in work]
        heapq.heapify(heap)
        rem: dict = {}
        while heap:
            _, m = heapq.heappop(heap)
            c = work.pop(m, 0)
            if not c:
                continue
            i = self.find_reducer(m, skip)
            if i < 0:
                rem[m] = c
                if not full:
                    rem.update(work)
                    return rem
                continue
            self.counter[0] += 1
            if self.counter[0] > self.limit:
                raise BudgetExceededError(
                    f"Groebner reduction budget of {self.limit} steps exhausted",
                    {"reductions": self.counter[0], "basis_size": len(self.polys)})
            lt = self.lts[i]
            shift = tuple(a - b for a, b in zip(m, lt))
            for gm, gc in self.polys[i].items():
                if gm == lt:
                    continue
                nm = tuple(a + b for a, b in zip(gm, shift))
                old = work.get(nm)
                nv = ((old or 0) - c * gc) % p
                if nv:
                    if old is None:
                        heapq.heappush(heap, (tuple(-k for k in key(nm)), nm))
                    work[nm] = nv
                elif old is not None:
                    del work[nm]
        return rem


def _spoly(f: dict, lf: Monomial, g: dict, lg: Monomial, p: int) -> dict:
    lcm = _lcm(lf, lg)
    sf = tuple(a - b for a, b in zip(lcm, lf))
    sg = tuple(a - b for a, b in zip(lcm, lg))
    out = {}
    for m, c in f.items():
        out[tuple(a + b for a, b in zip(m, sf))] = c
    for m, c in g.items():
        nm = tuple(a + b for a, b in zip(m, sg))
        v = (out.get(nm, 0) - c) % p
        if v:
            out[nm] = v
        else:
            out.pop(nm, None)
    return out


def _buchberger(gens: Sequence[dict], p: int, order: MonomialOrder,
                cost: list[int] | None = None) -> list[dict]:
    """Reduced basis; ``cost`` receives [reduction steps, peak basis size]."""
    cfg = config.current()
    cost = [0, 0] if cost is None else cost
    counter = [0]
    B = _Basis(p, order, counter, cfg.gb_max_reductions)
    key = order.key
    pairs: dict[tuple[int, int], Monomial] = {}

    def update(h: int) -> None:
        lh = B.lts[h]
        old = [i for i in range(h) if B.lts[i] is not None]
        cand = {i: _lcm(B.lts[i], lh) for i in old}
        # chain criterion on the new pairs (Gebauer-Moeller M and F steps)
        keep = []
        by_lcm = sorted(cand.items(), key=lambda t: (key(t[1]), t[0]))
        seen_lcms: list[Monomial] = []
        for i, l in by_lcm:
            if any(_divides(s, l) and s != l for s in seen_lcms):
                continue
            if l in seen_lcms:
                continue
            seen_lcms.append(l)
            group = [j for j, lj in cand.items() if lj == l]
            if any(_coprime(B.lts[j], lh) for j in group):
                continue
            keep.append((min(group), l))
        # prune old pairs whose lcm is a proper multiple through lh (B step)
        for (i, j), l in list(pairs.items()):
            if _divides(lh, l) and _lcm(B.lts[i], lh) != l and _lcm(B.lts[j], lh) != l:
                del pairs[(i, j)]
        for i, l in keep:
            pairs[(i, h)] = l

    for g in gens:
        if not g:
            continue
        r = B.reduce(g)
        if r:
            h = B.add(B.monic(r))
            update(h)
    while pairs:
        (i, j) = min(pairs, key=lambda ij: (key(pairs[ij]), ij))
        del pairs[(i, j)]
        s = _spoly(B.polys[i], B.lts[i], B.polys[j], B.lts[j], p)
        r = B.reduce(s)
        if r:
            if len(B.polys) >= cfg.gb_max_basis:
                raise BudgetExceededError(
                    f"Groebner basis size limit {cfg.gb_max_basis} exceeded",
                    {"reductions": counter[0], "basis_size": len(B.polys), "pending_pairs": len(pairs)})
            h = B.add(B.monic(r))
            if not any(B.lts[h]):
                cost[:] = [counter[0], len(B.polys)]
                return [{B.lts[h]: 1}]
            update(h)
    # minimalize, then interreduce
    idx = sorted(range(len(B.polys)), key=lambda i: key(B.lts[i]))
    minimal: list[int] = []
    for i in idx:
        if not any(_divides(B.lts[j], B.lts[i]) for j in minimal):
            minimal.append(i)
    red = _Basis(p, order, counter, cfg.gb_max_reductions)
    for i in minimal:
        red.add(B.polys[i])
    out = []
    for n in range(len(red.polys)):
        r = red.reduce(red.polys[n], skip=n)
        out.append(red.monic(r))
    out.sort(key=lambda f: key(max(f, key=key)), reverse=True)
    cost[:] = [counter[0], len(B.polys)]
    return out


@lru_cache(maxsize=4096)
def _cached_basis(p: int, gens: frozenset, order: MonomialOrder) -> tuple[tuple[tuple, ...], tuple[int, int]]:
    dicts = [dict(g) for g in sorted(gens, key=lambda g: sorted(g))]
    cost = [0, 0]
    basis = tuple(tuple(sorted(b.items())) for b in _buchberger(dicts, p, order, cost))
    return basis, (cost[0], cost[1])


def _charge(cost: tuple[int, int]) -> None:
    # a cached basis must not dodge a budget the fresh computation would have hit
    cfg = config.current()
    reductions, size = cost
    if reductions > cfg.gb_max_reductions:
        raise BudgetExceededError(f"Groebner reduction budget of {cfg.gb_max_reductions} steps exhausted",
                                  {"reductions": reductions, "basis_size": size, "cached": True})
    if size > cfg.gb_max_basis:
        raise BudgetExceededError(f"Groebner basis size limit {cfg.gb_max_basis} exceeded",
                                  {"reductions": reductions, "basis_size": size, "cached": True})


# --- public types ----------------------------------------------------------------


@dataclass(frozen=True)
class GroebnerBasis:
    order: MonomialOrder
    elements: tuple[Polynomial, ...]
    cost: tuple[int, int] = field(default=(0, 0), compare=False)

    @property
    def ring(self) -> RingSpec:
        return self.elements[0].ring if self.elements else None

    def leading_monomials(self) -> list[Monomial]:
        return [g.leading_monomial(self.order.key) for g in self.elements]

    def is_unit(self) -> bool:
        return any(g.is_constant() for g in self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __str__(self) -> str:
        return "{" + ", ".join(str(g) for g in self.elements) + "}"


class Ideal:
    """An ideal of ``ring``; when the ring is a quotient, of the quotient ring."""

    __slots__ = ("ring", "generators", "cached_gb")

    def __init__(self, ring: RingSpec, generators: Iterable[Polynomial | int]):
        gens = []
        for g in generators:
            if isinstance(g, int):
                g = ring.const(g)
            if g.ring.key != ring.key:
                raise RingMismatchError("ideal generator from a different ring")
            if not g.is_zero():
                gens.append(g)
        self.ring = ring
        self.generators: tuple[Polynomial, ...] = tuple(gens)
        self.cached_gb: dict[MonomialOrder, GroebnerBasis] = {}

    @classmethod
    def unit(cls, ring: RingSpec) -> "Ideal":
        return cls(ring, [ring.one()])

    @classmethod
    def zero(cls, ring: RingSpec) -> "Ideal":
        return cls(ring, [])

    def lifted_generators(self) -> tuple[Polynomial, ...]:
        return self.generators + self.ring.defining_ideal

    def __add__(self, other: "Ideal") -> "Ideal":
        _same_ring(self, other)
        return Ideal(self.ring, self.generators + other.generators)

    def __mul__(self, other: "Ideal | Polynomial") -> "Ideal":
        if isinstance(other, Polynomial):
            return Ideal(self.ring, [g * other for g in self.generators])
        _same_ring(self, other)
        return Ideal(self.ring, [f * g for f in self.generators for g in other.generators])

    def __pow__(self, k: int) -> "Ideal":
        result = Ideal.unit(self.ring)
        for _ in range(k):
            result = result * self
        return result

    def __repr__(self) -> str:
        return f"Ideal({self.ring.describe()}; {', '.join(map(str, self.generators)) or '0'})"

    def __str__(self) -> str:
        return format_ideal(self)


def _same_ring(I: Ideal, J: Ideal) -> None:
    if I.ring.key != J.ring.key:
        raise RingMismatchError("ideals live in different rings")


def _to_raw(f: Polynomial) -> tuple:
    return tuple(sorted(f.terms.items()))


def groebner_basis(I: Ideal, order: MonomialOrder = GREVLEX) -> GroebnerBasis:
    """Reduced monic Groebner basis of I (plus the defining ideal) under ``order``."""
    gb = I.cached_gb.get(order)
    if gb is None:
        ring = I.ring.ambient
        raw = frozenset(_to_raw(g) for g in I.lifted_generators())
        elements, cost = _cached_basis(ring.prime, raw, order)
        gb = GroebnerBasis(order, tuple(Polynomial(ring, dict(e)) for e in elements), cost)
        I.cached_gb[order] = gb
    _charge(gb.cost)
    return gb


def normal_form(f: Polynomial, B: GroebnerBasis) -> Polynomial:
    if B.elements and B.elements[0].ring.key != f.ring.key:
        raise RingMismatchError("polynomial and basis live in different rings")
    cfg = config.current()
    basis = _Basis(f.ring.prime, B.order, [0], cfg.gb_max_reductions)
    for g in B.elements:
        basis.add(g.terms)
    return Polynomial(f.ring, basis.reduce(f.terms), _trusted=True)


def ideal_member(f: Polynomial, I: Ideal) -> bool:
    if f.ring.key != I.ring.key:
        raise RingMismatchError("polynomial and ideal live in different rings")
    if f.is_zero():
        return True
    return normal_form(f, groebner_basis(I)).is_zero()


def ideal_contains(I: Ideal, J: Ideal) -> bool:
    """True iff J is contained in I (both read in the quotient ring)."""
    _same_ring(I, J)
    gb = groebner_basis(I)
    return all(normal_form(g, gb).is_zero() for g in J.lifted_generators())


def ideals_equal(I: Ideal, J: Ideal) -> bool:
    _same_ring(I, J)
    return groebner_basis(I).elements == groebner_basis(J).elements


def is_unit_ideal(I: Ideal) -> bool:
    return groebner_basis(I).is_unit()


def divide_exact(h: Polynomial, g: Polynomial) -> Polynomial:
    """Return h / g, raising ValueError when g does not divide h."""
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    p = h.ring.prime
    lg = g.leading_monomial()
    inv = pow(g.terms[lg], -1, p)
    rest = h
    quotient: dict = {}
    while not rest.is_zero():
        lr = rest.leading_monomial()
        if not _divides(lg, lr):
            raise ValueError(f"{g} does not divide {h}")
        mono = tuple(a - b for a, b in zip(lr, lg))
        c = (rest.terms[lr] * inv) % p
        quotient[mono] = c
        rest = rest - g.mul_monomial(mono, c)
    return Polynomial(h.ring, quotient)


def _aux_ring(ring: RingSpec, name: str = "t") -> RingSpec:
    while name in ring.variables:
        name = "_" + name
    return RingSpec(ring.prime, (name,) + ring.variables)


def _embed(f: Polynomial, big: RingSpec) -> Polynomial:
    return Polynomial(big, {(0,) + m: c for m, c in f.terms.items()}, _trusted=True)


def eliminate(I: Ideal, k: int) -> Ideal:
    """I intersected with the subring in the last n-k variables (as an ambient ideal)."""
    n = I.ring.nvars
    if not 0 <= k < n:
        raise ValueError(f"can eliminate between 0 and {n - 1} variables, not {k}")
    ambient = I.ring.ambient
    if k == 0:
        return Ideal(ambient, groebner_basis(I).elements)
    gb = groebner_basis(Ideal(ambient, I.lifted_generators()), elimination(k))
    kept = [g for g in gb.elements if all(not any(m[:k]) for m in g.terms)]
    return Ideal(ambient, kept)


def intersect_ideals(I: Ideal, J: Ideal) -> Ideal:
    """I ∩ J via eliminating t from t*I + (1-t)*J."""
    _same_ring(I, J)
    ring = I.ring
    big = _aux_ring(ring.ambient)
    t = big.gen(big.variables[0])
    gens = [t * _embed(f, big) for f in I.lifted_generators()]
    gens += [(1 - t) * _embed(g, big) for g in J.lifted_generators()]
    if not I.lifted_generators() or not J.lifted_generators():
        return Ideal(ring, ring.defining_ideal)
    elim = eliminate(Ideal(big, gens), 1)
    out = [Polynomial(ring.ambient, {m[1:]: c for m, c in g.terms.items()}, _trusted=True)
           for g in elim.generators]
    return Ideal(ring, out)


def colon_ideal(I: Ideal, J: Ideal) -> Ideal:
    """(I : J) = {f : f*J ⊆ I}, computed generator by generator."""
    _same_ring(I, J)
    ring = I.ring
    ambient = ring.ambient
    base = Ideal(ambient, I.lifted_generators())
    gens = [g for g in J.generators if not ideal_member(g, Ideal.zero(ring))]
    if not gens:
        warnings.warn("colon by the zero ideal: returning the unit ideal", stacklevel=2)
        return Ideal.unit(ring)
    result = None
    for g in gens:
        inter = intersect_ideals(base, Ideal(ambient, [g]))
        part = Ideal(ring, [divide_exact(h, g) for h in inter.generators]
                     + list(ring.defining_ideal))
        result = part if result is None else intersect_ideals(result, part)
    return Ideal(ring, groebner_basis(result).elements)


def minimal_primes_squarefree(I: Ideal) -> list[Ideal]:
    """Minimal primes of a square-free monomial ideal, as minimal vertex covers."""
    ring = I.ring
    n = ring.nvars
    supports = []
    for g in I.generators:
        if not g.is_monomial():
            raise UnsupportedInputError(f"generator {g} is not a monomial")
        (m,) = g.terms
        if any(e > 1 for e in m):
            raise UnsupportedInputError(f"generator {g} is not square-free")
        supports.append(frozenset(i for i, e in enumerate(m) if e))
    if any(not s for s in supports):
        return []
    covers: list[frozenset] = []
    for size in range(n + 1):
        for combo in itertools.combinations(range(n), size):
            c = frozenset(combo)
            if any(prev <= c for prev in covers):
                continue
            if all(s & c for s in supports):
                covers.append(c)
    primes = [Ideal(ring, [ring.gen(ring.variables[i]) for i in sorted(c)]) for c in covers]
    if primes:
        total = primes[0]
        for P in primes[1:]:
            total = intersect_ideals(total, P)
        if not ideals_equal(total, I):
            raise AssertionError("minimal primes do not intersect back to the ideal")
    return primes


def _pure_powers(lts: Iterable[Monomial], n: int) -> dict[int, int]:
    found: dict[int, int] = {}
    for m in lts:
        nz = [i for i, e in enumerate(m) if e]
        if len(nz) == 1:
            i = nz[0]
            found[i] = min(found.get(i, m[i]), m[i])
        elif not nz:
            return {i: 0 for i in range(n)}
    return found


def is_zero_dimensional(I: Ideal) -> bool:
    gb = groebner_basis(I)
    return len(_pure_powers(gb.leading_monomials(), I.ring.nvars)) == I.ring.nvars


def krull_dimension(I: Ideal) -> int:
    """Dimension of R/I: the largest set of variables no leading monomial is supported in.

    Uses that R/I and R/LT(I) have the same Hilbert polynomial; -1 for the unit ideal.
    """
    lts = groebner_basis(I).leading_monomials()
    n = I.ring.nvars
    if any(not any(m) for m in lts):
        return -1
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in lts]
    for size in range(n, -1, -1):
        for chosen in itertools.combinations(range(n), size):
            s = set(chosen)
            if not any(sup <= s for sup in supports):
                return size
    return 0


def quotient_vector_basis(ring: RingSpec, I: Ideal) -> list[Monomial]:
    """Standard monomials of F_p[x] / (I + defining ideal), in grevlex order."""
    if I.ring.key != ring.key:
        raise RingMismatchError("ideal is not in the given ring")
    full = Ideal(ring, list(I.generators) + list(ring.defining_ideal) + list(I.ring.defining_ideal))
    gb = groebner_basis(full)
    lts = gb.leading_monomials()
    if gb.is_unit():
        return []
    powers = _pure_powers(lts, ring.nvars)
    missing = [ring.variables[i] for i in range(ring.nvars) if i not in powers]
    if missing:
        raise DimensionError(f"quotient is not zero-dimensional: variable {missing[0]} is free")
    out = []
    stack = [(0,) * ring.nvars]
    seen = set(stack)
    while stack:
        m = stack.pop()
        if any(_divides(lt, m) for lt in lts):
            continue
        out.append(m)
        for i in range(ring.nvars):
            nm = m[:i] + (m[i] + 1,) + m[i + 1:]
            if nm not in seen:
                seen.add(nm)
                stack.append(nm)
    out.sort(key=grevlex_key)
    return out


def lift(f: Polynomial, generators: Sequence[Polynomial]) -> list[Polynomial] | None:
    """Cofactors h with f == sum(h_i * g_i), or None when f is not in the ideal.

    Buchberger's algorithm with each basis element carrying its representation
    in terms of the input generators.
    """
    ring = f.ring
    p = ring.prime
    n = len(generators)
    zero = ring.zero()
    cfg = config.current()
    steps = 0
    basis: list[tuple[Polynomial, list[Polynomial], Monomial]] = []

    def reduce(h: Polynomial, rep: list[Polynomial]):
        nonlocal steps
        rem = ring.zero()
        while not h.is_zero():
            lm = h.leading_monomial()
            c = h.terms[lm]
            for g, grep, lg in basis:
                if _divides(lg, lm):
                    shift = tuple(a - b for a, b in zip(lm, lg))
                    h = h - g.mul_monomial(shift, c)
                    rep = [r - gr.mul_monomial(shift, c) for r, gr in zip(rep, grep)]
                    steps += 1
                    if steps > cfg.gb_max_reductions:
                        raise BudgetExceededError("reduction budget exhausted while lifting",
                                                  {"reductions": steps})
                    break
            else:
                term = ring.monomial(lm, c)
                rem = rem + term
                h = h - term
        return rem, rep

    def add(h: Polynomial, rep: list[Polynomial]) -> None:
        lm = h.leading_monomial()
        inv = pow(h.terms[lm], -1, p)
        basis.append((h.scale(inv), [r.scale(inv) for r in rep], lm))

    for i, g in enumerate(generators):
        if g.is_zero():
            continue
        rep = [ring.one() if j == i else zero for j in range(n)]
        add(g, rep)
    pairs = list(itertools.combinations(range(len(basis)), 2))
    while pairs:
        i, j = pairs.pop(0)
        gi, ri, li = basis[i]
        gj, rj, lj = basis[j]
        if _coprime(li, lj):
            continue
        lcm = _lcm(li, lj)
        si = tuple(a - b for a, b in zip(lcm, li))
        sj = tuple(a - b for a, b in zip(lcm, lj))
        s = gi.mul_monomial(si) - gj.mul_monomial(sj)
        srep = [a.mul_monomial(si) - b.mul_monomial(sj) for a, b in zip(ri, rj)]
        r, rrep = reduce(s, srep)
        if not r.is_zero():
            # the remainder's representation is srep plus reduction history: r = s - sum(...)
            add(r, rrep)
            k = len(basis) - 1
            pairs.extend((m, k) for m in range(k))
            if len(basis) > cfg.gb_max_basis:
                raise BudgetExceededError("basis size limit exceeded while lifting",
                                          {"basis_size": len(basis)})
    rem, rep = reduce(f, [zero] * n)
    if not rem.is_zero():
        return None
    # reduce() subtracted the combination from f, so f == -sum(rep_i * g_i)
    return [-r for r in rep]


def format_ideal(I: Ideal) -> str:
    """Canonical text for an ideal of the (quotient) ring.

    Walk the reduced grevlex basis of I + J by ascending degree and keep an
    element only if it is not already in (kept elements) + J.
    """
    gb = groebner_basis(I)
    elems = sorted(gb.elements,
                   key=lambda g: (g.degree(), tuple(-k for k in grevlex_key(g.leading_monomial()))))
    if I.ring.defining_ideal:
        kept: list[Polynomial] = []
        for g in elems:
            if not ideal_member(g, Ideal(I.ring, kept)):
                kept.append(g)
        elems = kept
    if not elems:
        return "(0)"
    return "(" + ", ".join(str(g) for g in elems) + ")"
