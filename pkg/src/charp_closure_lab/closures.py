"""Characteristic-p closure calculus on ideals.

Exact tight closure is only available for Stanley-Reisner quotients, where it
reduces to the (trivial) closure in each regular quotient R/P by a minimal
prime.  Everything else goes through the bounded Frobenius route, which can
refute membership but never certify it.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Callable, Sequence

from . import config
from .errors import (BudgetExceededError, DimensionError, InvalidMultiplierError,
                     PreconditionError, UnsupportedInputError)
from .groebner import (Ideal, colon_ideal, groebner_basis, ideal_contains, ideal_member,
                       ideals_equal, intersect_ideals, is_zero_dimensional, lift,
                       minimal_primes_squarefree, quotient_vector_basis)
from .poly import Polynomial, RingSpec, frobenius_power, prime_power_exponent

ClosureOracle = Callable[[Ideal], Ideal]


class Status(enum.Enum):
    MEMBER = "MEMBER"
    NON_MEMBER = "NON_MEMBER"
    UNKNOWN_UP_TO_BOUND = "UNKNOWN_UP_TO_BOUND"


@dataclass(frozen=True)
class ClosureVerdict:
    status: Status
    multiplier: Polynomial | None
    witness_q: int | None = None
    checked_up_to: int | None = None
    evidence: tuple[tuple[int, bool], ...] = ()

    def as_dict(self) -> dict:
        return {
            "status": self.status.value,
            "multiplier": None if self.multiplier is None else str(self.multiplier),
            "witness_q": self.witness_q,
            "checked_up_to": self.checked_up_to,
            "evidence": [{"q": q, "member": ok} for q, ok in self.evidence],
        }


def bracket_power(I: Ideal, q: int) -> Ideal:
    """Frobenius power I^[q]: the ideal generated by q-th powers of the generators."""
    p = I.ring.prime
    e = prime_power_exponent(q, p)
    if e is None:
        raise ValueError(f"bracket powers need q a power of {p}, got {q}")
    return Ideal(I.ring, [frobenius_power(g, e) for g in I.generators])


def frobenius_check(x: Polynomial, I: Ideal, c: Polynomial, q: int) -> bool:
    """Is c * x^q in I^[q] (in the quotient ring)?"""
    e = prime_power_exponent(q, I.ring.prime)
    return ideal_member(c * frobenius_power(x, e), bracket_power(I, q))


def tc_membership_bounded(x: Polynomial, I: Ideal, c: Polynomial, e_max: int | None = None,
                          *, test_element: bool = True) -> ClosureVerdict:
    """Check c*x^q ∈ I^[q] for q = p, ..., p^e_max.

    With ``test_element`` (c is a caller-asserted test element) a failure
    refutes membership in I*.  Passing every check is only evidence.
    """
    cfg = config.current()
    e_max = cfg.e_max if e_max is None else e_max
    if e_max < 1:
        raise ValueError("e_max must be at least 1")
    if ideal_member(c, Ideal.zero(I.ring)):
        raise InvalidMultiplierError("the multiplier c is zero in the ring")
    p = I.ring.prime
    if p**e_max > cfg.q_max:
        raise BudgetExceededError(f"q = {p}^{e_max} exceeds the configured cap {cfg.q_max}",
                                  {"q_max": cfg.q_max})
    evidence = []
    for e in range(1, e_max + 1):
        q = p**e
        ok = frobenius_check(x, I, c, q)
        evidence.append((q, ok))
        if not ok and test_element:
            return ClosureVerdict(Status.NON_MEMBER, c, witness_q=q, checked_up_to=q,
                                  evidence=tuple(evidence))
    return ClosureVerdict(Status.UNKNOWN_UP_TO_BOUND, c, checked_up_to=p**e_max,
                          evidence=tuple(evidence))


def replay_non_member(x: Polynomial, I: Ideal, verdict: ClosureVerdict) -> bool:
    """Re-run the failing check of a NON_MEMBER verdict; True if it fails again."""
    if verdict.status is not Status.NON_MEMBER:
        raise ValueError("only NON_MEMBER verdicts carry a witness")
    return not frobenius_check(x, I, verdict.multiplier, verdict.witness_q)


# --- Stanley-Reisner rings ---------------------------------------------------------


def is_stanley_reisner(R: RingSpec) -> bool:
    for g in R.defining_ideal:
        if not g.is_monomial():
            return False
        (m,) = g.terms
        if any(e > 1 for e in m):
            return False
    return True


def sr_minimal_primes(R: RingSpec) -> list[Ideal]:
    """Minimal primes of a Stanley-Reisner quotient, as ambient ideals."""
    if not is_stanley_reisner(R):
        raise UnsupportedInputError("defining ideal is not generated by square-free monomials")
    ambient = R.ambient
    if not R.defining_ideal:
        return [Ideal.zero(ambient)]
    return minimal_primes_squarefree(Ideal(ambient, R.defining_ideal))


def _as_ring_ideal(R: RingSpec, ambient_ideal: Ideal) -> Ideal:
    return Ideal(R, groebner_basis(ambient_ideal).elements)


def tight_closure_sr(I: Ideal) -> Ideal:
    """I* = ∩_i (I + P_i) over the minimal primes P_i of the Stanley-Reisner ring."""
    R = I.ring
    primes = sr_minimal_primes(R)
    ambient = R.ambient
    total = None
    for P in primes:
        part = Ideal(ambient, I.lifted_generators() + P.generators)
        total = part if total is None else intersect_ideals(total, part)
    return _as_ring_ideal(R, total)


def tc_member_sr(x: Polynomial, I: Ideal) -> ClosureVerdict:
    """Exact membership in I* for Stanley-Reisner rings."""
    ok = ideal_member(x, tight_closure_sr(I))
    return ClosureVerdict(Status.MEMBER if ok else Status.NON_MEMBER, None)


def test_ideal_sr(R: RingSpec) -> Ideal:
    """Σ_i ∩_{j≠i} P_j; for three primes this is the pairwise-intersection sum."""
    primes = sr_minimal_primes(R)
    ambient = R.ambient
    if len(primes) == 1:
        return Ideal.unit(R)
    gens = []
    for i in range(len(primes)):
        others = [P for j, P in enumerate(primes) if j != i]
        inter = others[0]
        for P in others[1:]:
            inter = intersect_ideals(inter, P)
        gens.extend(inter.generators)
    return _as_ring_ideal(R, Ideal(ambient, gens + list(R.defining_ideal)))


def pairwise_intersection_sum(R: RingSpec) -> Ideal:
    """Σ_{i<j} P_i ∩ P_j, the three-prime form of the test-ideal formula."""
    primes = sr_minimal_primes(R)
    gens = []
    for P, Q in itertools.combinations(primes, 2):
        gens.extend(intersect_ideals(P, Q).generators)
    return _as_ring_ideal(R, Ideal(R.ambient, gens + list(R.defining_ideal)))


# --- parameter test ideal ----------------------------------------------------------


def parameter_ideal(R: RingSpec, sop: Sequence[Polynomial], t: int) -> Ideal:
    return Ideal(R, [f**t for f in sop])


def check_sop_dimension(R: RingSpec, sop: Sequence[Polynomial]) -> None:
    if not is_zero_dimensional(Ideal(R, sop)):
        raise DimensionError("the given elements do not form a system of parameters "
                             "(quotient is not zero-dimensional)")


@dataclass
class ParameterTestIdeal:
    """Outcome of the colon route.

    ``ideal`` is the literal running intersection over t <= t_max.  Because
    every I_t is m-primary, that intersection is m-primary too, so when the
    true answer is not m-primary it can only be reached in the limit.
    ``limit`` is the candidate K made of the intersection's basis elements of
    degree below the generators of I_{t_max}; ``limit_verified`` records
    K ⊆ (I_t : I_t*) ⊆ K + I_t at every computed level.
    """

    ideal: Ideal
    stabilized: bool
    levels: list[Ideal] = field(default_factory=list)
    limit: Ideal | None = None
    limit_verified: bool = False

    def __str__(self) -> str:
        return str(self.ideal)


def parameter_test_ideal(R: RingSpec, sop: Sequence[Polynomial], t_max: int = 4,
                         closure: ClosureOracle | None = None) -> ParameterTestIdeal:
    """∩_{t<=t_max} (I_t : I_t*) for I_t = (f_1^t, ..., f_d^t)."""
    if t_max < 1:
        raise ValueError("t_max must be at least 1")
    check_sop_dimension(R, sop)
    if closure is None:
        if not is_stanley_reisner(R):
            raise UnsupportedInputError("no exact tight closure for this ring; pass a closure oracle")
        closure = tight_closure_sr
    levels = []
    running = None
    previous_running = None
    for t in range(1, t_max + 1):
        It = parameter_ideal(R, sop, t)
        Jt = colon_ideal(It, closure(It))
        levels.append(Jt)
        previous_running = running
        running = Jt if running is None else _as_ring_ideal(R, intersect_ideals(running, Jt))
    stabilized = (t_max >= 2 and ideals_equal(levels[-1], levels[-2])
                  and ideals_equal(running, previous_running))
    cutoff = min(g.degree() for g in parameter_ideal(R, sop, t_max).generators)
    limit = Ideal(R, [g for g in groebner_basis(running).elements if g.degree() < cutoff])
    verified = all(
        ideal_contains(Jt, limit) and ideal_contains(limit + parameter_ideal(R, sop, t), Jt)
        for t, Jt in enumerate(levels, start=1))
    return ParameterTestIdeal(running, stabilized, levels, limit, verified)


def bounded_closure_oracle(c: Polynomial, e_max: int | None = None) -> ClosureOracle:
    """Closure candidate I + (standard monomials passing the bounded route).

    Only meaningful for m-primary ideals whose closure is spanned by monomials
    modulo I (e.g. monomial parameter ideals in a graded ring).  This is
    evidence, not an exact closure.
    """

    def oracle(I: Ideal) -> Ideal:
        R = I.ring
        extra = []
        for m in quotient_vector_basis(R, I):
            mono = R.monomial(m)
            if tc_membership_bounded(mono, I, c, e_max).status is Status.UNKNOWN_UP_TO_BOUND:
                extra.append(mono)
        return Ideal(R, list(I.generators) + extra)

    return oracle


# --- determinant trick -------------------------------------------------------------


@dataclass(frozen=True)
class IntegralDependenceCertificate:
    degree: int
    matrix_entries: tuple[tuple[Polynomial, ...], ...]
    characteristic_polynomial: Polynomial
    coefficients: tuple[Polynomial, ...]
    variable: str

    def as_dict(self) -> dict:
        return {
            "degree": self.degree,
            "matrix": [[str(a) for a in row] for row in self.matrix_entries],
            "characteristic_polynomial": str(self.characteristic_polynomial),
            "variable": self.variable,
        }


def _det(M: list[list[Polynomial]], ring: RingSpec) -> Polynomial:
    n = len(M)
    if n == 0:
        return ring.one()
    if n == 1:
        return M[0][0]
    total = ring.zero()
    for j in range(n):
        if M[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = M[0][j] * _det(minor, ring)
        total = total + term if j % 2 == 0 else total - term
    return total


def integral_dependence_certificate(x: Polynomial, I: Ideal, T: Ideal) -> IntegralDependenceCertificate:
    """Monic equation of degree len(T.generators) for x over I, via x*T ⊆ I*T."""
    R = I.ring
    ts = list(T.generators)
    us = list(I.generators)
    n = len(ts)
    if n == 0:
        raise PreconditionError("T must have at least one nonzero generator")
    IT = I * T
    for ti in ts:
        if not ideal_member(x * ti, IT):
            raise PreconditionError(f"x*T is not contained in I*T (fails at generator {ti})")
    spanning = [u * tj for u in us for tj in ts] + list(R.defining_ideal)
    A: list[list[Polynomial]] = []
    for ti in ts:
        cof = lift(x * ti, spanning)
        if cof is None:
            raise AssertionError(f"lifting x*{ti} over I*T failed although membership holds")
        row = []
        for j in range(n):
            a = R.zero()
            for k, u in enumerate(us):
                a = a + cof[k * n + j] * u
            row.append(a)
        A.append(row)
    # characteristic polynomial det(X*Id - A) = Σ_k (-1)^k e_k(A) X^(n-k)
    coeffs = [R.ambient.one()]
    for k in range(1, n + 1):
        e_k = R.ambient.zero()
        for S in itertools.combinations(range(n), k):
            e_k = e_k + _det([[A[i][j] for j in S] for i in S], R.ambient)
        coeffs.append(e_k if k % 2 == 0 else -e_k)
    name = "X"
    while name in R.variables:
        name = "_" + name
    big = RingSpec(R.prime, R.variables + (name,))
    charpoly = big.zero()
    for k, a in enumerate(coeffs):
        lifted = Polynomial(big, {m + (n - k,): c for m, c in a.terms.items()})
        charpoly = charpoly + lifted
    value = R.zero()
    for k, a in enumerate(coeffs):
        value = value + a * x ** (n - k)
    if not ideal_member(value, Ideal.zero(R)):
        raise AssertionError("characteristic polynomial does not annihilate x "
                             "(is T faithful?)")
    for k in range(1, n + 1):
        if not ideal_member(coeffs[k], I**k):
            raise AssertionError(f"coefficient {k} is not in I^{k}")
    return IntegralDependenceCertificate(n, tuple(tuple(r) for r in A), charpoly,
                                         tuple(coeffs), name)


# keep pytest from collecting these when imported into test modules
test_ideal_sr.__test__ = False
