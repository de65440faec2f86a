"""Top local cohomology H^d_m(R) as the direct limit of R/I_t, I_t = (f_1^t, ..., f_d^t).

The transition maps R/I_t -> R/I_{t+1} multiply by f_1 * ... * f_d.  They are
injective when the f_i form a regular sequence, which is what lets zero and
equality tests happen at a single level.  SopData refuses those tests unless
regularity was verified.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from . import config
from .closures import parameter_ideal, test_ideal_sr
from .errors import BudgetExceededError, CounterexampleFailed, DimensionError, PreconditionError
from .groebner import (LEX, Ideal, colon_ideal, groebner_basis, ideal_member, ideals_equal,
                       is_zero_dimensional, krull_dimension, minimal_primes_squarefree, normal_form)
from .poly import Polynomial, RingSpec, frobenius_power, is_prime


@dataclass(frozen=True)
class SopData:
    ring: RingSpec
    sop: tuple[Polynomial, ...]
    regularity_checked: bool = False

    @property
    def d(self) -> int:
        return len(self.sop)

    def level_ideal(self, t: int) -> Ideal:
        return parameter_ideal(self.ring, self.sop, t)

    def product(self) -> Polynomial:
        out = self.ring.one()
        for f in self.sop:
            out = out * f
        return out


def is_regular_sequence(ring: RingSpec, elems: Sequence[Polynomial]) -> bool:
    """((f_1..f_{i-1}) + J) : f_i == (f_1..f_{i-1}) + J for every i."""
    for i, f in enumerate(elems):
        prefix = Ideal(ring, elems[:i])
        if ideal_member(f, prefix):
            return False
        if not ideals_equal(colon_ideal(prefix, Ideal(ring, [f])), prefix):
            return False
    return True


def make_sop_data(ring: RingSpec, sop: Sequence[Polynomial], check_regular: bool = True) -> SopData:
    sop = tuple(sop)
    if not sop:
        raise DimensionError("a system of parameters needs at least one element")
    dim = krull_dimension(Ideal.zero(ring))
    if len(sop) != dim:
        raise DimensionError(f"got {len(sop)} elements but the ring has dimension {dim}")
    if not is_zero_dimensional(Ideal(ring, sop)):
        raise DimensionError("quotient by the proposed parameters is not zero-dimensional")
    for sub in itertools.combinations(sop, len(sop) - 1):
        if is_zero_dimensional(Ideal(ring, sub)):
            raise DimensionError(f"{len(sop) - 1} of the elements already cut out a "
                                 "zero-dimensional quotient; the ring has smaller dimension")
    regular = check_regular and is_regular_sequence(ring, sop)
    return SopData(ring, sop, regular)


@dataclass(frozen=True)
class LocalCohomClass:
    """The image of ``representative`` in R/I_level, inside the direct limit."""

    representative: Polynomial
    level: int
    sop: SopData = field(repr=False)

    def __str__(self) -> str:
        gens = ", ".join(str(g) for g in self.sop.level_ideal(self.level).generators)
        return f"[{self.representative} + ({gens})]"


def _normalize(r: Polynomial, S: SopData, t: int) -> Polynomial:
    return normal_form(r, groebner_basis(S.level_ideal(t)))


def make_class(r: Polynomial, t: int, S: SopData) -> LocalCohomClass:
    if t < 1:
        raise ValueError(f"level must be a positive integer, got {t}")
    return LocalCohomClass(_normalize(r, S, t), t, S)


def _require_regular(S: SopData) -> None:
    if not S.regularity_checked:
        raise PreconditionError("zero/equality tests need a system of parameters verified "
                                "to be a regular sequence")


def class_is_zero(eta: LocalCohomClass) -> bool:
    _require_regular(eta.sop)
    return ideal_member(eta.representative, eta.sop.level_ideal(eta.level))


def classes_equal(a: LocalCohomClass, b: LocalCohomClass) -> bool:
    _require_regular(a.sop)
    if a.sop.sop != b.sop.sop:
        raise ValueError("classes come from different direct systems")
    if a.level > b.level:
        a, b = b, a
    lifted = a.sop.product() ** (b.level - a.level) * a.representative
    return ideal_member(lifted - b.representative, b.sop.level_ideal(b.level))


def frobenius_class(eta: LocalCohomClass) -> LocalCohomClass:
    """F([r, t]) = [r^p, t*p]; valid since (f_i^t)^p = f_i^(tp)."""
    p = eta.sop.ring.prime
    level = eta.level * p
    cap = config.current().q_max
    if level > cap:
        raise BudgetExceededError(f"Frobenius would raise the level to {level} beyond the cap {cap}",
                                  {"level": level, "cap": cap})
    return make_class(frobenius_power(eta.representative, 1), level, eta.sop)


def annihilates(J: Ideal, eta: LocalCohomClass) -> bool:
    It = eta.sop.level_ideal(eta.level)
    return all(ideal_member(g * eta.representative, It) for g in J.generators)


# --- the F-stability counterexample ------------------------------------------------


@dataclass
class AuditRecord:
    assertion: str
    inputs: dict
    verdict: bool
    paper_anchor: str

    def as_dict(self) -> dict:
        return {"assertion": self.assertion, "inputs": self.inputs,
                "verdict": self.verdict, "paper_anchor": self.paper_anchor}


@dataclass
class CounterexampleReport:
    prime: int
    records: list[AuditRecord] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.verdict for r in self.records)

    def add(self, assertion: str, verdict: bool, anchor: str, **inputs) -> AuditRecord:
        rec = AuditRecord(assertion, {k: str(v) for k, v in inputs.items()}, bool(verdict), anchor)
        self.records.append(rec)
        return rec


def counterexample_ring(p: int) -> RingSpec:
    A = RingSpec(p, ("x", "y", "z", "w"))
    x, y, z, w = A.gens()
    return A.quotient([x * y, y * z, z * w])


def _member_lex(f: Polynomial, I: Ideal) -> bool:
    return normal_form(f, groebner_basis(I, LEX)).is_zero()


def fstability_counterexample(p: int, *, strict: bool = True) -> CounterexampleReport:
    """Show Ann(tau_par) ⊆ H^2_m(R) is not Frobenius-stable for R = F_p[x,y,z,w]/(xy,yz,zw).

    Each step appends an audit record; with ``strict`` the first failing step
    raises CounterexampleFailed.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p * p > config.current().q_max:
        raise BudgetExceededError(f"level p^2 = {p * p} exceeds the configured cap")
    report = CounterexampleReport(p)

    def step(assertion: str, verdict: bool, anchor: str, **inputs) -> None:
        report.add(assertion, verdict, anchor, **inputs)
        if strict and not verdict:
            raise CounterexampleFailed(assertion)

    R = counterexample_ring(p)
    A = R.ambient
    x, y, z, w = A.gens()
    primes = minimal_primes_squarefree(Ideal(A, R.defining_ideal))
    expected_primes = [Ideal(A, [x, z]), Ideal(A, [y, z]), Ideal(A, [y, w])]
    step("minimal primes are (x,z), (y,z), (y,w)",
         len(primes) == 3 and all(any(ideals_equal(P, Q) for Q in primes) for P in expected_primes),
         "minimal primes P1=(x,z), P2=(y,z), P3=(y,w)",
         primes=[str(P) for P in primes])

    S = make_sop_data(R, [x - w, x - y - z])
    step("x-w, x-y-z is a regular system of parameters", S.regularity_checked,
         "system of parameters x-w, x-y-z; R Cohen-Macaulay", sop=[str(f) for f in S.sop])

    tau = test_ideal_sr(R)
    step("tau = (y, z, xw)", ideals_equal(tau, Ideal(R, [y, z, x * w])),
         "tau_par(R) = tau(R) = (y,z,xw)", tau=tau)

    Ip = S.level_ideal(p)
    paper_Ip = Ideal(R, [x**p - w**p, x**p - y**p - z**p])
    step("I_p generators are x^p - w^p, x^p - y^p - z^p",
         list(Ip.generators) == list(paper_Ip.generators),
         "I_t = (x^t-w^t, x^t-y^t-z^t) at t = p", generators=[str(g) for g in Ip.generators])

    eta = make_class((x * w) ** (p - 1), p, S)
    key = (x * w) ** p
    target = Ideal(A, list(paper_Ip.generators) + list(R.defining_ideal))
    step("(xw)^p lies in (x^p-w^p, x^p-y^p-z^p, xy, yz, zw)", ideal_member(key, target),
         "(xw)^p in (x^p-w^p, x^p-y^p-z^p, xy, yz, zw)", element=key, ideal=target.generators)
    for g in tau.generators:
        step(f"{g} * eta = 0", ideal_member(g * eta.representative, Ip),
             "tau_par(R) eta = 0", generator=g, representative=eta.representative, level=p)
    step("tau annihilates eta", annihilates(tau, eta), "tau_par(R) eta = 0", eta=eta)
    step("eta is nonzero", not class_is_zero(eta), "eta = [(xw)^{p-1} + I_p]", eta=eta)

    F_eta = frobenius_class(eta)
    step("F(eta) = [(xw)^(p(p-1)), level p^2]",
         F_eta.level == p * p and classes_equal(F_eta, make_class((x * w) ** (p * (p - 1)), p * p, S)),
         "F(eta) = [(xw)^{p(p-1)} + I_{p^2}]", F_eta=F_eta)
    witness = x * w * (x * w) ** (p * (p - 1))
    Ipp = Ideal(A, [x ** (p * p) - w ** (p * p), x ** (p * p) - y ** (p * p) - z ** (p * p)]
                + list(R.defining_ideal))
    grevlex_out = not ideal_member(witness, Ipp)
    lex_out = not _member_lex(witness, Ipp)
    step("xw (xw)^(p(p-1)) is not in (x^{p^2}-w^{p^2}, x^{p^2}-y^{p^2}-z^{p^2}, xy, yz, zw)",
         grevlex_out and lex_out,
         "xw(xw)^{p(p-1)} not in (x^{p^2}-w^{p^2}, x^{p^2}-y^{p^2}-z^{p^2}, xy,yz,zw)",
         element=witness, degree=witness.degree(), bracket_exponent=p * p,
         grevlex=grevlex_out, lex=lex_out)
    step("tau does not annihilate F(eta)", not annihilates(tau, F_eta),
         "tau_par(R) F(eta) != 0", F_eta=F_eta)

    # Independent oracle: y = z = 0 kills xy, yz, zw and leaves a monomial question in x, w.
    B = RingSpec(p, ("x", "w"))
    bx, bw = B.gens()
    q2 = p * p
    reduced = Ideal(B, [bx**q2 - bw**q2, bx**q2])
    same = ideals_equal(reduced, Ideal(B, [bx**q2, bw**q2]))
    a = p * (p - 1) + 1
    monomial_out = a < q2  # x^a w^a ∈ (x^N, w^N) iff a >= N
    shadow = witness.substitute_zero(["y", "z"])
    step("after y = z = 0 the membership becomes x^a w^a in (x^{p^2}, w^{p^2}), which fails",
         same and monomial_out and shadow == witness and all(
             g.substitute_zero(["y", "z"]) in (x ** q2 - w ** q2, x ** q2) for g in Ipp.generators[:2]),
         "(x^{p^2}-w^{p^2}, x^{p^2}) = (x^{p^2}, w^{p^2}); certainly impossible",
         exponent=a, bracket_exponent=q2)
    return report
