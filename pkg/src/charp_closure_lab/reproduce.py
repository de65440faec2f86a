"""End-to-end reproduction of the F-stability counterexample with an audit log."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import TextIO

from .closures import pairwise_intersection_sum, parameter_test_ideal, test_ideal_sr
from .groebner import Ideal, ideals_equal, intersect_ideals
from .local_cohomology import AuditRecord, counterexample_ring, fstability_counterexample
from .poly import is_prime


@dataclass
class ReproductionResult:
    prime: int
    records: list[AuditRecord] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.verdict for r in self.records)

    @property
    def first_failure(self) -> str | None:
        return next((r.assertion for r in self.records if not r.verdict), None)

    def write_jsonl(self, stream: TextIO) -> None:
        for r in self.records:
            stream.write(json.dumps(r.as_dict(), sort_keys=True) + "\n")

    def save(self, path: Path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            self.write_jsonl(fh)


def _record(out: ReproductionResult, assertion: str, verdict: bool, anchor: str, **inputs) -> None:
    out.records.append(AuditRecord(assertion, {k: str(v) for k, v in inputs.items()},
                                   bool(verdict), anchor))


def reproduce_paper_example(p: int, t_max: int = 4) -> ReproductionResult:
    """Run every check on F_p[x,y,z,w]/(xy,yz,zw); never stops at the first failure."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    out = ReproductionResult(p)
    R = counterexample_ring(p)
    A = R.ambient
    x, y, z, w = A.gens()

    P1, P2, P3 = Ideal(A, [x, z]), Ideal(A, [y, z]), Ideal(A, [y, w])
    for (name, P, Q), expected in zip(
            [("P1 ∩ P2", P1, P2), ("P2 ∩ P3", P2, P3), ("P1 ∩ P3", P1, P3)],
            [[x * y, z], [y, z * w], [x * y, x * w, z * y, z * w]]):
        inter = intersect_ideals(P, Q)
        _record(out, f"{name} = ({', '.join(map(str, expected))})",
                ideals_equal(inter, Ideal(A, expected)),
                f"{name} = ({', '.join(map(str, expected))})", computed=inter)

    tau_expected = Ideal(R, [y, z, x * w])
    tau = test_ideal_sr(R)
    _record(out, "complementary-intersection formula gives tau = (y, z, xw)",
            ideals_equal(tau, tau_expected), "tau(R) = (y,z,xw)", computed=tau)
    pairwise = pairwise_intersection_sum(R)
    _record(out, "pairwise-intersection sum gives tau = (y, z, xw)",
            ideals_equal(pairwise, tau_expected), "tau(R) = (y,z,xw)", computed=pairwise)

    sop = [x - w, x - y - z]
    par = parameter_test_ideal(R, sop, t_max)
    _record(out, f"colon route over t <= {t_max} converges to tau_par = (y, z, xw)",
            par.limit is not None and par.limit_verified and ideals_equal(par.limit, tau_expected),
            "tau_par(R) = tau(R) = (y,z,xw)", limit=par.limit, verified=par.limit_verified,
            sop=", ".join(map(str, sop)))
    I_top = Ideal(R, [f**t_max for f in sop])
    _record(out, f"the finite intersection over t <= {t_max} is tau + I_{t_max}",
            ideals_equal(par.ideal, tau_expected + I_top),
            "tau_par(R) = intersection of (I_t : I_t*) over all t", computed=par.ideal)

    report = fstability_counterexample(p, strict=False)
    out.records.extend(report.records)
    return out
