"""Evaluate parsed DSL programs against the library."""

from __future__ import annotations

import io
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping, TextIO

from . import closures, config, groebner, local_cohomology as lc, session, strong_test
from .dsl import (BinOp, Binding, Call, ListLit, Name, Neg, Num, Program, RingLit, Str,
                  TupleLit, Use, parse_expression, parse_program)
from .errors import BudgetExceededError, CCLError, DSLSyntaxError
from .groebner import GroebnerBasis, Ideal
from .poly import Polynomial, RingSpec

EXIT_OK, EXIT_FAILURE, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class EvalError(CCLError):
    pass


@dataclass
class TraceEntry:
    line: int
    col: int
    statement: str
    output: str
    status: str = "ok"  # ok | error | budget
    expected: list[str] | None = None

    def as_dict(self) -> dict:
        d = {"line": self.line, "col": self.col, "statement": self.statement,
             "output": self.output, "status": self.status}
        if self.expected is not None:
            d["expected"] = self.expected
        return d


# --- printing ------------------------------------------------------------------------


def render(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (Polynomial, Ideal, GroebnerBasis)):
        return str(value)
    if isinstance(value, RingSpec):
        return value.describe()
    if isinstance(value, lc.LocalCohomClass):
        return str(value)
    if isinstance(value, lc.SopData):
        regular = "regular" if value.regularity_checked else "not verified regular"
        return f"sop({', '.join(map(str, value.sop))}) [{regular}]"
    if isinstance(value, list):
        return "[" + ", ".join(render(v) for v in value) + "]"
    if isinstance(value, closures.ClosureVerdict):
        text = value.status.value
        if value.witness_q is not None:
            text += f" (witness q = {value.witness_q})"
        elif value.checked_up_to is not None:
            text += f" (checked up to q = {value.checked_up_to})"
        return text
    if isinstance(value, closures.ParameterTestIdeal):
        limit = str(value.limit) if value.limit is not None else "none"
        return (f"{value.ideal} [stabilized: {render(value.stabilized)}; "
                f"limit: {limit}, verified: {render(value.limit_verified)}]")
    if isinstance(value, strong_test.StrongTestReport):
        lines = ["I | I* | T*I == T*I*"]
        for row in value.per_ideal:
            lines.append(f"{row.ideal} | {row.closure} | {render(row.equal)}")
        lines.append(f"all_equal: {render(value.all_equal)}"
                     + ("" if value.faithful else " (T is not faithful)"))
        return "\n".join(lines)
    if isinstance(value, closures.IntegralDependenceCertificate):
        return f"degree {value.degree}: {value.characteristic_polynomial} = 0"
    return str(value)


# --- the executor ----------------------------------------------------------------------


@dataclass
class Executor:
    out: TextIO = field(default_factory=lambda: sys.stdout)
    err: TextIO = field(default_factory=lambda: sys.stderr)
    flags: Mapping[str, Any] = field(default_factory=dict)
    environ: Mapping[str, str] | None = None
    json_output: bool = False
    bindings: dict[str, Any] = field(default_factory=dict)
    kinds: dict[str, str] = field(default_factory=dict)
    current_ring: RingSpec | None = None
    current_ring_name: str | None = None
    cfg: config.Config = field(default_factory=config.Config)
    trace: list[TraceEntry] = field(default_factory=list)

    def __post_init__(self) -> None:
        self.cfg = config.resolve(self.flags, None, self.environ)

    # --- entry points -----------------------------------------------------------

    def run_source(self, source: str) -> int:
        try:
            program = parse_program(source)
        except DSLSyntaxError as exc:
            text = f"error: {exc.message}"
            if exc.expected:
                text += " (expected one of: " + ", ".join(sorted(exc.expected)) + ")"
            entry = TraceEntry(exc.line, exc.col, "", text, "error", sorted(exc.expected))
            self._emit_error(entry)
            return EXIT_USAGE
        return self.execute(program)

    def execute(self, program: Program) -> int:
        status = EXIT_OK
        for stmt in program.statements:
            entry = self.execute_statement(stmt)
            if entry.status == "budget":
                status = EXIT_BUDGET
            elif entry.status == "error" and status == EXIT_OK:
                status = EXIT_FAILURE
        return status

    def execute_statement(self, stmt) -> TraceEntry:
        entry = TraceEntry(stmt.loc.line, stmt.loc.col, stmt.text, "")
        try:
            with config.using(self.cfg):
                entry.output = self._run(stmt)
        except BudgetExceededError as exc:
            entry.status = "budget"
            entry.output = f"error: budget exceeded: {exc} {exc.progress}"
        except (CCLError, ValueError, KeyError, ZeroDivisionError, OverflowError, TypeError) as exc:
            entry.status = "error"
            entry.output = f"error: {exc}"
        self.trace.append(entry)
        if entry.status != "ok":
            self._emit_error(entry)
        elif entry.output:
            self._emit(entry)
        return entry

    def _emit(self, entry: TraceEntry) -> None:
        if self.json_output:
            self.out.write(json.dumps(entry.as_dict(), sort_keys=True) + "\n")
        else:
            self.out.write(entry.output + "\n")

    def _emit_error(self, entry: TraceEntry) -> None:
        if self.json_output:
            self.out.write(json.dumps(entry.as_dict(), sort_keys=True) + "\n")
        else:
            self.err.write(f"{entry.line}:{entry.col}: {entry.output}\n")

    # --- statements -------------------------------------------------------------

    def _run(self, stmt) -> str:
        if isinstance(stmt, Use):
            ring = self.lookup(stmt.name)
            if not isinstance(ring, RingSpec):
                raise EvalError(f"{stmt.name} is not a ring")
            self.current_ring, self.current_ring_name = ring, stmt.name
            return ""
        if isinstance(stmt, Binding):
            value = self.coerce_kind(stmt.kind, self.eval(stmt.expr))
            if stmt.name in self.bindings:
                self.err.write(f"{stmt.loc.line}:{stmt.loc.col}: warning: rebinding {stmt.name}\n")
            self.bind(stmt.name, stmt.kind, value)
            return ""
        value = self.call(stmt.name, stmt.args)
        return "" if value is None else render(value)

    def bind(self, name: str, kind: str, value: Any) -> None:
        self.bindings[name] = value
        self.kinds[name] = kind
        if kind == "ring":
            self.current_ring, self.current_ring_name = value, name

    def coerce_kind(self, kind: str, value: Any) -> Any:
        if kind == "ring":
            return self.as_ring(value)
        if kind == "ideal":
            return self.as_ideal(value)
        if kind == "poly":
            return self.as_poly(value)
        if kind == "class":
            if not isinstance(value, lc.LocalCohomClass):
                raise EvalError("expected a local cohomology class")
            return value
        if kind == "sop":
            return self.as_sop(value)
        if kind == "family":
            return self.as_family(value)
        raise EvalError(f"unknown binding kind {kind}")

    # --- coercions --------------------------------------------------------------

    def ring(self) -> RingSpec:
        if self.current_ring is None:
            raise EvalError("no ring declared yet")
        return self.current_ring

    def as_ring(self, v: Any) -> RingSpec:
        if isinstance(v, RingSpec):
            return v
        raise EvalError(f"expected a ring, got {render(v)}")

    def as_poly(self, v: Any) -> Polynomial:
        if isinstance(v, Polynomial):
            return v
        if isinstance(v, bool):
            raise EvalError("expected a polynomial, got a boolean")
        if isinstance(v, int):
            return self.ring().ambient.const(v)
        raise EvalError(f"expected a polynomial, got {render(v)}")

    def as_ideal(self, v: Any) -> Ideal:
        if isinstance(v, Ideal):
            return v
        if isinstance(v, closures.ParameterTestIdeal):
            return v.limit if v.limit_verified else v.ideal
        if isinstance(v, (Polynomial, int)) and not isinstance(v, bool):
            return Ideal(self.ring(), [self.as_poly(v)])
        if isinstance(v, tuple):
            return Ideal(self.ring(), [self.as_poly(x) for x in v])
        raise EvalError(f"expected an ideal, got {render(v)}")

    def as_int(self, v: Any) -> int:
        if isinstance(v, int) and not isinstance(v, bool):
            return v
        if isinstance(v, Polynomial) and v.is_constant():
            return v.constant_value()
        raise EvalError(f"expected an integer, got {render(v)}")

    def as_sop(self, v: Any) -> lc.SopData:
        if isinstance(v, lc.SopData):
            return v
        if isinstance(v, (tuple, list)):
            return lc.make_sop_data(self.ring(), [self.as_poly(x) for x in v])
        if isinstance(v, Ideal):
            return lc.make_sop_data(v.ring, list(v.generators))
        raise EvalError(f"expected a system of parameters, got {render(v)}")

    def as_family(self, v: Any) -> list[Ideal]:
        if isinstance(v, (list, tuple)):
            return [self.as_ideal(x) for x in v]
        raise EvalError(f"expected a list of ideals, got {render(v)}")

    def lookup(self, name: str) -> Any:
        if name in self.bindings:
            return self.bindings[name]
        if self.current_ring is not None and name in self.current_ring.variables:
            return self.current_ring.ambient.gen(name)
        raise EvalError(f"unbound name {name!r}")

    # --- expressions ------------------------------------------------------------

    def eval(self, node) -> Any:
        try:
            return self._eval(node)
        except EvalError as exc:
            if getattr(exc, "located", False):
                raise
            loc = getattr(node, "loc", None)
            located = EvalError(f"{exc} (at {loc.line}:{loc.col})" if loc else str(exc))
            located.located = True
            raise located from None

    def _eval(self, node) -> Any:
        if isinstance(node, Num):
            return node.value
        if isinstance(node, Str):
            return node.value
        if isinstance(node, Name):
            return self.lookup(node.id)
        if isinstance(node, TupleLit):
            return tuple(self.eval(x) for x in node.items)
        if isinstance(node, ListLit):
            return [self.eval(x) for x in node.items]
        if isinstance(node, Neg):
            v = self.eval(node.operand)
            return -v if isinstance(v, (int, Polynomial)) else self._type_error("-", v)
        if isinstance(node, BinOp):
            return self._binop(node.op, self.eval(node.left), self.eval(node.right))
        if isinstance(node, Call):
            return self.call(node.name, node.args)
        if isinstance(node, RingLit):
            return self._ring_literal(node)
        raise EvalError(f"cannot evaluate {node!r}")

    def _type_error(self, op: str, *vals):
        raise EvalError(f"operator {op} does not apply to " + ", ".join(render(v) for v in vals))

    def _binop(self, op: str, a: Any, b: Any) -> Any:
        if isinstance(a, tuple):
            a = self.as_ideal(a)
        if isinstance(b, tuple):
            b = self.as_ideal(b)
        if op == "^":
            n = self.as_int(b)
            if isinstance(a, (int, Polynomial, Ideal)) and not isinstance(a, bool):
                if n < 0:
                    raise EvalError("negative exponent")
                return a**n
            return self._type_error(op, a, b)
        if isinstance(a, Ideal) or isinstance(b, Ideal):
            if op == "+":
                return self.as_ideal(a) + self.as_ideal(b)
            if op == "*":
                if isinstance(a, Ideal) and isinstance(b, Ideal):
                    return a * b
                I, f = (a, b) if isinstance(a, Ideal) else (b, a)
                return I * self.as_poly(f)
            return self._type_error(op, a, b)
        scalars = (int, Polynomial)
        if isinstance(a, scalars) and isinstance(b, scalars) and not isinstance(a, bool) and not isinstance(b, bool):
            if op == "+":
                return a + b
            if op == "-":
                return a - b
            if op == "*":
                return a * b
        return self._type_error(op, a, b)

    def _ring_literal(self, node: RingLit) -> RingSpec:
        ambient = RingSpec(node.prime, node.variables)
        if node.defining is None:
            return ambient
        saved = self.current_ring
        self.current_ring = ambient
        try:
            value = self.eval(node.defining)
        finally:
            self.current_ring = saved
        gens = value if isinstance(value, tuple) else (value,)
        return ambient.quotient([self.as_poly(g) for g in gens])

    # --- commands ---------------------------------------------------------------

    def call(self, name: str, arg_nodes: tuple) -> Any:
        handler = getattr(self, f"cmd_{name}", None)
        if handler is None:
            raise EvalError(f"unknown command {name!r}")
        return handler(*[self.eval(a) for a in arg_nodes])

    def cmd_print(self, *values):
        return "\n".join(render(v) for v in values)

    def cmd_gb(self, I, order="grevlex"):
        orders = {"grevlex": groebner.GREVLEX, "lex": groebner.LEX}
        if order not in orders:
            raise EvalError(f"unknown order {order!r}")
        return groebner.groebner_basis(self.as_ideal(I), orders[order])

    def cmd_nf(self, f, I):
        return groebner.normal_form(self.as_poly(f), groebner.groebner_basis(self.as_ideal(I)))

    def cmd_member(self, f, I):
        return groebner.ideal_member(self.as_poly(f), self.as_ideal(I))

    def cmd_equal(self, I, J):
        return groebner.ideals_equal(self.as_ideal(I), self.as_ideal(J))

    def cmd_colon(self, I, J):
        return groebner.colon_ideal(self.as_ideal(I), self.as_ideal(J))

    def cmd_intersect(self, I, J):
        return groebner.intersect_ideals(self.as_ideal(I), self.as_ideal(J))

    def cmd_eliminate(self, I, k):
        return groebner.eliminate(self.as_ideal(I), self.as_int(k))

    def cmd_minprimes(self, I=None):
        if I is None:
            return closures.sr_minimal_primes(self.ring())
        return groebner.minimal_primes_squarefree(self.as_ideal(I))

    def cmd_qbasis(self, I):
        I = self.as_ideal(I)
        ring = I.ring
        return [ring.ambient.monomial(m) for m in groebner.quotient_vector_basis(ring, I)]

    def cmd_bracket(self, I, q):
        return closures.bracket_power(self.as_ideal(I), self.as_int(q))

    def cmd_tc(self, I):
        return closures.tight_closure_sr(self.as_ideal(I))

    def cmd_tcmember(self, f, I, c=None, e_max=None):
        f, I = self.as_poly(f), self.as_ideal(I)
        if c is None:
            return closures.tc_member_sr(f, I)
        return closures.tc_membership_bounded(f, I, self.as_poly(c),
                                              None if e_max is None else self.as_int(e_max))

    def cmd_testideal(self, R=None):
        return closures.test_ideal_sr(self.ring() if R is None else self.as_ring(R))

    def cmd_partestideal(self, S, t_max=4):
        S = self.as_sop(S)
        return closures.parameter_test_ideal(S.ring, list(S.sop), self.as_int(t_max))

    def cmd_sop(self, *elems):
        if elems and isinstance(elems[0], RingSpec):
            ring, elems = elems[0], elems[1:]
        else:
            ring = self.ring()
        return lc.make_sop_data(ring, [self.as_poly(e) for e in elems])

    def cmd_lcclass(self, r, t, S):
        return lc.make_class(self.as_poly(r), self.as_int(t), self.as_sop(S))

    def cmd_iszero(self, eta):
        return lc.class_is_zero(eta)

    def cmd_frob(self, eta):
        return lc.frobenius_class(eta)

    def cmd_annihilates(self, J, eta):
        return lc.annihilates(self.as_ideal(J), eta)

    def cmd_strongcheck(self, T, family):
        T = self.as_ideal(T)
        return strong_test.check_strong_property(T, self.as_family(family), T.ring)

    def cmd_idcert(self, x, I, T):
        return closures.integral_dependence_certificate(self.as_poly(x), self.as_ideal(I),
                                                        self.as_ideal(T))

    def cmd_reproduce(self, p):
        from .reproduce import reproduce_paper_example

        result = reproduce_paper_example(self.as_int(p))
        lines = [f"{'ok  ' if r.verdict else 'FAIL'} {r.assertion}" for r in result.records]
        lines.append("reproduced" if result.ok else f"FAILED: {result.first_failure}")
        return "\n".join(lines)

    def cmd_save(self, path):
        session.save(Path(path), self.bindings, self.kinds, self.cfg, self.current_ring_name)
        return None

    def cmd_load(self, path):
        data = session.load(Path(path))
        self.cfg = config.resolve(self.flags, data.config, self.environ)
        for name, (kind, value) in data.bindings.items():
            self.bind(name, kind, value)
        if data.current_ring and data.current_ring in self.bindings:
            self.current_ring_name = data.current_ring
            self.current_ring = self.bindings[data.current_ring]
        return None


def run_program(source: str, **kwargs) -> tuple[int, str, list[TraceEntry]]:
    """Run ``source`` capturing output; returns (exit status, stdout text, trace)."""
    out, err = io.StringIO(), io.StringIO()
    ex = Executor(out=out, err=err, **kwargs)
    status = ex.run_source(source)
    return status, out.getvalue(), ex.trace


def parse_polynomial(text: str, ring: RingSpec) -> Polynomial:
    ex = Executor(out=io.StringIO(), err=io.StringIO())
    ex.current_ring = ring
    return ex.as_poly(ex.eval(parse_expression(text)))


def parse_ideal(text: str, ring: RingSpec) -> Ideal:
    ex = Executor(out=io.StringIO(), err=io.StringIO())
    ex.current_ring = ring
    return ex.as_ideal(ex.eval(parse_expression(text)))
