import pytest
from hypothesis import given, settings

from charp_closure_lab import config
from charp_closure_lab import local_cohomology as lc
from charp_closure_lab.closures import test_ideal_sr as formula_test_ideal
from charp_closure_lab.errors import BudgetExceededError, DimensionError, PreconditionError
from charp_closure_lab.groebner import Ideal

from strategies import polynomials


def sop_for(R):
    x, y, z, w = R.ambient.gens()
    return lc.make_sop_data(R, [x - w, x - y - z])


def eta_for(R):
    x, y, z, w = R.ambient.gens()
    return lc.make_class((x * w) ** (R.prime - 1), R.prime, sop_for(R))


def test_sop_is_regular(sr_ring):
    assert sop_for(sr_ring).regularity_checked


def test_sop_dimension_checks(sr3):
    x, y, z, w = sr3.ambient.gens()
    with pytest.raises(DimensionError):
        lc.make_sop_data(sr3, [x - w])
    with pytest.raises(DimensionError):
        lc.make_sop_data(sr3, [x, y, z, w])


def test_make_class_examples(sr3):
    S = sop_for(sr3)
    x, y, z, w = sr3.ambient.gens()
    assert lc.class_is_zero(lc.make_class(sr3.ambient.zero(), 2, S))
    assert lc.make_class((x - w) ** 2 * y, 2, S).representative.is_zero()
    with pytest.raises(ValueError):
        lc.make_class(x, 0, S)


def test_class_is_zero_examples(sr_ring):
    x, y, z, w = sr_ring.ambient.gens()
    S = sop_for(sr_ring)
    assert lc.class_is_zero(lc.make_class((x - w) ** 3, 3, S))
    assert not lc.class_is_zero(eta_for(sr_ring))


def test_zero_test_refuses_unverified_sop(sr3):
    x, y, z, w = sr3.ambient.gens()
    S = lc.make_sop_data(sr3, [x - w, x - y - z], check_regular=False)
    with pytest.raises(PreconditionError):
        lc.class_is_zero(lc.make_class(x, 1, S))


def test_frobenius_examples(sr_ring):
    p = sr_ring.prime
    x, y, z, w = sr_ring.ambient.gens()
    S = sop_for(sr_ring)
    F = lc.frobenius_class(eta_for(sr_ring))
    assert F.level == p * p
    assert lc.classes_equal(F, lc.make_class((x * w) ** (p * (p - 1)), p * p, S))
    assert lc.class_is_zero(lc.frobenius_class(lc.make_class(sr_ring.ambient.zero(), 1, S)))
    one = lc.frobenius_class(lc.make_class(sr_ring.ambient.one(), 1, S))
    assert one.level == p and one.representative == sr_ring.ambient.one()


def test_frobenius_level_cap(sr3):
    with config.using(config.Config(q_max=5)):
        with pytest.raises(BudgetExceededError):
            lc.frobenius_class(eta_for(sr3))


@pytest.mark.parametrize("p", [2, 3, 5])
def test_tau_kills_eta(p):
    R = lc.counterexample_ring(p)
    assert lc.annihilates(formula_test_ideal(R), eta_for(R))
    assert lc.annihilates(Ideal.zero(R), eta_for(R))


@pytest.mark.parametrize("p", [2, 3])
def test_tau_does_not_kill_frobenius_of_eta(p):
    R = lc.counterexample_ring(p)
    assert not lc.annihilates(formula_test_ideal(R), lc.frobenius_class(eta_for(R)))


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_counterexample_report(p):
    report = lc.fstability_counterexample(p)
    assert report.ok
    assert {"assertion", "inputs", "verdict", "paper_anchor"} == set(report.records[0].as_dict())


def test_counterexample_rejects_composite():
    with pytest.raises(ValueError):
        lc.fstability_counterexample(4)


R3 = lc.counterexample_ring(3)
S3 = sop_for(R3)


@settings(max_examples=40)
@given(polynomials(R3, max_terms=3, max_degree=2))
def test_level_raising_consistency(r):
    a = lc.make_class(r, 1, S3)
    b = lc.make_class(S3.product() * r, 2, S3)
    assert lc.classes_equal(a, b)


@settings(max_examples=30)
@given(polynomials(R3, max_terms=2, max_degree=2), polynomials(R3, max_terms=2, max_degree=2))
def test_frobenius_multiplicative(r, s):
    lhs = lc.frobenius_class(lc.make_class(r * s, 1, S3))
    rhs = lc.make_class(r**3 * s**3, 3, S3)
    assert lc.classes_equal(lhs, rhs)


@settings(max_examples=30)
@given(polynomials(R3, max_terms=2, max_degree=2))
def test_annihilates_is_monotone(g):
    eta = eta_for(R3)
    tau = formula_test_ideal(R3)
    bigger = tau + Ideal(R3, [g])
    if lc.annihilates(bigger, eta):
        assert lc.annihilates(tau, eta)
    assert lc.annihilates(Ideal(R3, tau.generators[:1]), eta)
