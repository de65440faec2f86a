"""Property suites for the engine laws; each runs 200 derandomized cases."""

from hypothesis import given, settings, strategies as st

from charp_closure_lab.closures import bracket_power, test_ideal_sr as formula_test_ideal, tight_closure_sr
from charp_closure_lab.executor import parse_ideal, parse_polynomial
from charp_closure_lab.groebner import (LEX, Ideal, colon_ideal, groebner_basis, ideal_contains,
                                        ideal_member, ideals_equal, normal_form)
from charp_closure_lab.local_cohomology import counterexample_ring
from charp_closure_lab.poly import RingSpec

from strategies import ideals, mixed_ideals, monomial_or_binomial, polynomials

CASES = 200
F5 = RingSpec(5, ("x", "y", "z"))
F3 = RingSpec(3, ("x", "y", "z"))
F2 = RingSpec(2, ("x", "y", "z"))
SR2 = counterexample_ring(2)
TAU2 = formula_test_ideal(SR2)


@settings(max_examples=CASES)
@given(ideals(F5, max_gens=3, max_terms=3, max_degree=3), polynomials(F5, 3, 2), polynomials(F5, 3, 2))
def gb_membership(I, f, h):
    B = groebner_basis(I)
    for g in I.generators:
        assert ideal_member(g, I)
    combo = f * I.generators[0] + h * I.generators[-1]
    assert ideal_member(combo, I)
    r = normal_form(f, B)
    assert normal_form(r, B) == r
    assert ideal_member(f - r, I)
    assert ideal_member(f, I) == normal_form(f, groebner_basis(I, LEX)).is_zero()
    assert ideals_equal(Ideal(F5, B.elements), I)


@settings(max_examples=CASES)
@given(mixed_ideals(F3, max_gens=2, max_degree=3), mixed_ideals(F3, max_gens=2, max_degree=2),
       polynomials(F3, 2, 2))
def colon_adjunction(I, J, f):
    K = colon_ideal(I, J)
    assert ideal_member(f, K) == all(ideal_member(f * g, I) for g in J.generators)
    assert ideal_contains(I, K * J)
    assert ideal_contains(K, I)


@settings(max_examples=CASES)
@given(st.lists(monomial_or_binomial(F2, 2), min_size=1, max_size=2), polynomials(F2, 2, 1),
       st.sampled_from([(2, 2), (2, 4), (4, 2)]))
def bracket_laws(gens, h, qs):
    q, q2 = qs
    I = Ideal(F2, gens)
    assert ideals_equal(bracket_power(bracket_power(I, q), q2), bracket_power(I, q * q2))
    assert ideal_contains(I**q, bracket_power(I, q))
    # another generating set of the same ideal gives the same bracket power
    regen = Ideal(F2, [gens[0], gens[-1] + h * gens[0]] + list(gens))
    assert ideals_equal(bracket_power(regen, q), bracket_power(I, q))


@settings(max_examples=CASES)
@given(mixed_ideals(SR2, max_gens=3, max_degree=3), mixed_ideals(SR2, max_gens=2, max_degree=2))
def closure_laws(I, J):
    star = tight_closure_sr(I)
    assert ideal_contains(star, I)
    assert ideals_equal(tight_closure_sr(star), star)
    assert ideal_contains(tight_closure_sr(I + J), star)
    assert ideal_contains(I, TAU2 * star)


@settings(max_examples=CASES)
@given(polynomials(F5, max_terms=5, max_degree=5), ideals(F3, max_gens=3, max_terms=3, max_degree=2))
def parse_print_round_trip(f, I):
    assert parse_polynomial(str(f), F5) == f
    assert ideals_equal(parse_ideal(str(I), F3), I)
    assert str(parse_polynomial(str(f), F5)) == str(f)


SUITES = {
    "gb_membership": gb_membership,
    "colon_adjunction": colon_adjunction,
    "bracket_laws": bracket_laws,
    "closure_laws": closure_laws,
    "parse_print_round_trip": parse_print_round_trip,
}
