from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from siegelcong.characters import (
    carlitz_congruence_check, fundamental_decompose, fundamental_discriminants, gen_bernoulli,
    gen_bernoulli_valuation, is_fundamental, kronecker, quad_char,
)
from siegelcong.errors import PDividesConductor, TrivialM1
from siegelcong.exact import bernoulli, bernoulli_poly_eval, ord_p, primes_up_to, residue_mod_p

def _is_square(n):
    return n >= 0 and int(n ** 0.5 + 0.5) ** 2 == n


NONSQUARE_DISCS = [D for D in range(-200, 201) if D % 4 in (0, 1) and D and not _is_square(D)]


def conductor_sum_oracle(m, D0):
    # B_{m,chi} = f^(m-1) sum_a chi(a) B_m(a/f)
    f = abs(D0)
    return f ** (m - 1) * sum(kronecker(D0, a) * bernoulli_poly_eval(m, Fraction(a, f))
                              for a in range(1, f + 1))


@pytest.mark.parametrize("a, n, expected", [(-23, 5, -1), (7, 1, 1), (2, 11, -1), (-4, 7, -1),
                                            (-3, 7, 1)])
def test_kronecker_values(a, n, expected):
    assert kronecker(a, n) == expected


@pytest.mark.parametrize("D, expected", [(-12, (-3, 2)), (-23, (-23, 1)), (9, (1, 3)),
                                         (-16, (-4, 2)), (12, (12, 1)), (-108, (-3, 6))])
def test_fundamental_decomposition(D, expected):
    assert tuple(fundamental_decompose(D)) == expected


def test_characters_from_discriminants():
    chi = quad_char(9)
    assert chi.is_trivial and chi.conductor == 1
    assert quad_char(-4)(7) == -1
    assert quad_char(-3)(7) == 1
    assert quad_char(-12) == quad_char(-3)


@pytest.mark.parametrize("D", NONSQUARE_DISCS)
def test_character_periodic_mod_conductor(D):
    chi = quad_char(D)
    f = chi.conductor
    for a in range(-f, 3 * f):
        assert chi(a) == chi(a + f)
    assert chi(-1) == (1 if chi.fundamental_discriminant > 0 else -1)


@given(st.sampled_from(NONSQUARE_DISCS), st.integers(-500, 500), st.integers(-500, 500))
def test_character_multiplicative(D, a, b):
    chi = quad_char(D)
    assert chi(a * b) == chi(a) * chi(b)


@pytest.mark.parametrize("p", [p for p in primes_up_to(50) if p > 2])
def test_kronecker_euler_criterion(p):
    for q in primes_up_to(p - 1):
        assert kronecker(q, p) % p == pow(q, (p - 1) // 2, p)


@given(st.integers(-10**6, 10**6).filter(lambda D: D % 4 in (0, 1) and D != 0))
def test_decomposition_recombines(D):
    d0, f = fundamental_decompose(D)
    assert d0 * f * f == D
    assert d0 == 1 or is_fundamental(d0)


def test_fundamental_discriminant_list():
    assert fundamental_discriminants(12) == [-3, -4, 5, -7, -8, 8, -11, 12]
    assert all(D < 0 for D in fundamental_discriminants(30, sign=-1))


@pytest.mark.parametrize("m, D, expected", [(3, -4, Fraction(3, 2)), (1, -3, Fraction(-1, 3)),
                                            (2, -3, Fraction(0))])
def test_generalized_bernoulli_values(m, D, expected):
    assert gen_bernoulli(m, quad_char(D)) == expected


def test_generalized_bernoulli_trivial_character():
    assert gen_bernoulli(4, quad_char(1)) == bernoulli(4)
    with pytest.raises(TrivialM1):
        gen_bernoulli(1, quad_char(1))


@pytest.mark.parametrize("D0", fundamental_discriminants(60))
def test_generalized_bernoulli_matches_conductor_sum(D0):
    chi = quad_char(D0)
    for m in range(1, 13):
        assert gen_bernoulli(m, chi) == conductor_sum_oracle(m, D0), m


@pytest.mark.parametrize("D0", fundamental_discriminants(50))
def test_generalized_bernoulli_parity_vanishing(D0):
    chi = quad_char(D0)
    for m in range(1, 21):
        if (-1) ** m != chi(-1):
            assert gen_bernoulli(m, chi) == 0


def test_denominator_predicate():
    val, possible = gen_bernoulli_valuation(3, quad_char(-7), 7)
    assert possible and val.value == ord_p(gen_bernoulli(3, quad_char(-7)), 7) == -1
    val, possible = gen_bernoulli_valuation(7, quad_char(-7), 7)
    assert not possible and val.at_least(0)
    val, possible = gen_bernoulli_valuation(6, quad_char(-3), 7)
    assert not possible and val.at_least(0)


@pytest.mark.parametrize("D, p, rhs", [(-3, 7, 0), (-4, 7, 6), (-3, 5, 1)])
def test_carlitz_examples(D, p, rhs):
    check = carlitz_congruence_check(quad_char(D), p)
    assert check.rhs == rhs and check.equal


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_carlitz_congruence_over_small_discriminants(p):
    checked = 0
    for D0 in fundamental_discriminants(100):
        if D0 % p == 0:
            with pytest.raises(PDividesConductor):
                carlitz_congruence_check(quad_char(D0), p)
            continue
        assert carlitz_congruence_check(quad_char(D0), p).equal, D0
        checked += 1
    assert checked > 40


def test_carlitz_sides_recomputed():
    chi = quad_char(-4)
    lhs = residue_mod_p(conductor_sum_oracle(7, -4) / 7, 7)
    assert carlitz_congruence_check(chi, 7).lhs == lhs
