import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from siegelcong.eisenstein import delta_expansion, eis1, eis2, g12_expansion
from siegelcong.errors import DenominatorDivisible
from siegelcong.qexp import (
    FourierExpansion, KernelMode, congruence_violations, constant, from_function, kernel_report,
    linear_combine, multiply, phi_op, reduce_mod_p, theta_op,
)
from siegelcong.quadforms import BinaryHalfIntegral, enumerate_psd

BOUND2 = 3
PSD = enumerate_psd(BOUND2)

small_rationals = st.builds(Fraction, st.integers(-50, 50), st.integers(1, 6))


def deg1_expansions(bound=8):
    return st.lists(small_rationals, min_size=bound + 1, max_size=bound + 1).map(
        lambda vs: FourierExpansion(1, bound, dict(enumerate(vs)), "r"))


def deg2_expansions():
    return st.lists(small_rationals, min_size=len(PSD), max_size=len(PSD)).map(
        lambda vs: FourierExpansion(2, BOUND2, dict(zip(PSD, vs)), "r"))


def convolution_oracle(F, G):
    out = {}
    for T in F.region_indices():
        total = Fraction(0)
        for S in F.region_indices():
            R = (T[0] - S[0], T[1] - S[1], T[2] - S[2])
            if BinaryHalfIntegral(*R).is_psd():
                total += F[S] * G[R]
        out[T] = total
    return out


def test_theta_operator():
    E4 = eis2(4, 3)
    assert theta_op(E4)[(1, 1, 1)] == 10080
    assert theta_op(E4)[(1, 0, 0)] == 0
    assert all(v == 0 for v in reduce_mod_p(theta_op(eis2(6, 4)), 11).values())


@given(deg2_expansions())
def test_theta_vanishes_on_singular_indices(F):
    G = theta_op(F)
    for T in PSD:
        if T.det2 == 0:
            assert G[T] == 0
        else:
            assert G[T] == F[T] * T.det


def test_phi_operator():
    one = phi_op(constant(2, 4))
    assert [one[t] for t in range(5)] == [1, 0, 0, 0, 0]
    assert phi_op(eis2(12, 2))[1] == Fraction(65520, 691)
    for t in range(0, 9):
        assert phi_op(eis2(4, 8))[t] == eis1(4, 8)[t]


@given(deg2_expansions(), deg2_expansions(), small_rationals, small_rationals)
def test_operators_are_linear(F, G, x, y):
    combo = linear_combine([(x, F), (y, G)])
    for op in (theta_op, phi_op):
        lhs, rf, rg = op(combo), op(F), op(G)
        for T in lhs.region_indices():
            assert lhs[T] == x * rf[T] + y * rg[T]


def test_linear_combine_truncates_to_smaller_bound():
    F, G = eis1(4, 10), eis1(6, 6)
    combo = linear_combine([(1, F), (0, G)])
    assert combo.bound == 6
    assert all(combo[t] == F[t] for t in range(7))


def test_delta_from_classical_identity():
    E4, E6 = eis1(4, 30), eis1(6, 30)
    delta = linear_combine([(Fraction(1, 1728), multiply(multiply(E4, E4), E4)),
                            (Fraction(-1, 1728), multiply(E6, E6))])
    assert delta[1] == 1 and delta[2] == -24
    assert all(delta[t] == delta_expansion(30)[t] for t in range(31))
    leech = linear_combine([(1, eis1(12, 5)), (Fraction(-65520, 691), delta_expansion(5))])
    assert leech[0] == 1 and leech[1] == 0 and leech[2] == 196560


def test_ring_identity():
    E4, E8 = eis2(4, 6), eis2(8, 6)
    sq = multiply(E4, E4)
    assert all(sq[T] == E8[T] for T in enumerate_psd(6))
    e4 = eis1(4, 50)
    assert multiply(e4, e4).coefficients == eis1(8, 50).coefficients
    one = constant(2, 6)
    assert all(multiply(one, E4)[T] == E4[T] for T in enumerate_psd(6))


@given(deg2_expansions(), deg2_expansions())
def test_multiply_matches_convolution_and_commutes(F, G):
    FG = multiply(F, G)
    assert FG.coefficients == multiply(G, F).coefficients
    oracle = convolution_oracle(F, G)
    assert all(FG[T] == oracle[T] for T in PSD)


@given(deg2_expansions(), deg2_expansions(), deg2_expansions())
def test_multiply_is_associative(F, G, H):
    assert multiply(multiply(F, G), H).coefficients == multiply(F, multiply(G, H)).coefficients


@given(deg1_expansions(), deg1_expansions(), deg1_expansions())
def test_degree_one_ring_axioms(F, G, H):
    assert multiply(F, G).coefficients == multiply(G, F).coefficients
    assert multiply(multiply(F, G), H).coefficients == multiply(F, multiply(G, H)).coefficients
    lhs = multiply(F, linear_combine([(1, G), (1, H)]))
    rhs = linear_combine([(1, multiply(F, G)), (1, multiply(F, H))])
    assert lhs.coefficients == rhs.coefficients


def test_reduction_mod_p():
    assert reduce_mod_p(eis1(12, 3), 23)[1] == 16
    assert reduce_mod_p(delta_expansion(3), 691)[2] == 2049 % 691
    bad = FourierExpansion(1, 3, {0: Fraction(1), 2: Fraction(1, 7)})
    with pytest.raises(DenominatorDivisible) as info:
        reduce_mod_p(bad, 7)
    assert info.value.index == 2


def test_congruence_violations():
    delta, g12 = delta_expansion(100), g12_expansion(100)
    assert congruence_violations(delta, g12, 691, lambda t: t >= 1) == []
    E4 = eis1(4, 20)
    assert congruence_violations(E4, E4, 5) == []


def test_kernel_report():
    assert kernel_report(eis2(6, 12), 11, KernelMode.THETA_KERNEL) == []
    singular = kernel_report(eis2(4, 4), 23, KernelMode.SINGULAR)
    assert BinaryHalfIntegral(1, 1, 1) in singular
    zero = FourierExpansion(2, 4, {})
    assert kernel_report(zero, 5, KernelMode.SINGULAR) == []


@given(deg2_expansions())
def test_json_round_trip_is_exact(F):
    text = F.to_json()
    G = FourierExpansion.from_json(text)
    assert G == F or (G.coefficients == F.coefficients and G.bound == F.bound)
    assert G.to_json() == text


def test_json_layout():
    data = json.loads(eis1(12, 2).to_json())
    assert data["degree"] == 1 and data["bound"] == 2
    assert data["coefficients"]["1"] == "65520/691"
    data = json.loads(eis2(4, 2).to_json())
    assert data["coefficients"]["1,1,1"] == "13440/1"


def test_classwise_lookup_matches_full_table():
    full = from_function(2, 5, lambda T: T.det2 + 7 * T.content, "f")
    classwise = from_function(2, 5, lambda T: T.det2 + 7 * T.content, "f", classwise=True)
    assert len(classwise.coefficients) < len(full.coefficients)
    for T in enumerate_psd(5):
        assert classwise[T] == full[T]
    with pytest.raises(KeyError):
        classwise[(6, 0, 0)]
