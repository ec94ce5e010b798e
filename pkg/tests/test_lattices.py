import itertools
import json
from fractions import Fraction
from math import gcd

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from siegelcong.eisenstein import eis1
from siegelcong.exact import residue_mod_p
from siegelcong.lattices import (
    BinaryCode, IntegralLattice, exact_determinant, genus_bqf, genus_theta, golay_code,
    hermite_normal_form, lattice_from_gram, lattice_theta1, leech_contains, leech_generators,
    leech_identity_expansion, leech_theta_identity_check, lll_reduce, qr_generator_polynomial,
    representations, short_vector_counts,
)
from siegelcong.qexp import congruence_violations, phi_op
from siegelcong.quadforms import enumerate_pos_def_reduced
from siegelcong.report import Status

E8_GRAM = [
    [2, -1, 0, 0, 0, 0, 0, 0], [-1, 2, -1, 0, 0, 0, 0, 0], [0, -1, 2, -1, 0, 0, 0, -1],
    [0, 0, -1, 2, -1, 0, 0, 0], [0, 0, 0, -1, 2, -1, 0, 0], [0, 0, 0, 0, -1, 2, -1, 0],
    [0, 0, 0, 0, 0, -1, 2, 0], [0, 0, -1, 0, 0, 0, 0, 2],
]


def brute_force_counts(gram, max_norm):
    G = np.array(gram, dtype=float)
    radius = int(np.sqrt(max_norm / np.linalg.eigvalsh(G).min())) + 1
    counts = [0] * (max_norm + 1)
    Gi = np.array(gram, dtype=np.int64)
    for x in itertools.product(range(-radius, radius + 1), repeat=len(gram)):
        v = np.array(x, dtype=np.int64)
        n = int(v @ Gi @ v)
        if n <= max_norm:
            counts[n] += 1
    return dict(enumerate(counts))


def test_golay_code():
    code = golay_code()
    assert len(qr_generator_polynomial()) == 12
    assert code.length == 24 and code.dimension == 12
    assert code.weight_enumerator() == {0: 1, 8: 759, 12: 2576, 16: 759, 24: 1}
    assert code.minimum_weight() == 8
    assert code.is_self_dual()
    assert 0 in set(code.codewords())


def test_code_serialization():
    data = json.loads(json.dumps(golay_code().to_dict()))
    rows = data["generator_rows"]
    assert len(rows) == 12 and all(set(r) <= {"0", "1"} and len(r) == 24 for r in rows)


def test_leech_membership_predicate():
    assert leech_contains([0] * 24)
    assert leech_contains([4, 4] + [0] * 22)
    assert leech_contains([8] + [0] * 23)
    assert leech_contains([-3] + [1] * 23)
    assert not leech_contains([2, 2] + [0] * 22)
    assert not leech_contains([4] + [0] * 23)
    assert not leech_contains([1] * 24)
    assert all(leech_contains(g) for g in leech_generators())


def test_leech_lattice_invariants(leech):
    assert leech.rank == 24
    assert leech.determinant() == 1
    assert leech.is_integral() and leech.is_even()
    for row in leech.basis:
        assert leech_contains(row)


def test_leech_short_vectors(leech):
    counts = short_vector_counts(leech, 4)
    assert counts[0] == 1 and counts[2] == 0 and counts[4] == 196560
    assert all(counts[m] == 0 for m in (1, 3))


def test_leech_identity_expansion_values():
    ident = leech_identity_expansion(5)
    assert [ident[t] for t in range(3)] == [1, 0, 196560]
    assert residue_mod_p(ident[5], 23) == 0


def test_leech_theta_identity_check():
    report = leech_theta_identity_check(500, enum_bound=2)
    assert report.status is Status.PASS and report.violations == []


def test_lattice_json_round_trip(leech):
    again = IntegralLattice.from_json(leech.to_json())
    assert again.gram == leech.gram
    assert again.to_json() == leech.to_json()
    assert json.loads(leech.to_json())["gram"][0][0] == "4/1"


def test_e8_theta_is_weight_four_eisenstein():
    E8 = lattice_from_gram(E8_GRAM, "E8")
    assert E8.determinant() == 1 and E8.is_even()
    theta = lattice_theta1(E8, 4)
    assert [theta[t] for t in range(5)] == [eis1(4, 4)[t] for t in range(5)]


@st.composite
def small_grams(draw):
    n = draw(st.integers(1, 3))
    rows = draw(st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n),
                         min_size=n, max_size=n))
    B = np.array(rows, dtype=np.int64)
    if round(abs(np.linalg.det(B))) == 0:
        B = B + 4 * np.eye(n, dtype=np.int64)
    return (B @ B.T).tolist()


@settings(max_examples=30)
@given(small_grams(), st.integers(0, 12))
def test_enumeration_matches_brute_force(gram, max_norm):
    if exact_determinant(gram) == 0:
        return
    counts = short_vector_counts(lattice_from_gram(gram), max_norm)
    assert counts == brute_force_counts(gram, max_norm)


@given(st.lists(st.lists(st.integers(-9, 9), min_size=3, max_size=3), min_size=3, max_size=5))
def test_hnf_shape_and_covolume(rows):
    H = [r for r in hermite_normal_form(rows) if any(r)]
    rank = np.linalg.matrix_rank(np.array(rows, dtype=float))
    assert len(H) == rank
    pivots = [next(j for j, x in enumerate(r) if x) for r in H]
    assert pivots == sorted(set(pivots))
    for i, (r, lead) in enumerate(zip(H, pivots)):
        assert r[lead] > 0
        assert all(0 <= H[k][lead] < r[lead] for k in range(i))
    if rank == 3:
        minors = [abs(exact_determinant(list(c))) for c in itertools.combinations(rows, 3)]
        g = 0
        for m in minors:
            g = gcd(g, int(m))
        assert abs(exact_determinant(H)) == g


def test_lll_keeps_determinant():
    basis = [[1, 0, 0, 1000], [0, 1, 0, 2000], [0, 0, 1, 3001], [0, 0, 0, 7]]
    reduced = lll_reduce(basis)
    assert abs(exact_determinant(reduced)) == abs(exact_determinant(basis))
    assert max(sum(x * x for x in r) for r in reduced) < 1000


@pytest.mark.parametrize("p, t, expected", [(23, 0, 1), (23, 1, Fraction(2, 3)),
                                            (23, 2, Fraction(4, 3)), (11, 0, 1)])
def test_genus_theta_values(p, t, expected):
    assert genus_theta(p, 1, 3)[t] == expected


def test_genus_of_discriminant_minus_23():
    genus = genus_bqf(23)
    assert genus.mass == Fraction(3, 2)
    assert representations((1, 1, 6), 1)[1] == [(-1, 0), (1, 0)] or \
        sorted(representations((1, 1, 6), 1)[1]) == [(-1, 0), (1, 0)]


@pytest.mark.parametrize("p", [11, 19, 23])
def test_genus_theta_matches_eisenstein_mod_p(p):
    k = (p + 1) // 2
    assert congruence_violations(eis1(k, 300), genus_theta(p, 1, 300), p) == []
    assert residue_mod_p(eis1(12, 2)[2], 23) == residue_mod_p(genus_theta(23, 1, 2)[2], 23) == 9


@pytest.mark.parametrize("p", [11, 23])
def test_degree_two_genus_theta_restricts(p):
    G2, G1 = genus_theta(p, 2, 12), genus_theta(p, 1, 12)
    assert all(phi_op(G2)[t] == G1[t] for t in range(13))
    assert G2[(0, 0, 0)] == 1


def test_degree_two_genus_theta_counts_pairs():
    # for p = 23 only (1,1,6) represents 1, with vectors +-e1; no pair gives (1,1,1)
    G = genus_theta(23, 2, 4)
    assert G[(1, 1, 1)] == 0
    assert G[(1, 0, 0)] == Fraction(2, 3)
    assert G[(1, 2, 1)] == Fraction(2, 3)
