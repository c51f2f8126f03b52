"""Lattice numerology: discriminants, normalization, SNF certificates, witness group."""

from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dpk import lattice as lat


def test_delta_is_gram_determinant_exhaustive():
    for a, b in itertools.product(range(-20, 21), repeat=2):
        assert lat.gram_K(a, b).det == lat.delta(a, b)


def test_normalize_preserves_delta_and_parity_exhaustive():
    for a, b in itertools.product(range(-20, 21), repeat=2):
        a2, b2 = lat.normalize_sigma(a, b)
        assert a2 in (-1, 0, 1)
        assert lat.delta(a2, b2) == lat.delta(a, b)
        assert lat.evenness_check(a2, b2) == lat.evenness_check(a, b)


def test_evenness_is_parity_of_a_plus_b():
    for a, b in itertools.product(range(-6, 7), repeat=2):
        assert lat.evenness_check(a, b) == ((a + b) % 2 == 0)


def test_admissible_discriminants_up_to_200():
    res = lat.admissible_discriminants(200)
    assert res.values == tuple(range(9, 201, 12))
    assert len(set(res.values)) == len(res.witnesses)
    assert res.warning
    for d, a, b in res.witnesses:
        assert lat.delta(a, b) == d and a in (-1, 0, 1) and (a - b) % 2 == 0


def test_enum_small_matches_cli_example():
    res = lat.admissible_discriminants(50)
    assert res.values == (9, 21, 33, 45)


def test_known_first_witness():
    assert lat.delta(1, 1) == 9


def test_snf_certificates_on_random_matrices():
    rng = random.Random(20240601)
    for _ in range(1000):
        m, n = rng.randint(1, 8), rng.randint(1, 8)
        M = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)]
        S = lat.smith_normal_form(M)
        assert S.verify()


@settings(max_examples=60)
@given(st.integers(1, 6).flatmap(
    lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_snf_invariants_multiply_to_det(M):
    S = lat.smith_normal_form(M)
    assert S.verify()
    prod = 1
    for d in S.diagonal:
        prod *= d
    assert prod == abs(lat.int_det(M))


def test_integer_kernel():
    A = [[1, 2, 3], [2, 4, 6]]
    K = lat.integer_kernel(A, 3)
    assert len(K) == 2
    for v in K:
        assert all(sum(r[i] * v[i] for i in range(3)) == 0 for r in A)


def test_discriminant_group_order_matches_det():
    for G in (lat.A2, lat.U, lat.E8, lat.gram_K(1, 1), lat.primitive_cohomology_lattice()):
        assert lat.discriminant_group(G).order == abs(G.det)
    assert str(lat.discriminant_group(lat.A2)) == "Z/3"
    assert lat.E8.det == 1 and lat.E8.is_even


def test_labelling_witness_group():
    w = lat.labelling_witness()
    assert str(w.group) == "Z/3 + Z/6"
    assert w.complement_rank == 21 and abs(w.complement_det) == 18
    assert w.complement_even


def test_self_intersection_of_T():
    # a sextic del Pezzo: h^2 = 6, hK = -6, K^2 = 6, euler number 6
    assert lat.surface_self_intersection(6, -6, 6, 6) == 18


def test_euler_numerology():
    assert lat.euler_p2(6, 6, 9) == 27
    for dI in range(1, 9):
        for dII in range(1, 9):
            for bIV in range(0, (dII - 1) * (dII - 2) // 2 + 1):
                n = lat.derived_strata(dI, dII, bIV)
                assert lat.euler_general(3, n) == lat.euler_p2(dI, dII, bIV)


def test_derived_strata_rejects_too_many_cusps():
    with pytest.raises(ValueError):
        lat.derived_strata(6, 3, 5)
