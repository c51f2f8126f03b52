"""Engine properties: Groebner bases, saturation, membership, Hilbert data."""

from __future__ import annotations

import random
from math import comb, prod

from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import homogeneous_forms, homogeneous_ideals
from dpk.groebner import Ideal, buchberger, eliminate, intersect, saturate
from dpk.hilbert import _coeff_rows, degree_piece_span, hilbert
from dpk.linalg import rank
from dpk.ring import MonomialOrder, make_ring


def _terms(G):
    return [g.terms for g in G]


@settings(max_examples=100)
@given(homogeneous_ideals(), st.randoms(use_true_random=False))
def test_reduced_gb_unique_under_permutation(gens, rnd):
    shuffled = list(gens)
    rnd.shuffle(shuffled)
    assert _terms(buchberger(gens)) == _terms(buchberger(shuffled))


@settings(max_examples=100)
@given(homogeneous_ideals())
def test_gb_generates_and_reduces(gens):
    I = Ideal(gens)
    G = I.groebner()
    assert all(I.contains(g) for g in gens)
    assert all(g.lc() == 1 for g in G)
    # reduced: no leading monomial divides a term of another element
    R = I.ring
    for g in G:
        for h in G:
            if g is not h:
                assert not any(R.divides(g.lm(), m) for m in h.terms)


@settings(max_examples=40)
@given(homogeneous_ideals(max_gens=3, max_degree=2), st.integers(0, 2))
def test_saturation_idempotent(gens, j):
    I = Ideal(gens)
    x = I.ring.var(j)
    S = saturate(I, x)
    assert saturate(S, x) == S
    assert S.contains_ideal(I)


@settings(max_examples=60)
@given(homogeneous_ideals(), st.data())
def test_membership_two_orders(gens, data):
    R = make_ring(7, ["x0", "x1", "x2"])
    I = Ideal(gens, R)
    mults = [data.draw(homogeneous_forms(R, data.draw(st.integers(0, 2)))) for _ in gens]
    f = sum((m * g for m, g in zip(mults, gens)), R.zero())
    extra = data.draw(homogeneous_forms(R, 3))
    lex = MonomialOrder.lex(3)
    for h in (f, f + extra):
        assert I.contains(h) == I.contains(h, order=lex)
    assert I.contains(f)


@settings(max_examples=60)
@given(st.lists(st.integers(1, 3), min_size=1, max_size=3), st.integers(0, 10 ** 6))
def test_complete_intersection_degree(degs, seed):
    R = make_ring(101, ["x0", "x1", "x2", "x3"])
    rng = random.Random(seed)
    gens = []
    for d in degs:
        f = R.zero()
        for m in R.monomials_of_degree(d):
            f = f + R.monomial(R.decode(m), rng.randrange(101))
        gens.append(f)
    if any(g.is_zero() for g in gens):
        return
    h = hilbert(Ideal(gens, R))
    # codimension len(degs) means a complete intersection, whose degree is the product
    if h.dim == R.n - 1 - len(degs):
        assert h.degree == prod(degs)


def _brute_hilbert(gens, R, d):
    basis = {m: i for i, m in enumerate(R.monomials_of_degree(d))}
    span = degree_piece_span(gens, R, d)
    r = rank(R.field, _coeff_rows(span, basis)) if span else 0
    return len(basis) - r


@settings(max_examples=60)
@given(homogeneous_ideals(max_gens=3, max_degree=3))
def test_hilbert_function_matches_linear_algebra(gens):
    R = gens[0].ring
    h = hilbert(Ideal(gens, R))
    for d in range(0, 6):
        assert h.hilbert_function(d) == _brute_hilbert(gens, R, d)


def test_hilbert_polynomial_twisted_cubic():
    R = make_ring(7, ["a", "b", "c", "d"])
    a, b, c, d = R.gens()
    I = Ideal([a * c - b * b, b * d - c * c, a * d - b * c], R)
    h = hilbert(I)
    assert (h.dim, h.degree) == (1, 3)
    assert h.hilbert_poly_str() == "3n + 1"
    assert comb(4 + 3, 3) - 0 >= h.hilbert_function(4) == 13


def test_intersection_and_elimination():
    R = make_ring(7, ["x", "y", "z"])
    x, y, z = R.gens()
    I = intersect(Ideal([x], R), Ideal([y], R))
    assert I == Ideal([x * y], R)
    J = Ideal([x - y * y, z - y * y * y], R)
    E = eliminate(J, [1])
    assert E.contains(x * x * x - z * z)
