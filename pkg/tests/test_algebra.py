"""Field, ring and parser basics."""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import homogeneous_ideals
from dpk.field import (
    FieldError, build_extension, is_prime, prime_field, upoly_divmod, upoly_gcd, upoly_mul,
)
from dpk.linalg import charpoly, det, nullspace, rank
from dpk.parse import ParseError, format_poly, parse_data, parse_poly
from dpk.ring import make_ring

FIELDS = [prime_field(5), prime_field(7), build_extension(5, 2)]


@pytest.mark.parametrize("F", FIELDS, ids=lambda F: f"F{F.q}")
def test_field_axioms(F):
    @settings(max_examples=150)
    @given(st.integers(0, F.q - 1), st.integers(0, F.q - 1), st.integers(0, F.q - 1))
    def check(a, b, c):
        assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
        assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1

    check()


def test_extension_properties():
    F = build_extension(5, 2)
    assert F.q == 25 and F.contains(prime_field(5))
    assert sorted(F.elements()) == list(range(25))
    assert build_extension(5, 2) is F
    with pytest.raises(FieldError):
        build_extension(4, 1)
    assert is_prime(7) and not is_prime(9)


@settings(max_examples=100)
@given(st.lists(st.integers(0, 6), min_size=1, max_size=6),
       st.lists(st.integers(0, 6), min_size=1, max_size=5).filter(lambda b: b[-1] != 0))
def test_upoly_division(a, b):
    F = prime_field(7)
    q, r = upoly_divmod(F, a, b)
    back = upoly_mul(F, q, b)
    n = max(len(back), len(r), len(a))
    pad = lambda v: list(v) + [0] * (n - len(v))
    summed = [F.add(x, y) for x, y in zip(pad(back), pad(r))]
    assert summed == pad(a)
    g = upoly_gcd(F, a, b)
    assert g[-1] == 1 if any(g) else True


def test_linear_algebra():
    F = prime_field(7)
    M = [[1, 2, 3], [2, 4, 6], [1, 0, 1]]
    assert rank(F, M) == 2 and det(F, M) == 0
    ns = nullspace(F, M, 3)
    assert len(ns) == 1
    assert all(sum(F.mul(r[i], ns[0][i]) for i in range(3)) % 7 == 0 for r in M)
    assert charpoly(F, [[1, 0], [0, 2]]) == [2, 4, 1]     # (t-1)(t-2) = t^2 - 3t + 2


@settings(max_examples=60)
@given(homogeneous_ideals(max_gens=2))
def test_format_parse_roundtrip(gens):
    for f in gens:
        assert parse_poly(format_poly(f), f.ring) == f


def test_parse_data_and_errors():
    d = parse_data("p=5 vars=x,y\n# comment\nA = x^2 + 3*x*y\n  - y^2\nB = 2\n")
    R = d.ring
    x, y = R.gens()
    assert d["A"] == x * x + (x * y).scale(3) - y * y
    assert parse_data(d.to_text()).polys == d.polys
    for bad in ("", "vars=x\nA = x", "p=5 vars=x\nA = x\nA = x", "p=5 vars=x\nA = x +"):
        with pytest.raises(ParseError):
            parse_data(bad)


def test_extension_data_header():
    d = parse_data("p=5 k=2 vars=x\nA = x\n")
    assert d.ring.field.q == 25
    R = make_ring(5, "x,y")
    assert R.names == ("x", "y")
