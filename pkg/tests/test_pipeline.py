"""Construction pipeline on the embedded F_5 example and on seeded random nets."""

from __future__ import annotations

import pytest

from dpk.geometry import PlaneCurve
from dpk.pipeline import (
    CubicFourfold, NetOfQuadrics, NonGenericError, build_T, classify, cubic_fourfold,
    curve_B_II, example_dataset, expected_type, fiber_at, fiber_scan, projective_points,
    random_cubic_through_T, random_net, spans_cubic_space, trisection_check,
)
from dpk.field import build_extension, prime_field


@pytest.fixture(scope="module")
def example():
    D, B = example_dataset()
    net = NetOfQuadrics.from_quadrics(D["Q1"], D["Q2"], D["Q3"])
    T = build_T(net)
    X = cubic_fourfold(T, D["f"])
    curves = (PlaneCurve(B["B_I"]), PlaneCurve(B["B_II"]))
    return D, net, T, X, curves


def test_build_T_example(example):
    D, net, T, X, _ = example
    assert all(c.status == "pass" for c in T.checks)
    assert (T.dim, T.degree) == (2, 6)
    assert list(T.generator_degrees) == [2, 2, 2, 3, 3]
    assert tuple(T.h0) == (0, 3, 20)
    assert spans_cubic_space(T, [D["cubic1"], D["cubic2"]])
    assert X.smooth


def test_B_II_matches_printed(example):
    _, net, _, _, curves = example
    E3, B_II = curve_B_II(net)
    assert E3.is_smooth()
    assert B_II.same_curve(curves[1])


@pytest.mark.parametrize("point, kind", [
    ((1, 2, 3), "smooth"), ((1, 0, 1), "I"), ((0, 1, 0), "II"), ((0, 0, 1), "III"),
])
def test_fiber_types(example, point, kind):
    _, net, _, X, curves = example
    r = fiber_at(net, X, point, curves=curves)
    assert (r.dim, r.degree) == (2, 6)
    assert r.type == kind


def test_trisection_on_smooth_fiber(example):
    _, net, T, X, _ = example
    r = fiber_at(net, X, (1, 2, 3))
    assert trisection_check(T, net, X, r) == (12, 7, 3, 3)


def test_fiber_over_extension_point(example):
    _, net, _, X, curves = example
    F = build_extension(5, 2)
    r = fiber_at(net, X, (1, 5, 7), F, curves)
    assert r.field_degree == 2
    expected = expected_type(curves[0].contains(r.point, F), curves[1].contains(r.point, F), False)
    assert r.type == expected


def test_partial_scan_consistent(example):
    _, net, _, X, curves = example
    pts = [(1, 0, 0), (1, 0, 1), (0, 1, 0)]
    scan = fiber_scan(net, X, 1, curves, threads=1, points=pts)
    assert scan.verdict is True and len(scan.reports) == 3


def test_scan_rejects_large_extension(example):
    _, net, _, X, _ = example
    with pytest.raises(ValueError):
        fiber_scan(net, X, 4, threads=1, points=[])


def test_classify_table():
    class C:
        status = "ok"

        def __init__(self, t):
            self.t = t

        def as_tuple(self):
            return self.t

    assert classify(C((0, 0))) == "smooth"
    assert classify(C((2, 2))) == "III"
    assert classify(C((2, 1))) == "IV"
    assert classify(C((1, 1)), True, False) == "I"
    assert classify(C((1, 1)), False, True) == "II"
    assert classify(C((5, 2))) == "unresolved"
    assert classify(None) == "unresolved"


def test_projective_points_count():
    assert len(projective_points(prime_field(5))) == 31
    assert len(projective_points(build_extension(5, 2))) == 651


def test_random_net_deterministic():
    a, b = random_net(7, 4), random_net(7, 4)
    assert [q.terms for q in a.quadrics] == [q.terms for q in b.quadrics]


def test_random_cubic_avoids_planes():
    for seed in range(4):
        try:
            T = build_T(random_net(7, seed))
        except NonGenericError:
            continue
        X = random_cubic_through_T(T, seed)
        assert X.smooth
        assert not X.contains_plane((0, 1, 2)) and not X.contains_plane((3, 4, 5))


def test_non_generic_net_reported():
    # a net with a repeated quadric is rejected as non-generic
    D, _ = example_dataset()
    with pytest.raises(NonGenericError):
        NetOfQuadrics.from_quadrics(D["Q1"], D["Q1"], D["Q2"])


def test_cubic_must_contain_T(example):
    from dpk.geometry import GeometryError

    _, net, T, _, _ = example
    x = net.ring.gens()
    with pytest.raises(GeometryError):
        cubic_fourfold(T, x[0] ** 3)
    assert isinstance(CubicFourfold(x[0] ** 3, False), CubicFourfold)
