"""Plane curves, censuses, duality and scheme invariants."""

from __future__ import annotations

import pytest

from dpk.geometry import (
    GeometryError, PlaneCurve, curve_invariants, dual_curve, intersection_scheme, is_smooth,
    quadric_net_square_identity,
)
from dpk.groebner import Ideal
from dpk.parse import parse_poly
from dpk.pipeline import random_net
from dpk.ring import make_ring

R7 = make_ring(7, "x,y,z")
R11 = make_ring(11, "x,y,z")


def curve(text, R=R7):
    return PlaneCurve(parse_poly(text, R))


@pytest.mark.parametrize("text, census", [
    ("x^3 + y^3 + z^3", (0, 0)),
    ("y^2*z - x^3 - x^2*z", (1, 1)),      # node
    ("y^2*z - x^3", (2, 1)),              # cusp
    ("x*y*z", (3, 3)),                    # triangle
])
def test_plane_curve_census(text, census):
    assert curve(text).census().as_tuple() == census


def test_dual_of_smooth_cubic_has_nine_cusps():
    C = curve("x^3 + y^3 + z^3 + 3*x*y*z", R11)
    assert C.is_smooth()
    D = dual_curve(C)
    assert D.degree == 6
    assert D.census().as_tuple() == (18, 9)


def test_dual_of_conic_is_conic():
    D = dual_curve(curve("x*z - y^2"))
    assert D.degree == 2 and D.is_smooth()


def test_dual_of_line_rejected():
    with pytest.raises(GeometryError):
        dual_curve(curve("x + y"))


def test_intersection_scheme():
    conic = curve("x*z - y^2")
    assert intersection_scheme(conic, curve("x")) == (2, 1)       # tangent line
    assert intersection_scheme(conic, curve("x - z")) == (2, 2)   # secant
    with pytest.raises(GeometryError):
        intersection_scheme(conic, conic)


def test_curve_invariants_and_smoothness():
    R = make_ring(7, "a,b,c,d")
    a, b, c, d = R.gens()
    cubic = Ideal([a * c - b * b, b * d - c * c, a * d - b * c], R)
    assert curve_invariants(cubic) == (3, 0)
    assert is_smooth(cubic, 2)
    cone = Ideal([a * c - b * b], R)
    assert not is_smooth(cone, 1)


def test_same_curve_and_membership():
    C = curve("x^2 + y^2 - z^2")
    assert C.same_curve(PlaneCurve(C.poly.scale(3)))
    assert C.contains((1, 0, 1)) and not C.contains((1, 1, 1))


@pytest.mark.parametrize("seed", [0, 3])
def test_square_identity_on_random_nets(seed):
    net = random_net(7, seed)
    assert quadric_net_square_identity(*net.quadrics, *net.matrices)
