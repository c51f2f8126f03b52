"""The construction end to end: net of quadrics, surface T, cubic fourfold, fibers, discriminants."""

from __future__ import annotations

import itertools
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .field import (
    FieldCtx, build_extension, prime_field, upoly_divmod, upoly_monic, upoly_squarefree,
)
from .geometry import (
    CensusError, GeometryError, PlaneCurve, SingularityCensus, curve_invariants, dual_curve,
    determinant_curve, intersection_scheme, jacobian, minimal_generators, minors,
    quadric_net_square_identity, side_determinants, singularity_census,
)
from .groebner import Ideal, _exact_divide, eliminate, intersect, saturate
from .hilbert import degree_piece_span, hilbert, minimal_generator_degrees
from .linalg import charpoly, nullspace, rank, row_echelon, solve
from .parse import PolyData, parse_data
from .ring import MultiPoly, Ring, make_ring
from .syzygy import hom_dim_degree_zero

VARS = ("x0", "x1", "x2", "x3", "x4", "x5")
BASE_VARS = ("x", "y", "z")
PLANE1 = (0, 1, 2)      # Pi_1 = {x0 = x1 = x2 = 0}
PLANE2 = (3, 4, 5)      # Pi_2 = {x3 = x4 = x5 = 0}

EXPECTED_T_DEGREES = [2, 2, 2, 3, 3]
EXPECTED_H0 = (0, 3, 20)
RANDOM_NET_BUDGET = 50
RANDOM_CUBIC_BUDGET = 20
LINE_BUDGET = 40
MAX_SCAN_EXTENSION = 3
MAX_SEARCH_PRIME = 47    # lines are drawn over F_{p^2}, whose tables stop at order 2500
FIBER_SCREEN = 4         # random complete intersections tried before the full Jacobian

# census (scheme degree, point count) -> fiber type, before curve information
CENSUS_TYPES = {(0, 0): "smooth", (1, 1): "A1", (2, 2): "III", (2, 1): "IV"}


class NonGenericError(GeometryError):
    """The input is degenerate for the construction (a different seed is needed)."""

    def __init__(self, check: str, details: str = ""):
        self.check = check
        self.details = details
        super().__init__(f"{check}: {details}" if details else check)


@dataclass(frozen=True)
class Check:
    """One verified statement: status is 'pass', 'fail' or 'skipped'."""

    name: str
    status: str
    details: str = ""

    @classmethod
    def of(cls, name: str, ok: bool, details: str = "") -> "Check":
        return cls(name, "pass" if ok else "fail", details)

    def as_dict(self) -> dict:
        return {"name": self.name, "status": self.status, "details": self.details}


# ---------------------------------------------------------------------------
# nets of quadrics


def _bilinear_matrix(Q: MultiPoly) -> list[list[int]]:
    """M with Q = sum M[i][j] x_i x_{3+j}; raises unless Q is of that shape."""
    R = Q.ring
    M = [[0] * 3 for _ in range(3)]
    for m, c in Q.terms.items():
        e = R.decode(m)
        idx = [i for i, a in enumerate(e) for _ in range(a)]
        if len(idx) != 2 or idx[0] not in PLANE1 or idx[1] not in PLANE2:
            raise GeometryError("quadric does not vanish on both planes")
        M[idx[0]][idx[1] - 3] = c
    return M


@dataclass(frozen=True)
class NetOfQuadrics:
    """Three independent quadrics through Pi_1 and Pi_2, with their 3x3 bilinear matrices."""

    ring: Ring
    quadrics: tuple[MultiPoly, MultiPoly, MultiPoly]
    matrices: tuple

    @property
    def field(self) -> FieldCtx:
        return self.ring.field

    @classmethod
    def from_quadrics(cls, Q1: MultiPoly, Q2: MultiPoly, Q3: MultiPoly) -> "NetOfQuadrics":
        R = Q1.ring
        if R.names != VARS:
            raise GeometryError(f"quadrics must live in the ring {','.join(VARS)}")
        Qs = tuple(q.to_ring(R) for q in (Q1, Q2, Q3))
        mats = tuple(_bilinear_matrix(q) for q in Qs)
        rows = [[M[i][j] for i in range(3) for j in range(3)] for M in mats]
        if rank(R.field, rows) != 3:
            raise NonGenericError("net-independence", "the three quadrics are dependent")
        return cls(R, Qs, tuple(tuple(map(tuple, M)) for M in mats))

    def linear_combination(self, coeffs, ring: Ring | None = None) -> MultiPoly:
        R = ring or self.ring
        out = R.zero()
        for c, q in zip(coeffs, self.quadrics):
            if c:
                out = out + q.to_ring(R).scale(c)
        return out


def random_net(p: int, seed: int, budget: int = RANDOM_NET_BUDGET) -> NetOfQuadrics:
    """Seeded random net: coefficients uniform over the 9 monomials x_i x_{3+j}."""
    F = prime_field(p)
    R = make_ring(F, VARS)
    rng = random.Random(f"net:{p}:{seed}")
    x = R.gens()
    for _ in range(budget):
        Qs = []
        for _k in range(3):
            q = R.zero()
            for i in PLANE1:
                for j in PLANE2:
                    c = rng.randrange(p)
                    if c:
                        q = q + (x[i] * x[j]).scale(c)
            Qs.append(q)
        try:
            return NetOfQuadrics.from_quadrics(*Qs)
        except NonGenericError:
            continue
    raise NonGenericError("net-independence", f"no independent net in {budget} draws")


# ---------------------------------------------------------------------------
# the surface T


@dataclass(frozen=True)
class SurfaceT:
    """The residual surface of the net with its boundary cubics E_1 (in Pi_1) and E_2 (in Pi_2)."""

    net: NetOfQuadrics
    ideal: Ideal
    dim: int
    degree: int
    generator_degrees: tuple[int, ...]
    h0: tuple[int, int, int]
    E1: PlaneCurve
    E2: PlaneCurve
    checks: tuple[Check, ...]

    def cubic_space(self) -> list[MultiPoly]:
        """A basis of (I_T)_3."""
        R = self.ideal.ring
        span = degree_piece_span(list(self.ideal.groebner()), R, 3)
        basis = {m: i for i, m in enumerate(R.monomials_of_degree(3))}
        rows = []
        for f in span:
            r = [0] * len(basis)
            for m, c in f.terms.items():
                r[basis[m]] = c
            rows.append(r)
        E, _ = row_echelon(R.field, rows, len(basis))
        inv = {i: m for m, i in basis.items()}
        return [MultiPoly(R, {inv[j]: c for j, c in enumerate(r) if c}) for r in E]


def _plane_ideal(R: Ring, idx) -> Ideal:
    return Ideal([R.var(i) for i in idx], R)


def _boundary_curve(I: Ideal, plane_zero, names) -> PlaneCurve:
    """The curve cut by V(I) on the plane where the variables plane_zero vanish."""
    R = I.ring
    P = make_ring(R.field, names)
    images = []
    k = 0
    for i in range(R.n):
        if i in plane_zero:
            images.append(P.zero())
        else:
            images.append(P.var(k))
            k += 1
    gens = [g.subs(images, P) for g in I.groebner()]
    J = Ideal([g for g in gens if not g.is_zero()], P)
    G = [g for g in J.groebner()]
    if len(G) != 1:
        raise NonGenericError("boundary-curve", f"T meets the plane in a non-principal scheme ({len(G)} generators)")
    return PlaneCurve(G[0].monic())


def build_T(net: NetOfQuadrics) -> SurfaceT:
    """T = (Q1, Q2, Q3) : I_{Pi_1}^inf : I_{Pi_2}^inf, with its structural validations."""
    R = net.ring
    base = Ideal(list(net.quadrics), R)
    T = saturate(saturate(base, _plane_ideal(R, PLANE1)), _plane_ideal(R, PLANE2))
    h = hilbert(T)
    checks: list[Check] = []
    checks.append(Check.of("T-dim-degree", (h.dim, h.degree) == (2, 6),
                           f"dim {h.dim}, degree {h.degree}"))
    degs = tuple(minimal_generator_degrees(T))
    checks.append(Check.of("T-generators", list(degs) == EXPECTED_T_DEGREES, f"degrees {list(degs)}"))
    h0 = tuple(_graded_dim(T, d) for d in (1, 2, 3))
    checks.append(Check.of("T-h0", h0 == EXPECTED_H0, f"h0(I_T(1,2,3)) = {h0}"))
    failed = [c for c in checks if c.status != "pass"]
    if failed:
        raise NonGenericError(failed[0].name, failed[0].details)
    E1 = _boundary_curve(T, PLANE1, ("x3", "x4", "x5"))
    E2 = _boundary_curve(T, PLANE2, ("x0", "x1", "x2"))
    S1, S2 = side_determinants(*net.matrices, net.field)
    for name, E, S in (("E1", E1, S1), ("E2", E2, S2)):
        ok = E.degree == 3 and E.is_smooth()
        checks.append(Check.of(f"{name}-smooth-cubic", ok, f"degree {E.degree}, genus 1" if ok else "singular or wrong degree"))
        checks.append(Check.of(f"{name}-side-determinant", E.same_curve(S)))
    deco = intersect(_plane_ideal(R, PLANE1), T, _plane_ideal(R, PLANE2))
    checks.append(Check.of("net-decomposition", deco == base,
                           "(Q1,Q2,Q3) = I_Pi1 cap I_T cap I_Pi2"))
    failed = [c for c in checks if c.status != "pass"]
    if failed:
        raise NonGenericError(failed[0].name, failed[0].details)
    return SurfaceT(net, T, h.dim, h.degree, degs, h0, E1, E2, tuple(checks))


def _graded_dim(I: Ideal, d: int) -> int:
    from math import comb

    R = I.ring
    return comb(d + R.n - 1, R.n - 1) - hilbert(I).hilbert_function(d)


def spans_cubic_space(T: SurfaceT, cubics) -> bool:
    """Whether the quadric multiples together with `cubics` span (I_T)_3."""
    R = T.ideal.ring
    polys = degree_piece_span(list(T.net.quadrics), R, 3) + [c.to_ring(R) for c in cubics]
    if any(not T.ideal.contains(c) for c in polys):
        return False
    basis = {m: i for i, m in enumerate(R.monomials_of_degree(3))}
    rows = []
    for f in polys:
        r = [0] * len(basis)
        for m, c in f.terms.items():
            r[basis[m]] = c
        rows.append(r)
    return rank(R.field, rows) == T.h0[2]


# ---------------------------------------------------------------------------
# the cubic fourfold


@dataclass(frozen=True)
class CubicFourfold:
    poly: MultiPoly
    smooth: bool

    def contains_plane(self, plane) -> bool:
        """True when the cubic vanishes on the coordinate plane {x_i = 0, i in plane}."""
        return all(any(e[i] for i in plane) for e, _c in self.poly.exponent_terms())


def cubic_fourfold(T: SurfaceT, f: MultiPoly) -> CubicFourfold:
    """Validate a cubic through T and certify its smoothness."""
    R = T.ideal.ring
    f = f.to_ring(R)
    if not f.is_homogeneous() or f.degree() != 3:
        raise GeometryError("the fourfold must be a cubic form")
    if not T.ideal.contains(f):
        raise GeometryError("the cubic does not contain T")
    return CubicFourfold(f, hilbert(_singular_hypersurface(f)).dim < 0)


def _singular_hypersurface(f: MultiPoly) -> Ideal:
    R = f.ring
    return Ideal([f] + [f.diff(i) for i in range(R.n)], R)


def random_cubic_through_T(T: SurfaceT, seed: int, budget: int = RANDOM_CUBIC_BUDGET) -> CubicFourfold:
    """Seeded random element of (I_T)_3 defining a smooth fourfold."""
    R = T.ideal.ring
    p = R.field.p
    basis = T.cubic_space()
    if len(basis) != EXPECTED_H0[2]:
        raise NonGenericError("T-h0", f"dim (I_T)_3 = {len(basis)}")
    rng = random.Random(f"cubic:{p}:{seed}")
    for _ in range(budget):
        f = R.zero()
        for b in basis:
            c = rng.randrange(p)
            if c:
                f = f + b.scale(c)
        if f.is_zero():
            continue
        X = cubic_fourfold(T, f)
        # f restricts to each plane as c * E_i, and c = 0 with probability 1/p
        if X.smooth and not any(X.contains_plane(P) for P in (PLANE1, PLANE2)):
            return X
    raise NonGenericError("X-smooth", f"no smooth cubic avoiding the planes in {budget} draws")


def deformation_dim(T: SurfaceT, X: CubicFourfold) -> int:
    """dim Hom(I_T / (f), O_X / I_T)_0 = h0(N_{T/X})."""
    if not T.ideal.contains(X.poly):
        raise GeometryError("T is not contained in X")
    gens = minimal_generators(T.ideal)
    return hom_dim_degree_zero(gens, (X.poly,))


# ---------------------------------------------------------------------------
# fibers


def projective_points(F: FieldCtx, n: int = 3) -> list[tuple[int, ...]]:
    """Points of P^{n-1}(F), normalized so the first nonzero coordinate is 1."""
    elems = list(F.elements())
    out = []
    for lead in range(n):
        for rest in itertools.product(elems, repeat=n - 1 - lead):
            out.append((0,) * lead + (1,) + tuple(rest))
    return sorted(out)


def normalize_point(F: FieldCtx, point) -> tuple[int, ...]:
    point = tuple(point)
    j = next((i for i, c in enumerate(point) if c), None)
    if j is None:
        raise ValueError("the zero vector is not a projective point")
    inv = F.inv(point[j])
    return tuple(F.mul(c, inv) for c in point)


@dataclass(frozen=True)
class FiberReport:
    point: tuple[int, ...]
    field_degree: int
    dim: int
    degree: int
    census: SingularityCensus | None
    type: str
    on_B_I: bool | None = None
    on_B_II: bool | None = None
    seconds: float = 0.0

    def as_dict(self) -> dict:
        c = self.census
        return {
            "point": list(self.point), "dim": self.dim, "degree": self.degree,
            "census": list(c.as_tuple()) if c is not None else None,
            "census_status": c.status if c is not None else None,
            "type": self.type, "on_B_I": self.on_B_I, "on_B_II": self.on_B_II,
        }


def fiber_ideal(net: NetOfQuadrics, X: CubicFourfold, point, F: FieldCtx | None = None) -> Ideal:
    """(f, 2x2 minors of [[Q1,Q2,Q3],[a,b,c]]) saturated by a nonvanishing Q_j.

    Off V(Q_j) the minors say Q(q) is proportional to the point; saturating
    removes T and both planes (where all Q_k vanish) together with the
    locus Q_j = 0, which meets the fiber in no component.
    """
    F = F or net.field
    R = net.ring.with_field(F) if F != net.field else net.ring
    a = normalize_point(F, point)
    Q = [q.to_ring(R) for q in net.quadrics]
    mins = []
    for i, j in ((0, 1), (0, 2), (1, 2)):
        m = Q[i].scale(a[j]) - Q[j].scale(a[i]) if (a[i] or a[j]) else R.zero()
        if not m.is_zero():
            mins.append(m)
    j = next(i for i in range(3) if a[i])
    return saturate(Ideal([X.poly.to_ring(R)] + mins, R), Q[j])


def fiber_census(S: Ideal, screen: int = FIBER_SCREEN, seed: int = 0) -> SingularityCensus:
    """Singularity census of a fiber surface from the Jacobian of minimal generators.

    Singular points on T are genuine (type II), so the singular scheme is
    not saturated by the quadrics; a random-combination screen first
    certifies the common smooth case.
    """
    gens = minimal_generators(S)
    return singularity_census(S, 3, gens=gens, screen=screen, seed=seed)


def classify(census: SingularityCensus | None, on_I: bool | None = None,
             on_II: bool | None = None) -> str:
    if census is None or census.status != "ok":
        return "unresolved"
    t = CENSUS_TYPES.get(census.as_tuple(), "unresolved")
    if t == "A1" and on_I is not None and on_II is not None:
        if on_I and not on_II:
            return "I"
        if on_II and not on_I:
            return "II"
        return "unresolved"
    return t


def fiber_at(net: NetOfQuadrics, X: CubicFourfold, point, F: FieldCtx | None = None,
             curves: tuple[PlaneCurve, PlaneCurve] | None = None, screen: int = FIBER_SCREEN) -> FiberReport:
    F = F or net.field
    t0 = time.perf_counter()
    a = normalize_point(F, point)
    S = fiber_ideal(net, X, a, F)
    h = hilbert(S)
    census = None
    if (h.dim, h.degree) == (2, 6):
        try:
            census = fiber_census(S, screen=screen)
        except CensusError:
            census = None
    else:
        raise NonGenericError("fiber-dim-degree", f"fiber over {a} has dim {h.dim}, degree {h.degree}")
    on_I = on_II = None
    if curves is not None:
        on_I = curves[0].contains(a, F)
        on_II = curves[1].contains(a, F)
    return FiberReport(a, F.k, h.dim, h.degree, census, classify(census, on_I, on_II),
                       on_I, on_II, time.perf_counter() - t0)


def trisection_check(T: SurfaceT, net: NetOfQuadrics, X: CubicFourfold,
                     fiber: FiberReport) -> tuple[int, int, int, int]:
    """(degree, genus) of D = T cap S for a smooth fiber S, and deg D cap Pi_1, deg D cap Pi_2."""
    if fiber.type != "smooth":
        raise ValueError("the trisection check needs a smooth fiber")
    F = build_extension(net.field.p, fiber.field_degree)
    S = fiber_ideal(net, X, fiber.point, F)
    R = S.ring
    D = Ideal(list(S.groebner()) + [g.to_ring(R) for g in T.ideal.groebner()], R)
    deg, genus = curve_invariants(D)
    sides = []
    for plane in (PLANE1, PLANE2):
        Z = Ideal(list(D.groebner()) + [R.var(i) for i in plane], R)
        hz = hilbert(Z)
        sides.append(hz.degree if hz.dim == 0 else -1)
    return deg, genus, sides[0], sides[1]


# ---------------------------------------------------------------------------
# scans


@dataclass(frozen=True)
class ScanReport:
    field_degree: int
    reports: tuple[FiberReport, ...]
    verdict: bool | None
    counts: dict = field(default_factory=dict)
    mismatches: tuple = ()

    def as_dict(self) -> dict:
        return {
            "extension_degree": self.field_degree,
            "points": len(self.reports),
            "verdict": self.verdict,
            "counts": dict(self.counts),
            "mismatches": [list(p) for p in self.mismatches],
            "fibers": [r.as_dict() for r in self.reports],
        }


def expected_type(on_I: bool, on_II: bool, cusp: bool) -> str:
    if on_I and on_II:
        return "III"
    if on_II and cusp:
        return "IV"
    if on_I:
        return "I"
    if on_II:
        return "II"
    return "smooth"


def scan_consistency(reports, curves: tuple[PlaneCurve, PlaneCurve], F: FieldCtx) -> tuple[bool, tuple]:
    """Every fiber type agrees with curve membership (cusps of B_II carry type IV)."""
    B_I, B_II = curves
    grads = [B_II.poly.diff(i) for i in range(3)]
    bad = []
    for r in reports:
        on_I = B_I.contains(r.point, F)
        on_II = B_II.contains(r.point, F)
        cusp = on_II and all(g.evaluate_in(F, r.point) == 0 for g in grads)
        if r.type != expected_type(on_I, on_II, cusp):
            bad.append(r.point)
    return not bad, tuple(bad)


def default_threads() -> int:
    env = os.environ.get("DPK_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


_WORKER: dict = {}


def _worker_init(text: str, k: int, curve_text: str | None):
    data = parse_data(text)
    net = NetOfQuadrics.from_quadrics(data["Q1"], data["Q2"], data["Q3"])
    X = CubicFourfold(data["f"], True)
    F = build_extension(net.field.p, k)
    curves = None
    if curve_text is not None:
        cd = parse_data(curve_text)
        curves = (PlaneCurve(cd["B_I"]), PlaneCurve(cd["B_II"]))
    _WORKER.update(net=net, X=X, F=F, curves=curves)


def _worker_fiber(point):
    w = _WORKER
    return fiber_at(w["net"], w["X"], point, w["F"], w["curves"])


def _net_text(net: NetOfQuadrics, X: CubicFourfold) -> str:
    d = PolyData(net.ring, {"Q1": net.quadrics[0], "Q2": net.quadrics[1],
                            "Q3": net.quadrics[2], "f": X.poly})
    return d.to_text()


def _curve_text(curves) -> str:
    R = curves[0].ring
    return PolyData(R, {"B_I": curves[0].poly, "B_II": curves[1].poly.to_ring(R)}).to_text()


def fiber_scan(net: NetOfQuadrics, X: CubicFourfold, k: int = 1,
               curves: tuple[PlaneCurve, PlaneCurve] | None = None,
               threads: int | None = None, points=None) -> ScanReport:
    """Classify the fibers over every point of P^2(F_{p^k})."""
    if not 1 <= k <= MAX_SCAN_EXTENSION:
        raise ValueError(f"extension degree must lie in 1..{MAX_SCAN_EXTENSION}")
    F = build_extension(net.field.p, k)
    pts = sorted(points) if points is not None else projective_points(F)
    threads = threads or default_threads()
    if threads > 1 and len(pts) > 1:
        ctext = _curve_text(curves) if curves is not None else None
        with ProcessPoolExecutor(threads, initializer=_worker_init,
                                 initargs=(_net_text(net, X), k, ctext)) as pool:
            reports = list(pool.map(_worker_fiber, pts, chunksize=1))
    else:
        reports = [fiber_at(net, X, p, F, curves) for p in pts]
    reports.sort(key=lambda r: r.point)
    counts: dict[str, int] = {}
    for r in reports:
        counts[r.type] = counts.get(r.type, 0) + 1
    verdict, bad = (None, ())
    if curves is not None:
        verdict, bad = scan_consistency(reports, curves, F)
    return ScanReport(k, tuple(reports), verdict, dict(sorted(counts.items())), bad)


# ---------------------------------------------------------------------------
# discriminant curves


@dataclass(frozen=True)
class DiscriminantCurves:
    B_I: PlaneCurve
    B_II: PlaneCurve
    E3: PlaneCurve
    strategy: str
    details: dict


def base_ring(F: FieldCtx) -> Ring:
    return make_ring(F, BASE_VARS)


def curve_B_II(net: NetOfQuadrics) -> tuple[PlaneCurve, PlaneCurve]:
    """(E_3, B_II): the determinant cubic of the net and its dual sextic in base coordinates."""
    E3 = determinant_curve(*net.matrices, net.field)
    return E3, dual_curve(E3, BASE_VARS)


def critical_ideal_generators(net: NetOfQuadrics, X: CubicFourfold) -> list[MultiPoly]:
    """f and the 4x4 minors of the Jacobian of (f, Q1, Q2, Q3).

    Off T a point of X is singular on its fiber exactly when these vanish.
    """
    gens = [X.poly] + list(net.quadrics)
    return [X.poly] + minors(jacobian(gens), 4)


def _line_forms(F: FieldCtx, P, Q0):
    """Linear forms (ell, s, t) on the base with ell = 0 the line through P, Q0 and
    s(P) = 1, s(Q0) = 0, t(P) = 0, t(Q0) = 1."""
    ell = [F.sub(F.mul(P[1], Q0[2]), F.mul(P[2], Q0[1])),
           F.sub(F.mul(P[2], Q0[0]), F.mul(P[0], Q0[2])),
           F.sub(F.mul(P[0], Q0[1]), F.mul(P[1], Q0[0]))]
    if not any(ell):
        return None
    A = [list(P), list(Q0), ell]
    s = solve(F, A, [1, 0, 0])
    t = solve(F, A, [0, 1, 0])
    if s is None or t is None:
        return None
    return ell, s, t


def restricted_discriminant(net: NetOfQuadrics, crit: list[MultiPoly], P, Q0,
                            expected: int | None = None) -> list[int] | None:
    """Coefficients (ascending in mu) of the discriminant restricted to P + mu Q0.

    The critical points over the line form a finite scheme once the locus
    s = 0 (T, and the fiber over Q0) is saturated away; the charpoly of
    multiplication by t/s on it is the restricted discriminant.  Returns
    None when the line is unsuitable (Q0 on the discriminant).
    """
    R = net.ring
    F = R.field
    forms = _line_forms(F, P, Q0)
    if forms is None:
        return None
    ell, sc, tc = forms
    lq = net.linear_combination(ell)
    s = net.linear_combination(sc)
    t = net.linear_combination(tc)
    J = saturate(Ideal(crit + [lq], R), s)
    h = hilbert(J)
    if h.dim != 0:
        return None
    N = h.degree
    if expected is not None and N != expected:
        return None
    lead = [g.lm() for g in J.groebner()]

    def std(d):
        return [m for m in R.monomials_of_degree(d) if not any(R.divides(l, m) for l in lead)]

    d = 0
    while not (len(std(d)) == N and len(std(d + 2)) == N):
        d += 1
        if d > 40:
            return None
    sd, sd2 = std(d), std(d + 2)
    idx = {m: i for i, m in enumerate(sd2)}

    def mult(g):
        cols = []
        for m in sd:
            v = [0] * N
            for k, c in J.normal_form(g.mul_monomial(m)).terms.items():
                v[idx[k]] = c
            cols.append(v)
        return [list(r) for r in zip(*cols)]

    Ms, Mt = mult(s), mult(t)
    aug = [Ms[i] + [int(i == j) for j in range(N)] for i in range(N)]
    E, piv = row_echelon(F, aug, 2 * N)
    if piv[:N] != list(range(N)):
        return None
    inv = [r[N:] for r in E]
    from .linalg import mat_mul

    return charpoly(F, mat_mul(F, inv, Mt))


def _restrict_form(G: MultiPoly, P, Q0) -> list[int]:
    """Ascending coefficients of G(P + mu Q0)."""
    F = G.ring.field
    U = make_ring(F, ("mu",))
    mu = U.var(0)
    img = [U.element(P[i]) + mu.scale(Q0[i]) for i in range(3)]
    r = G.subs(img, U)
    out = [0] * (G.degree() + 1)
    for m, c in r.terms.items():
        out[U.decode(m)[0]] = c
    return out


def _restriction_rows(d: int, P, Q0, F: FieldCtx, R: Ring):
    """Matrix of the linear map (coefficients of a degree-d form) -> G(P + mu Q0)."""
    monos = R.monomials_of_degree(d)
    cols = [_restrict_form(MultiPoly(R, {m: 1}), P, Q0) for m in monos]
    return monos, [[cols[j][i] for j in range(len(monos))] for i in range(d + 1)]


def curve_B_I_by_lines(net: NetOfQuadrics, X: CubicFourfold, B_II: PlaneCurve,
                       seed: int = 0, budget: int = LINE_BUDGET,
                       ext: int = 2) -> tuple[PlaneCurve, dict]:
    """B_I from restrictions of the discriminant to random base lines.

    On a general line the restricted discriminant is B_I B_II; dividing by
    the known B_II gives B_I on the line up to a scalar, a linear condition
    on the coefficients of B_I.  Lines through special points lose roots,
    so only squarefree restrictions of the largest degree seen are used.
    Lines are added until the solution space is a single curve, with one
    line more than the count of unknowns requires.  Lines are drawn over
    the degree-`ext` extension, since over a small prime field nearly
    every line meets a rational special point.
    """
    base = net.field
    F = build_extension(base.p, base.k * ext) if ext > 1 else base
    if F != base:
        Rk = net.ring.with_field(F)
        net = NetOfQuadrics.from_quadrics(*(q.to_ring(Rk) for q in net.quadrics))
        X = CubicFourfold(X.poly.to_ring(Rk), X.smooth)
        B_II = PlaneCurve(B_II.poly.to_ring(B_II.ring.with_field(F)))
    Rb = base_ring(F)
    crit = critical_ideal_generators(net, X)
    rng = random.Random(f"lines:{F.q}:{seed}")
    blocks: dict[int, list] = {}       # restricted degree -> [(restriction matrix, quotient)]
    seen = set()
    tried = 0
    while tried < budget:
        P = [rng.randrange(F.q) for _ in range(3)]
        Q0 = [rng.randrange(F.q) for _ in range(3)]
        forms = _line_forms(F, P, Q0)
        if forms is None:
            continue
        key = normalize_point(F, forms[0])
        if key in seen:
            continue
        seen.add(key)
        tried += 1
        r2 = _restrict_form(B_II.poly, P, Q0)
        if not r2[-1] or len(upoly_squarefree(F, r2)) != len(r2):
            continue
        cp = restricted_discriminant(net, crit, P, Q0)
        if cp is None or len(upoly_squarefree(F, cp)) != len(cp):
            continue
        q, rem = upoly_divmod(F, cp, r2)
        if any(rem):
            continue
        q = upoly_monic(F, q)
        deg = len(q) - 1
        monos, A = _restriction_rows(deg, P, Q0, F, Rb)
        blocks.setdefault(deg, []).append((A, q))
        top = max(blocks)
        if deg != top:
            continue
        ncoef = len(monos)
        nl = len(blocks[top])
        if (top + 1) * nl < ncoef + nl + top + 1:
            continue
        # unknowns: coefficients of B_I, then one scalar per line
        rows = []
        for li, (A_l, q_l) in enumerate(blocks[top]):
            for i in range(top + 1):
                row = list(A_l[i]) + [0] * nl
                row[ncoef + li] = F.neg(q_l[i])
                rows.append(row)
        ns = nullspace(F, rows, ncoef + nl)
        if len(ns) == 1:
            G = MultiPoly(Rb, {m: c for m, c in zip(monos, ns[0][:ncoef]) if c})
            if not G.is_zero():
                G = G.monic()
                if F != base:
                    # the curve is defined over the base field: descend
                    if any(c >= base.q for c in G.terms.values()):
                        raise NonGenericError("B_I-lines", "interpolated curve is not defined over the base field")
                    G = MultiPoly(base_ring(base), dict(G.terms))
                return PlaneCurve(G), {"lines_used": nl, "lines_tried": tried, "line_field": F.q}
        if not ns:
            raise NonGenericError("B_I-lines", "line restrictions are inconsistent")
    raise NonGenericError("B_I-lines", f"no unique B_I after {tried} lines")


def curve_B_I_by_elimination(net: NetOfQuadrics, X: CubicFourfold,
                             B_II: PlaneCurve) -> tuple[PlaneCurve, dict]:
    """B_I from the full elimination of the critical incidence.

    The critical locus off T (saturation by each Q_k) maps onto B_I + B_II;
    eliminating the fourfold coordinates from its incidence with the base
    gives the product, and B_II is divided out exactly.
    """
    R = net.ring
    F = R.field
    crit = Ideal(critical_ideal_generators(net, X), R)
    parts = [saturate(crit, q) for q in net.quadrics]
    C = intersect(*parts)
    W = make_ring(F, VARS + BASE_VARS)
    b = [W.var(6 + i) for i in range(3)]
    Qw = [q.to_ring(W) for q in net.quadrics]
    inc = [g.to_ring(W) for g in C.groebner()]
    inc += [Qw[i] * b[j] - Qw[j] * b[i] for i, j in ((0, 1), (0, 2), (1, 2))]
    I = saturate(Ideal(inc, W), Qw[0])
    E = eliminate(I, range(6))
    gens = [g for g in E.groebner() if not g.is_zero()]
    if len(gens) != 1:
        raise NonGenericError("B_I-elimination", f"eliminant has {len(gens)} generators")
    prod = gens[0].to_ring(base_ring(F))
    try:
        q = _exact_divide(prod, B_II.poly.to_ring(prod.ring))
    except ArithmeticError:
        raise NonGenericError("B_I-elimination", "eliminant not divisible by B_II") from None
    ch = hilbert(C)
    return PlaneCurve(q.monic()), {"critical_curve": [ch.degree, ch.hilbert_poly_str()],
                                   "eliminant_degree": prod.degree()}


def discriminant_curves(net: NetOfQuadrics, X: CubicFourfold, strategy: str = "lines",
                        seed: int = 0) -> DiscriminantCurves:
    E3, B_II = curve_B_II(net)
    if strategy == "lines":
        B_I, details = curve_B_I_by_lines(net, X, B_II, seed)
    elif strategy == "elimination":
        B_I, details = curve_B_I_by_elimination(net, X, B_II)
    else:
        raise ValueError("strategy must be 'lines' or 'elimination'")
    return DiscriminantCurves(B_I, B_II, E3, strategy, details)


def curve_checks(B_I: PlaneCurve, B_II: PlaneCurve, prefix: str = "") -> list[Check]:
    cI = B_I.census()
    cII = B_II.census()
    out = [
        Check.of(prefix + "B_I-smooth-sextic", B_I.degree == 6 and cI.is_smooth,
                 f"degree {B_I.degree}, census {cI.as_tuple()}"),
        Check.of(prefix + "B_II-nine-cusps", B_II.degree == 6 and cII.as_tuple() == (18, 9),
                 f"degree {B_II.degree}, census {cII.as_tuple()}"),
    ]
    try:
        inter = intersection_scheme(B_I, B_II)
    except GeometryError as exc:
        out.append(Check.of(prefix + "B_I-B_II-transverse", False, str(exc)))
    else:
        out.append(Check.of(prefix + "B_I-B_II-transverse", inter == (36, 36),
                            f"intersection (degree, points) = {inter}"))
    return out


# ---------------------------------------------------------------------------
# the explicit example


def example_dataset() -> tuple[PolyData, PolyData]:
    from .dataset import discriminant_data, example_data

    return example_data(), discriminant_data()


@dataclass
class TrialResult:
    """One seeded genericity trial: structural checks, then the scan against its own curves."""

    prime: int
    seed: int
    checks: list[Check] = field(default_factory=list)
    failure: str = ""

    @property
    def generic(self) -> bool:
        """Every structural check passed (the scan is judged separately)."""
        return not self.failure and all(c.status == "pass" for c in self.checks
                                        if c.name != "scan-consistency")

    @property
    def consistent(self) -> bool | None:
        scan = [c for c in self.checks if c.name == "scan-consistency"]
        return scan[0].status == "pass" if scan else None

    def check(self) -> Check:
        name = f"seed-{self.seed}"
        if self.failure:
            return Check(name, "skipped", f"non-generic: {self.failure}")
        if not self.generic:
            bad = [c.name for c in self.checks if c.status == "fail"]
            return Check(name, "skipped", f"non-generic: {', '.join(bad)}")
        if self.consistent is False:
            scan = next(c for c in self.checks if c.name == "scan-consistency")
            return Check(name, "fail", f"generic but scan inconsistent: {scan.details}")
        return Check(name, "pass", f"{len(self.checks)} checks pass")


def structural_checks(net: NetOfQuadrics, T: SurfaceT, X: CubicFourfold,
                      seed: int = 0) -> tuple[list[Check], DiscriminantCurves | None]:
    """The structural checks of the explicit example, applied to any (net, cubic)."""
    checks = list(T.checks)
    checks.append(Check.of("X-smooth", X.smooth, ""))
    checks.append(Check.of("X-no-planes", not any(X.contains_plane(P) for P in (PLANE1, PLANE2)), ""))
    dd = deformation_dim(T, X)
    checks.append(Check.of("deformation-dim", dd == 1, f"h0(N) = {dd}"))
    E3, B_II = curve_B_II(net)
    c3 = E3.census()
    checks.append(Check.of("E3-smooth-cubic", E3.degree == 3 and c3.is_smooth, f"census {c3.as_tuple()}"))
    cd = B_II.census()
    checks.append(Check.of("dual-E3-census", cd.as_tuple() == (18, 9), f"census {cd.as_tuple()}"))
    if not all(c.status == "pass" for c in checks):
        return checks, None
    B_I, det = curve_B_I_by_lines(net, X, B_II, seed)
    checks.extend(curve_checks(B_I, B_II))
    return checks, DiscriminantCurves(B_I, B_II, E3, "lines", det)


def genericity_trial(p: int, seed: int, scan: bool = True, threads: int | None = 1) -> TrialResult:
    """random_net -> build_T -> random cubic -> structural checks -> scan with its own curves.

    Degenerate draws end the trial as non-generic; engine errors propagate.
    """
    res = TrialResult(p, seed)
    try:
        net = random_net(p, seed)
        T = build_T(net)
        X = random_cubic_through_T(T, seed)
        checks, curves = structural_checks(net, T, X, seed)
        res.checks.extend(checks)
        if curves is None or not res.generic:
            return res
    except NonGenericError as exc:
        res.failure = str(exc)
        return res
    if scan:
        # a degenerate fiber of a structurally generic trial is a scan failure
        try:
            rep = fiber_scan(net, X, 1, (curves.B_I, curves.B_II), threads)
        except NonGenericError as exc:
            res.checks.append(Check.of("scan-consistency", False, str(exc)))
        else:
            res.checks.append(Check.of("scan-consistency", bool(rep.verdict),
                                       f"types {rep.counts}, mismatches {list(rep.mismatches)}"))
    return res


# steps of verify_example that may be skipped
VERIFY_STEPS = ("deformation", "B_I", "scan", "trisection", "euler", "elimination")


@dataclass
class VerifyResult:
    checks: list[Check] = field(default_factory=list)
    timings: dict = field(default_factory=dict)
    artifacts: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    def add(self, check: Check) -> None:
        self.checks.append(check)


def verify_example(skip=(), threads: int | None = None,
                   data: tuple[PolyData, PolyData] | None = None) -> VerifyResult:
    """Run every check of the explicit F_5 example; steps named in `skip` are reported skipped."""
    skip = set(skip)
    unknown = skip - set(VERIFY_STEPS)
    if unknown:
        raise ValueError(f"unknown steps: {sorted(unknown)}")
    D, B = data or example_dataset()
    printed = (PlaneCurve(B["B_I"]), PlaneCurve(B["B_II"]))
    out = VerifyResult()
    clock = time.perf_counter

    def timed(name):
        class _T:
            def __enter__(self):
                self.t = clock()

            def __exit__(self, *exc):
                out.timings[name] = round(clock() - self.t, 3)
        return _T()

    def skipped(name):
        out.add(Check(name, "skipped", "skipped on request"))

    net = NetOfQuadrics.from_quadrics(D["Q1"], D["Q2"], D["Q3"])
    with timed("T"):
        T = build_T(net)
        for c in T.checks:
            out.add(c)
        out.add(Check.of("T-cubics-span", spans_cubic_space(T, [D["cubic1"], D["cubic2"]]),
                         "the printed cubics together with x_i * I_T(2) span I_T(3)"))
        sq = quadric_net_square_identity(*net.quadrics, *net.matrices)
        out.add(Check.of("net-square-identity", sq, "det of the net is a constant times det(M)^2"))
    with timed("fourfold"):
        X = cubic_fourfold(T, D["f"])
        out.add(Check.of("X-smooth", X.smooth, "singular scheme of f is empty"))
        out.add(Check.of("X-no-planes", not any(X.contains_plane(P) for P in (PLANE1, PLANE2)),
                         "X contains neither plane"))
    if "deformation" in skip:
        skipped("deformation-dim")
    else:
        with timed("deformation"):
            dd = deformation_dim(T, X)
            out.add(Check.of("deformation-dim", dd == 1, f"h0(N) = {dd}"))
    with timed("B_II"):
        E3, B_II = curve_B_II(net)
        c3 = E3.census()
        out.add(Check.of("E3-smooth-cubic", E3.degree == 3 and c3.is_smooth,
                         f"degree {E3.degree}, census {c3.as_tuple()}"))
        cd = B_II.census()
        out.add(Check.of("dual-E3-census", cd.as_tuple() == (18, 9), f"census {cd.as_tuple()}"))
        out.add(Check.of("dual-E3-equals-B_II", B_II.same_curve(printed[1]),
                         "dual of E3 equals the printed B_II"))
    with timed("curves"):
        for c in curve_checks(*printed, prefix="printed-"):
            out.add(c)
    if "B_I" in skip:
        skipped("lines-B_I-equals-printed")
    else:
        with timed("B_I"):
            try:
                B_I, det = curve_B_I_by_lines(net, X, B_II)
            except NonGenericError as exc:
                out.add(Check.of("lines-B_I-equals-printed", False, str(exc)))
            else:
                out.add(Check.of("lines-B_I-equals-printed", B_I.same_curve(printed[0]),
                                 f"{det['lines_used']} lines over F_{det['line_field']}"))
    smooth_fiber = None
    if "scan" in skip:
        skipped("scan-consistency")
    else:
        with timed("scan"):
            scan = fiber_scan(net, X, 1, printed, threads)
            out.artifacts["scan"] = scan
            out.add(Check.of("scan-consistency", bool(scan.verdict) and len(scan.reports) == 31,
                             f"{len(scan.reports)} points, types {scan.counts}"))
            smooth_fiber = next((r for r in scan.reports if r.type == "smooth"), None)
    if "trisection" in skip:
        skipped("trisection")
    else:
        with timed("trisection"):
            if smooth_fiber is None:
                F = net.field
                smooth_fiber = next(r for r in (fiber_at(net, X, p, F) for p in projective_points(F))
                                    if r.type == "smooth")
            deg, genus, s1, s2 = trisection_check(T, net, X, smooth_fiber)
            out.add(Check.of("trisection", (deg, genus, s1, s2) == (12, 7, 3, 3),
                             f"D over {smooth_fiber.point}: degree {deg}, genus {genus}, "
                             f"meets the planes in {s1} and {s2} points"))
    if "euler" in skip:
        skipped("euler")
    else:
        from .lattice import derived_strata, euler_general, euler_p2

        cII = printed[1].census()
        dI, dII, bIV = printed[0].degree, printed[1].degree, cII.as_tuple()[1]
        e1 = euler_p2(dI, dII, bIV)
        e2 = euler_general(3, derived_strata(dI, dII, bIV))
        out.add(Check.of("euler", e1 == e2 == 27, f"euler_p2({dI},{dII},{bIV}) = {e1}, stratified {e2}"))
    if "elimination" in skip:
        skipped("elimination-B_I")
    else:
        with timed("elimination"):
            try:
                B_I, det = curve_B_I_by_elimination(net, X, B_II)
            except NonGenericError as exc:
                out.add(Check.of("elimination-B_I", False, str(exc)))
            else:
                out.add(Check.of("elimination-B_I", B_I.same_curve(printed[0]),
                                 f"critical curve {det['critical_curve']}"))
    return out


__all__ = [
    "BASE_VARS", "Check", "CubicFourfold", "DiscriminantCurves", "FiberReport",
    "NetOfQuadrics", "NonGenericError", "ScanReport", "SurfaceT", "VARS", "build_T",
    "classify", "critical_ideal_generators", "cubic_fourfold", "curve_B_I_by_elimination",
    "curve_B_I_by_lines", "curve_B_II", "curve_checks", "default_threads", "deformation_dim",
    "discriminant_curves", "expected_type", "fiber_at", "fiber_census", "fiber_ideal",
    "fiber_scan", "normalize_point", "projective_points", "random_cubic_through_T",
    "random_net", "restricted_discriminant", "scan_consistency", "spans_cubic_space",
    "trisection_check", "TrialResult", "genericity_trial", "structural_checks", "VERIFY_STEPS", "VerifyResult", "verify_example", "example_dataset",
]
