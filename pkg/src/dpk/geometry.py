"""Scheme-level predicates: smoothness, singularity census, plane curves and duality."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .field import upoly_squarefree
from .groebner import Ideal, eliminate, intersect, saturate
from .hilbert import degree_piece_span, hilbert
from .linalg import rank
from .radical import radical_degree
from .ring import MultiPoly, Ring, make_ring


class GeometryError(ValueError):
    """Input is degenerate for the requested construction."""


class CensusError(GeometryError):
    """The singular locus is not finite."""


# ---------------------------------------------------------------------------
# matrices of polynomials


def jacobian(gens, nvars: int | None = None) -> list[list[MultiPoly]]:
    gens = list(gens)
    n = gens[0].ring.n if nvars is None else nvars
    return [[g.diff(i) for i in range(n)] for g in gens]


def minors(M: list[list[MultiPoly]], k: int, rows=None) -> list[MultiPoly]:
    """All nonzero k x k minors of M (optionally only for the given row subsets).

    Minors are built by Laplace expansion along the last row with the
    (k-1)-minors memoized, so shared sub-determinants are computed once.
    """
    nr, nc = len(M), len(M[0])
    if k > min(nr, nc):
        return []
    row_sets = [tuple(r) for r in rows] if rows is not None else list(
        itertools.combinations(range(nr), k))
    memo: dict[tuple, MultiPoly] = {}

    def det(rs: tuple, cs: tuple) -> MultiPoly:
        key = (rs, cs)
        if key in memo:
            return memo[key]
        if len(rs) == 1:
            val = M[rs[0]][cs[0]]
        else:
            r = rs[-1]
            val = None
            sign = 1 if len(cs) % 2 else -1      # sign of the last-row expansion at column 0
            for idx, c in enumerate(cs):
                a = M[r][c]
                s = sign if idx % 2 == 0 else -sign
                if a.is_zero():
                    continue
                sub = det(rs[:-1], cs[:idx] + cs[idx + 1:])
                if sub.is_zero():
                    continue
                term = a * sub
                if s < 0:
                    term = -term
                val = term if val is None else val + term
            if val is None:
                val = M[rs[0]][cs[0]].ring.zero()
        memo[key] = val
        return val

    out = []
    for rs in row_sets:
        for cs in itertools.combinations(range(nc), k):
            d = det(rs, cs)
            if not d.is_zero():
                out.append(d)
    return out


def poly_det(M: list[list[MultiPoly]]) -> MultiPoly:
    n = len(M)
    if n == 0:
        raise ValueError("empty matrix")
    d = minors(M, n)
    return d[0] if d else M[0][0].ring.zero()


def minimal_generators(I: Ideal) -> list[MultiPoly]:
    """A minimal homogeneous generating set, chosen greedily from the reduced basis."""
    R = I.ring
    G = [g for g in I.groebner()]
    chosen: list[MultiPoly] = []
    for d in sorted({g.degree() for g in G}):
        basis = {m: i for i, m in enumerate(R.monomials_of_degree(d))}

        def rows(polys):
            out = []
            for f in polys:
                r = [0] * len(basis)
                for m, c in f.terms.items():
                    r[basis[m]] = c
                out.append(r)
            return out

        cur = degree_piece_span(chosen, R, d)
        r = rank(R.field, rows(cur)) if cur else 0
        for g in (g for g in G if g.degree() == d):
            rr = rank(R.field, rows(cur + [g]))
            if rr > r:
                chosen.append(g)
                cur = cur + [g]
                r = rr
    return chosen


# ---------------------------------------------------------------------------
# smoothness and singularities


@dataclass(frozen=True)
class SingularityCensus:
    """Singular subscheme summary: its degree (sum of Tjurina-type lengths) and point count."""

    ambient_dim: int
    scheme_degree: int
    radical_degree: int
    locus_dim: int = -1
    status: str = "ok"

    @property
    def is_smooth(self) -> bool:
        return self.status == "ok" and self.scheme_degree == 0

    def as_tuple(self) -> tuple[int, int]:
        return (self.scheme_degree, self.radical_degree)


def singular_ideal(I: Ideal, codim: int, gens=None, row_subsets=None) -> Ideal:
    """I plus the codim x codim minors of the Jacobian of a generating set."""
    gens = list(gens) if gens is not None else minimal_generators(I)
    J = jacobian(gens, I.ring.n)
    mins = minors(J, codim, rows=row_subsets)
    return Ideal(list(I.groebner()) + mins, I.ring)


def is_smooth(I: Ideal, codim: int) -> bool:
    """Smoothness of the projective scheme V(I), assumed equidimensional of codimension codim.

    The singular ideal is irrelevant exactly when its Hilbert polynomial is
    zero, which is the same as its saturation by the irrelevant ideal being
    the unit ideal.
    """
    return hilbert(singular_ideal(I, codim)).dim < 0


def singularity_census(I: Ideal, codim: int, gens=None, screen: int = 0,
                       seed: int = 0) -> SingularityCensus:
    """Degree of the singular subscheme of V(I) and of its reduced structure.

    With screen > 0 a quick pass first uses only `screen` random
    combinations of generators (a superset of the singular locus); if that
    is already empty the scheme is smooth and the full Jacobian is skipped.
    """
    R = I.ring
    gens = list(gens) if gens is not None else minimal_generators(I)
    if screen and len(gens) > codim:
        rng = random.Random(seed)
        combos = []
        by_deg: dict[int, list[MultiPoly]] = {}
        for g in gens:
            by_deg.setdefault(g.degree(), []).append(g)
        degs = sorted(by_deg)
        for _ in range(screen):
            pick = []
            for t in range(codim):
                d = degs[min(t, len(degs) - 1)] if t < 1 else degs[-1]
                c = R.zero()
                for g in by_deg[d]:
                    c = c + g * rng.randrange(1, R.field.p)
                pick.append(c)
            combos.extend(pick)
        rows = [tuple(range(k, k + codim)) for k in range(0, len(combos), codim)]
        quick = Ideal(list(I.groebner()) + minors(jacobian(combos, R.n), codim, rows=rows), R)
        if hilbert(quick).dim < 0:
            return SingularityCensus(R.n - 1 - codim, 0, 0)
    Sing = singular_ideal(I, codim, gens)
    h = hilbert(Sing)
    if h.dim < 0:
        return SingularityCensus(R.n - 1 - codim, 0, 0)
    if h.dim > 0:
        return SingularityCensus(R.n - 1 - codim, h.degree, -1, h.dim, "positive-dimensional")
    return SingularityCensus(R.n - 1 - codim, h.degree, radical_degree(Sing), 0)


def curve_invariants(C: Ideal) -> tuple[int, int]:
    """(degree, arithmetic genus) of a projective curve from its Hilbert polynomial dn + 1 - p_a."""
    h = hilbert(C)
    if h.dim != 1:
        raise GeometryError(f"expected a curve, got dimension {h.dim}")
    const = h.hilbert_poly[0]
    if const.denominator != 1:
        raise GeometryError("non-integral Hilbert polynomial")
    return h.degree, int(1 - const)


# ---------------------------------------------------------------------------
# plane curves


@dataclass(frozen=True)
class PlaneCurve:
    poly: MultiPoly
    degree: int = field(init=False)

    def __post_init__(self):
        f = self.poly
        if f.ring.n != 3 or f.is_zero() or not f.is_homogeneous():
            raise GeometryError("a plane curve is a nonzero form in three variables")
        object.__setattr__(self, "degree", f.degree())

    @property
    def ring(self) -> Ring:
        return self.poly.ring

    def ideal(self) -> Ideal:
        return Ideal([self.poly], self.ring)

    def census(self) -> SingularityCensus:
        return singularity_census(self.ideal(), 1, gens=[self.poly])

    def is_smooth(self) -> bool:
        return self.census().is_smooth

    def contains(self, point, field_ctx=None) -> bool:
        F = field_ctx or self.ring.field
        return self.poly.evaluate_in(F, point) == 0

    def monic(self) -> PlaneCurve:
        return PlaneCurve(self.poly.monic())

    def same_curve(self, other: PlaneCurve) -> bool:
        """Equality up to a nonzero scalar (same variable names required)."""
        g = other.poly.to_ring(self.ring)
        return self.poly.monic() == g.monic()


def intersection_scheme(A: PlaneCurve, B: PlaneCurve) -> tuple[int, int]:
    """(scheme degree, number of points) of A cap B."""
    I = Ideal([A.poly, B.poly.to_ring(A.ring)], A.ring)
    h = hilbert(I)
    if h.dim != 0:
        raise GeometryError("curves share a component")
    return h.degree, radical_degree(I)


def _restriction_squarefree(G: MultiPoly) -> bool:
    """True when G restricted to some line is squarefree of full degree.

    A reduced curve has such lines (all but finitely many); a curve with a
    multiple component has none.  Lines (t : 1 : a t + s) are tried over the
    base field, then over its quadratic extension.
    """
    from .field import build_extension

    R = G.ring
    base = R.field
    fields = [base]
    if base.k * 2 <= 4 and base.p ** (base.k * 2) <= 2500:
        fields.append(build_extension(base.p, base.k * 2) if base.k == 1 else base)
    d = G.degree()
    for F in fields:
        for a in F.elements():
            for s in F.elements():
                # G(t, 1, a t + s), expanded
                coeffs = [0] * (d + 1)
                for m, c in G.terms.items():
                    e = R.decode(m)
                    poly = [1]
                    for _ in range(e[2]):
                        nxt = [0] * (len(poly) + 1)
                        for i, v in enumerate(poly):
                            nxt[i] = F.add(nxt[i], F.mul(v, s))
                            nxt[i + 1] = F.add(nxt[i + 1], F.mul(v, a))
                        poly = nxt
                    for i, v in enumerate(poly):
                        k = i + e[0]
                        coeffs[k] = F.add(coeffs[k], F.mul(v, c))
                if not coeffs[d]:
                    continue
                if len(upoly_squarefree(F, coeffs)) == d + 1:
                    return True
    return False


def dual_curve(C: PlaneCurve, dual_names=("x", "y", "z")) -> PlaneCurve:
    """Projective dual of a reduced plane curve (not a line).

    Incidence: points p of C and lines a proportional to grad C(p), i.e. the
    2 x 2 minors of [grad C; a].  Components where the gradient vanishes are
    removed by saturating with each partial derivative and intersecting;
    the source coordinates are then eliminated.
    """
    if C.degree < 2:
        raise GeometryError("the dual of a line is a point")
    src = C.ring
    F = src.field
    src_names = tuple(f"_s{i}" for i in range(3))
    W = make_ring(F, src_names + tuple(dual_names))
    Fw = C.poly.subs([W.var(i) for i in range(3)], W)
    grad = [Fw.diff(i) for i in range(3)]
    a = [W.var(3 + i) for i in range(3)]
    mins = [grad[i] * a[j] - grad[j] * a[i] for i, j in ((0, 1), (0, 2), (1, 2))]
    I = Ideal([Fw] + mins, W)
    parts = [saturate(I, g) for g in grad if not g.is_zero()]
    inc = intersect(*parts) if len(parts) > 1 else parts[0]
    E = eliminate(inc, range(3))
    gens = [g for g in E.groebner() if not g.is_zero()]
    if len(gens) != 1:
        raise GeometryError(f"dual eliminant is not principal ({len(gens)} generators)")
    D = gens[0].monic()
    if not _restriction_squarefree(D):
        raise GeometryError("dual eliminant is not reduced")
    return PlaneCurve(D)


def determinant_curve(M1, M2, M3, field_ctx, names=("l1", "l2", "l3")) -> PlaneCurve:
    """The cubic det(l1 M1 + l2 M2 + l3 M3); raises on an identically zero determinant."""
    R = make_ring(field_ctx, names)
    d = _matrix_det_poly([M1, M2, M3], R, lambda k: R.var(k))
    if d.is_zero():
        raise GeometryError("determinant vanishes identically (degenerate net)")
    return PlaneCurve(d)


def _matrix_det_poly(Ms, R: Ring, coef) -> MultiPoly:
    mat = []
    for i in range(3):
        row = []
        for j in range(3):
            e = R.zero()
            for k, Mk in enumerate(Ms):
                if Mk[i][j]:
                    e = e + coef(k).scale(Mk[i][j])
            row.append(e)
        mat.append(row)
    return poly_det(mat)


def side_determinants(M1, M2, M3, field_ctx) -> tuple[PlaneCurve, PlaneCurve]:
    """(E_1, E_2): E_1 in the plane x0=x1=x2=0 (coordinates x3,x4,x5), E_2 in x3=x4=x5=0.

    With Q_k = sum_ij M_k[i][j] x_i x_{3+j}, a point v of the first plane lies
    on E_1 when the three linear forms u -> Q_k(u, v) are dependent.
    """
    Ms = (M1, M2, M3)
    Rv = make_ring(field_ctx, ("x3", "x4", "x5"))
    Ru = make_ring(field_ctx, ("x0", "x1", "x2"))
    v = Rv.gens()
    u = Ru.gens()
    Nv = [[sum((v[j].scale(Ms[k][i][j]) for j in range(3) if Ms[k][i][j]), Rv.zero())
           for i in range(3)] for k in range(3)]
    Nu = [[sum((u[i].scale(Ms[k][i][j]) for i in range(3) if Ms[k][i][j]), Ru.zero())
           for j in range(3)] for k in range(3)]
    e1, e2 = poly_det(Nv), poly_det(Nu)
    if e1.is_zero() or e2.is_zero():
        raise GeometryError("side determinant vanishes identically")
    return PlaneCurve(e1), PlaneCurve(e2)


def quadric_matrix(Q: MultiPoly) -> list[list[MultiPoly]]:
    """Symmetric matrix A with Q = x^T A x (requires odd characteristic)."""
    R = Q.ring
    F = R.field
    if F.p == 2:
        raise GeometryError("quadric matrices need odd characteristic")
    half = F.inv(F(2))
    n = R.n
    A = [[R.zero() for _ in range(n)] for _ in range(n)]
    for m, c in Q.terms.items():
        e = R.decode(m)
        idx = [i for i, a in enumerate(e) for _ in range(a)]
        if len(idx) != 2:
            raise GeometryError("not a quadratic form")
        i, j = idx
        if i == j:
            A[i][i] = A[i][i] + R.element(c)
        else:
            A[i][j] = A[i][j] + R.element(F.mul(c, half))
            A[j][i] = A[j][i] + R.element(F.mul(c, half))
    return A


def quadric_net_square_identity(Q1: MultiPoly, Q2: MultiPoly, Q3: MultiPoly,
                                M1, M2, M3) -> bool:
    """det6(l1 Q1 + l2 Q2 + l3 Q3) == c * det3(l1 M1 + l2 M2 + l3 M3)^2 for a constant c != 0."""
    F = Q1.ring.field
    L = make_ring(F, ("l1", "l2", "l3"))
    lam = L.gens()
    n = Q1.ring.n
    mats = [quadric_matrix(Q) for Q in (Q1, Q2, Q3)]
    big = []
    for i in range(n):
        row = []
        for j in range(n):
            e = L.zero()
            for k in range(3):
                c = mats[k][i][j].constant_coeff()
                if c:
                    e = e + lam[k].scale(c)
            row.append(e)
        big.append(row)
    d6 = poly_det(big)
    d3 = _matrix_det_poly([M1, M2, M3], L, lambda k: lam[k])
    sq = d3 * d3
    if d6.is_zero() or sq.is_zero():
        return False
    c = F.div(d6.lc(), sq.lc())
    return d6 == sq.scale(c)


# ---------------------------------------------------------------------------
# linear changes of coordinates


def apply_linear(f: MultiPoly, A) -> MultiPoly:
    """f(A x): substitute x_i -> sum_j A[i][j] x_j."""
    R = f.ring
    x = R.gens()
    images = []
    for i in range(R.n):
        e = R.zero()
        for j in range(R.n):
            if A[i][j]:
                e = e + x[j].scale(A[i][j])
        images.append(e)
    return f.subs(images, R)


def standard_planes_matrix(F, plane1, plane2) -> list[list[int]]:
    """Matrix A with A e_{3+j} = plane1[j] and A e_i = plane2[i].

    plane1, plane2: three spanning vectors each of two disjoint planes in P^5.
    Substituting x -> A^{-1} x (see apply_linear) moves them to
    {x0=x1=x2=0} and {x3=x4=x5=0}.
    """
    from .linalg import row_echelon

    cols = [list(v) for v in plane2] + [list(v) for v in plane1]
    A = [[cols[j][i] for j in range(6)] for i in range(6)]
    if len(row_echelon(F, A)[1]) != 6:
        raise GeometryError("planes are not disjoint")
    return A


def invert_matrix(F, A) -> list[list[int]]:
    from .linalg import row_echelon

    n = len(A)
    aug = [list(A[i]) + [1 if i == j else 0 for j in range(n)] for i in range(n)]
    E, piv = row_echelon(F, aug, 2 * n)
    if piv[:n] != list(range(n)):
        raise GeometryError("singular matrix")
    return [row[n:] for row in E]
