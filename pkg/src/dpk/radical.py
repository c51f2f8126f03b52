"""Radicals of zero-dimensional ideals (Seidenberg's method)."""

from __future__ import annotations

from dataclasses import dataclass

from .field import upoly_squarefree
from .groebner import Ideal, _reduce, intersect
from .hilbert import _numerator, hilbert, hilbert_from_numerator
from .ring import MultiPoly, Ring, make_ring


class DimensionError(ValueError):
    """The ideal is not zero-dimensional where that is required."""


def affine_quotient_dim(I: Ideal) -> int:
    """dim_k S/I for an affine zero-dimensional ideal (number of standard monomials)."""
    R = I.ring
    G = I.groebner()
    if any(g.lm() == 0 for g in G):
        return 0
    lead = [R.decode(g.lm()) for g in G]
    for i in range(R.n):
        if not any(e[i] and sum(e) == e[i] for e in lead):
            raise DimensionError("ideal is not zero-dimensional")
    h = hilbert_from_numerator(_numerator(lead, (1,) * R.n), R.n)
    return h.degree


def _min_poly(I: Ideal, x: MultiPoly, bound: int) -> list[int]:
    """Monic minimal polynomial (ascending coefficients) of x in S/I."""
    R = I.ring
    F = R.field
    G = I.groebner()
    reds = [(g.lm(), g.terms) for g in G]
    # incremental echelon basis of normal forms of 1, x, x^2, ...
    basis: list[tuple[int, dict, list[int]]] = []   # (pivot monomial, vector, combination)
    power = R.one()
    for j in range(bound + 1):
        v = _reduce(power.terms, reds, R)
        comb = [0] * (j + 1)
        comb[j] = 1
        v = dict(v)
        for piv, bv, bc in basis:
            c = v.get(piv, 0)
            if c:
                for m, a in bv.items():
                    w = F.sub(v.get(m, 0), F.mul(c, a))
                    if w:
                        v[m] = w
                    else:
                        v.pop(m, None)
                for i, a in enumerate(bc):
                    comb[i] = F.sub(comb[i], F.mul(c, a))
        if not v:
            return comb
        piv = max(v)
        inv = F.inv(v[piv])
        v = {m: F.mul(a, inv) for m, a in v.items()}
        comb = [F.mul(a, inv) for a in comb]
        basis.append((piv, v, comb))
        power = power * x
    raise DimensionError("minimal polynomial degree exceeds the quotient dimension")


def _univariate_in(coeffs: list[int], x: MultiPoly) -> MultiPoly:
    R = x.ring
    out = R.zero()
    pw = R.one()
    for c in coeffs:
        if c:
            out = out + pw.scale(c)
        pw = pw * x
    return out


def affine_radical(I: Ideal) -> Ideal:
    """Radical of an affine zero-dimensional ideal."""
    R = I.ring
    bound = affine_quotient_dim(I)
    if bound == 0:
        return Ideal([R.one()], R)
    extra = []
    for i in range(R.n):
        mp = _min_poly(I, R.var(i), bound)
        sf = upoly_squarefree(R.field, mp)
        if len(sf) < len(mp):
            extra.append(_univariate_in(sf, R.var(i)))
    if not extra:
        return I
    return Ideal(list(I.groebner()) + extra, R)


@dataclass(frozen=True)
class ChartRadical:
    """Radical of one stratum {x_0 = .. = x_{k-1} = 0, x_k = 1} of a projective scheme."""

    chart: int
    ideal: Ideal
    degree: int


@dataclass(frozen=True)
class ProjectiveRadical:
    charts: tuple[ChartRadical, ...]
    degree: int
    ring: Ring

    def homogeneous_ideal(self) -> Ideal:
        """Re-homogenize the chart radicals and intersect them."""
        parts = []
        R = self.ring
        for ch in self.charts:
            if ch.degree == 0:
                continue
            parts.append(_homogenize_chart(ch, R))
        if not parts:
            return Ideal([R.one()], R)
        return intersect(*parts)


def _chart_ideal(I: Ideal, k: int) -> Ideal:
    R = I.ring
    names = R.names[k + 1:]
    if not names:
        A = make_ring(R.field, ("_u",))
        images = [A.zero()] * k + [A.one()]
    else:
        A = make_ring(R.field, names)
        images = [A.zero()] * k + [A.one()] + [A.var(i) for i in range(len(names))]
    gens = [g.subs(images, A) for g in I.groebner()]
    return Ideal([g for g in gens if not g.is_zero()], A)


def _homogenize_chart(ch: ChartRadical, R: Ring) -> Ideal:
    k = ch.chart
    A = ch.ideal.ring
    out = [R.var(i) for i in range(k)]
    if A.names == ("_u",):
        return Ideal(out, R)
    G = ch.ideal.groebner()
    for g in G:
        d = g.degree()
        h = R.zero()
        for m, c in g.terms.items():
            e = A.decode(m)
            ex = [0] * R.n
            ex[k + 1:] = e
            ex[k] = d - sum(e)
            h = h + R.monomial(ex, c)
        out.append(h)
    return Ideal(out, R)


def zero_dim_radical(I: Ideal, ambient: str = "affine"):
    """Radical of a zero-dimensional ideal.

    ambient="affine" returns an Ideal.  ambient="projective" treats I as a
    homogeneous ideal of a finite projective scheme, covers projective space
    by the disjoint strata x_0 = .. = x_{k-1} = 0, x_k = 1 and returns a
    ProjectiveRadical whose degree is the number of geometric points.
    """
    if ambient == "affine":
        return affine_radical(I)
    if ambient != "projective":
        raise ValueError("ambient must be 'affine' or 'projective'")
    h = hilbert(I)
    if h.dim > 0:
        raise DimensionError("projective scheme is not finite")
    R = I.ring
    charts = []
    total = 0
    for k in range(R.n):
        A = _chart_ideal(I, k)
        if A.ring.names == ("_u",):
            deg = 0 if any(g.degree() == 0 for g in A.gens) else 1
            rad = A
        else:
            rad = affine_radical(A)
            deg = affine_quotient_dim(rad)
        charts.append(ChartRadical(k, rad, deg))
        total += deg
    return ProjectiveRadical(tuple(charts), total, R)


def radical_degree(I: Ideal) -> int:
    """Number of geometric points of a finite projective scheme."""
    return zero_dim_radical(I, "projective").degree


__all__ = [
    "ChartRadical", "DimensionError", "ProjectiveRadical", "affine_quotient_dim",
    "affine_radical", "radical_degree", "zero_dim_radical",
]
