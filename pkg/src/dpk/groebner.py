"""Buchberger's algorithm and the ideal operations built on it.

Polynomials inside the engine are plain term dicts (packed monomial ->
coefficient) in one Ring; the public surface speaks MultiPoly and Ideal.
"""

from __future__ import annotations

import heapq
import logging
from dataclasses import dataclass

from .ring import MAX_EXP, MonomialOrder, MultiPoly, Ring, RingError, make_ring

log = logging.getLogger(__name__)

DEFAULT_PAIR_CAP = 2_000_000
MAX_SATURATION_STEPS = 64
PREFILTER_MIN_GENS = 24


class ResourceError(RuntimeError):
    """A computation exceeded its configured budget."""


# ---------------------------------------------------------------------------
# reduction kernels


def _reduce(f: dict, reducers: list, R: Ring, full: bool = True) -> dict:
    """Multivariate division of f by monic reducers [(lm, terms), ...].

    With full=False only the leading term is reduced (the remainder may have
    reducible tail terms).
    """
    F = R.field
    g = R.guard
    f = dict(f)
    rem: dict[int, int] = {}
    if F.k == 1:
        p = F.p
        while f:
            m = max(f)
            mg = m | g
            for lm, gt in reducers:
                if (mg - lm) & g == g:
                    c = f[m]
                    q = m - lm
                    for gm, gc in gt.items():
                        k = gm + q
                        v = (f.get(k, 0) - c * gc) % p
                        if v:
                            f[k] = v
                        else:
                            del f[k]
                    break
            else:
                if not full:
                    f.update(rem)
                    return f
                rem[m] = f.pop(m)
    else:
        sub, mul = F.sub_table, F.mul_table
        while f:
            m = max(f)
            mg = m | g
            for lm, gt in reducers:
                if (mg - lm) & g == g:
                    row = mul[f[m]]
                    q = m - lm
                    for gm, gc in gt.items():
                        k = gm + q
                        v = sub[f.get(k, 0)][row[gc]]
                        if v:
                            f[k] = v
                        else:
                            del f[k]
                    break
            else:
                if not full:
                    f.update(rem)
                    return f
                rem[m] = f.pop(m)
    return rem


def _monic(terms: dict, R: Ring) -> dict:
    if not terms:
        return terms
    F = R.field
    c = terms[max(terms)]
    if c == 1:
        return terms
    inv = F.inv(c)
    if F.k == 1:
        p = F.p
        return {m: v * inv % p for m, v in terms.items()}
    row = F.mul_table[inv]
    return {m: row[v] for m, v in terms.items()}


def _spoly(a: tuple, b: tuple, L: int, R: Ring) -> dict:
    """S-polynomial of monic (lm, terms) pairs with lcm L."""
    F = R.field
    qa, qb = L - a[0], L - b[0]
    out = {m + qa: c for m, c in a[1].items()}
    if F.k == 1:
        p = F.p
        for m, c in b[1].items():
            k = m + qb
            v = (out.get(k, 0) - c) % p
            if v:
                out[k] = v
            else:
                del out[k]
    else:
        sub = F.sub_table
        for m, c in b[1].items():
            k = m + qb
            v = sub[out.get(k, 0)][c]
            if v:
                out[k] = v
            else:
                del out[k]
    return out


def _linear_prefilter(gens: list[dict], R: Ring) -> list[dict]:
    """Replace homogeneous generators of equal degree by a reduced echelon basis of their span."""
    import numpy as np

    from .linalg import rref_array

    mdeg = R.mdeg
    groups: dict[int, list[dict]] = {}
    for t in gens:
        degs = {mdeg(m) for m in t}
        if len(degs) != 1:
            return gens
        groups.setdefault(degs.pop(), []).append(t)
    out = []
    for d in sorted(groups):
        block = groups[d]
        cols = sorted({m for t in block for m in t}, reverse=True)
        index = {m: i for i, m in enumerate(cols)}
        A = np.zeros((len(block), len(cols)), dtype=np.int64)
        for i, t in enumerate(block):
            for m, c in t.items():
                A[i, index[m]] = c
        E, _ = rref_array(R.field, A)
        for row in E:
            nz = np.nonzero(row)[0]
            out.append({cols[j]: int(row[j]) for j in nz})
    return out


# ---------------------------------------------------------------------------


@dataclass
class GBStats:
    pairs_processed: int = 0
    zero_reductions: int = 0
    basis_size: int = 0


def _buchberger_terms(gens: list[dict], R: Ring, degree_bound: int | None = None,
                      pair_cap: int | None = None, module_vars: tuple[int, ...] = (),
                      stats: GBStats | None = None) -> list[dict]:
    """Reduced Groebner basis (as term dicts, sorted by leading monomial)."""
    pair_cap = DEFAULT_PAIR_CAP if pair_cap is None else pair_cap
    mdeg = R.mdeg
    lcm = R.lcm
    divides = R.divides
    coprime = R.coprime
    mask = R.exp_mask
    from .ring import EXP_BITS

    def position(m):
        for v in module_vars:
            if (m >> (EXP_BITS * v)) & mask:
                return v
        return -1

    polys: list[tuple[int, dict]] = []   # index -> (lm, terms)
    sugar: list[int] = []
    pos: list[int] = []
    G: list[int] = []                    # live basis indices
    B: dict[tuple[int, int], tuple[int, int]] = {}   # pair -> (lcm, sugar)
    heap: list = []

    def reducers():
        return [polys[i] for i in G]

    def add(h_terms: dict, h_sugar: int):
        nonlocal G
        h_terms = _monic(h_terms, R)
        hl = max(h_terms)
        h = len(polys)
        polys.append((hl, h_terms))
        sugar.append(h_sugar)
        hp = position(hl) if module_vars else -1
        pos.append(hp)
        cands = [g for g in G if pos[g] == hp]
        lcms = {g: lcm(polys[g][0], hl) for g in cands}
        # Gebauer-Moeller: chain criterion on the new pairs
        C = list(cands)
        D: list[int] = []
        while C:
            g1 = C.pop(0)
            L1 = lcms[g1]
            if coprime(polys[g1][0], hl):
                D.append(g1)
                continue
            if any(divides(lcms[g2], L1) for g2 in C) or any(divides(lcms[g2], L1) for g2 in D):
                continue
            D.append(g1)
        E = [g for g in D if not coprime(polys[g][0], hl)]
        # old pairs made redundant by h
        for (i, j), (Lij, _) in list(B.items()):
            if divides(hl, Lij) and lcm(polys[i][0], hl) != Lij and lcm(polys[j][0], hl) != Lij:
                del B[(i, j)]
        for g in E:
            L = lcms[g]
            s = max(sugar[g] + mdeg(L - polys[g][0]), h_sugar + mdeg(L - hl))
            if degree_bound is not None and s > degree_bound:
                continue
            B[(g, h)] = (L, s)
            heapq.heappush(heap, (s, h, g))
        G = [g for g in G if not divides(hl, polys[g][0])] + [h]

    gens = [t for t in gens if t]
    if len(gens) > PREFILTER_MIN_GENS:
        gens = _linear_prefilter(gens, R)
    for t in gens:
        s = max(mdeg(m) for m in t)
        if degree_bound is not None and s > degree_bound:
            continue
        r = _reduce(t, reducers(), R, full=True)
        if r:
            add(r, s)

    processed = 0
    zeros = 0
    while heap:
        s, j, i = heapq.heappop(heap)
        if (i, j) not in B:
            continue
        L, s = B.pop((i, j))
        processed += 1
        if processed > pair_cap:
            raise ResourceError(f"Buchberger exceeded the pair cap of {pair_cap}")
        if any(e > MAX_EXP - 2 for e in R.decode(L)):
            raise ResourceError("exponent bound reached during Buchberger")
        sp = _spoly(polys[i], polys[j], L, R)
        if not sp:
            zeros += 1
            continue
        r = _reduce(sp, reducers(), R, full=True)
        if r:
            add(r, s)
        else:
            zeros += 1

    # interreduce
    live = sorted((polys[i] for i in G), key=lambda t: t[0])
    out = []
    for idx, (lm, t) in enumerate(live):
        others = [x for k, x in enumerate(live) if k != idx]
        tail = dict(t)
        del tail[lm]
        r = _reduce(tail, others, R, full=True)
        r[lm] = 1
        out.append(r)
    if stats is not None:
        stats.pairs_processed += processed
        stats.zero_reductions += zeros
        stats.basis_size = len(out)
    return out


def buchberger(gens, order: MonomialOrder | None = None, *, degree_bound: int | None = None,
               pair_cap: int | None = None, stats: GBStats | None = None) -> list[MultiPoly]:
    """Reduced Groebner basis of the ideal generated by `gens`.

    S-pairs follow the normal (sugar) strategy with ties broken by pair
    index; both Buchberger criteria are applied through the Gebauer-Moeller
    update.  The result is sorted by increasing leading monomial and lives
    in the ring carrying `order`.
    """
    gens = [g for g in gens]
    if not gens:
        raise ValueError("need at least one generator to fix the ring")
    base = gens[0].ring
    R = base.with_order(order) if order is not None else base
    terms = [g.to_ring(R).terms for g in gens]
    out = _buchberger_terms(terms, R, degree_bound=degree_bound, pair_cap=pair_cap, stats=stats)
    return [MultiPoly(R, t) for t in out]


# ---------------------------------------------------------------------------


class Ideal:
    """An ideal of a polynomial ring with cached reduced Groebner bases.

    Caches are write-once per (order, degree bound); generators are never
    modified.
    """

    def __init__(self, gens, ring: Ring | None = None):
        gens = list(gens)
        if ring is None:
            if not gens:
                raise ValueError("empty generator list needs an explicit ring")
            ring = gens[0].ring
        self.ring = ring
        self.gens = tuple(g.to_ring(ring) for g in gens if not g.is_zero())
        self._gb: dict = {}

    def __repr__(self):
        return f"Ideal({len(self.gens)} generators in {self.ring!r})"

    # -- Groebner bases ------------------------------------------------------
    def groebner(self, order: MonomialOrder | None = None, degree_bound: int | None = None,
                 pair_cap: int | None = None) -> list[MultiPoly]:
        R = self.ring if order is None else self.ring.with_order(order)
        key = (R.order, R.weights, degree_bound)
        if key not in self._gb:
            if not self.gens:
                self._gb[key] = []
            else:
                terms = [g.to_ring(R).terms for g in self.gens]
                out = _buchberger_terms(terms, R, degree_bound=degree_bound, pair_cap=pair_cap)
                self._gb[key] = [MultiPoly(R, t) for t in out]
        return self._gb[key]

    def gb_ring(self, order: MonomialOrder | None = None) -> Ring:
        return self.ring if order is None else self.ring.with_order(order)

    def normal_form(self, f: MultiPoly, order: MonomialOrder | None = None) -> MultiPoly:
        G = self.groebner(order)
        R = self.gb_ring(order)
        reds = [(g.lm(), g.terms) for g in G]
        r = _reduce(f.to_ring(R).terms, reds, R, full=True)
        return MultiPoly(R, r).to_ring(self.ring)

    def contains(self, f: MultiPoly, order: MonomialOrder | None = None) -> bool:
        return self.normal_form(f, order).is_zero()

    def __contains__(self, f):
        return self.contains(f)

    def contains_ideal(self, other: Ideal) -> bool:
        return all(self.contains(g) for g in other.gens)

    def is_unit(self) -> bool:
        G = self.groebner()
        return any(g.lm() == 0 for g in G)

    def is_zero(self) -> bool:
        return not self.gens

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        if not self.ring.same_space(other.ring):
            return False
        mine = self.groebner()
        theirs = Ideal(other.gens, self.ring).groebner()
        return [g.terms for g in mine] == [g.terms for g in theirs]

    __hash__ = None

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.gens)

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, MultiPoly):
            other = Ideal([other], self.ring)
        if isinstance(other, (list, tuple)):
            other = Ideal(other, self.ring)
        return Ideal(list(self.gens) + [g.to_ring(self.ring) for g in other.gens], self.ring)

    def __mul__(self, other):
        return Ideal([a * b.to_ring(self.ring) for a in self.gens for b in other.gens], self.ring)

    def to_ring(self, ring: Ring) -> Ideal:
        return Ideal([g.to_ring(ring) for g in self.gens], ring)

    def reduced_gens(self) -> list[MultiPoly]:
        """Reduced Groebner basis in the ring's own order."""
        return list(self.groebner())


def unit_ideal(R: Ring) -> Ideal:
    return Ideal([R.one()], R)


def normal_form(f: MultiPoly, I: Ideal, order: MonomialOrder | None = None) -> MultiPoly:
    return I.normal_form(f, order)


# ---------------------------------------------------------------------------
# auxiliary rings


def _extend_ring(R: Ring, name: str, weight: int, order_builder) -> Ring:
    """R with one extra variable appended; order_builder(n_old) gives the new order."""
    if name in R.names:
        raise RingError(f"variable {name} already present")
    names = R.names + (name,)
    weights = R.weights + (weight,)
    return make_ring(R.field, names, order_builder(R.n), weights)


def _grevlex_block_of(R: Ring) -> tuple[int, ...]:
    return tuple(range(R.n))


def intersect(*ideals: Ideal) -> Ideal:
    """Intersection of ideals of one ring, by eliminating a weight-0 tag variable."""
    if not ideals:
        raise ValueError("nothing to intersect")
    acc = ideals[0]
    for J in ideals[1:]:
        acc = _intersect2(acc, J)
    return acc


def _intersect2(I: Ideal, J: Ideal) -> Ideal:
    R = I.ring
    if I.is_zero() or J.is_zero():
        return Ideal([], R)
    if I.is_unit():
        return Ideal(J.gens, R)
    if J.is_unit():
        return Ideal(I.gens, R)
    n = R.n
    S = _extend_ring(R, "_tag", 0, lambda n0: MonomialOrder(
        (("lex", (n0,)), ("grevlex", tuple(range(n0))))))
    t = S.var(n)
    one = S.one()
    gens = [t * g.to_ring(S) for g in I.gens] + [(one - t) * h.to_ring(S) for h in J.gens]
    G = _buchberger_terms([g.terms for g in gens], S)
    tag_unit = S.units[n]
    keep = []
    mask = S.exp_mask
    from .ring import EXP_BITS
    for gt in G:
        lm = max(gt)
        if (lm >> (EXP_BITS * n)) & mask:
            continue
        keep.append(MultiPoly(S, gt).to_ring(R))
    del tag_unit
    return Ideal(keep, R)


def _quotient_by_element(I: Ideal, g: MultiPoly, saturate: bool) -> Ideal:
    """I : g (or I : g^inf) through the graph of g.

    With y a new last variable of weight deg g, the ideal I + (y - g) is
    homogeneous and k[x,y]/(y - g) = k[x]; in grevlex with y last, dividing
    Groebner basis elements by y (once, or fully) gives a Groebner basis of
    the quotient (saturation) by y, and substituting y = g maps it back.
    """
    R = I.ring
    if g.is_zero():
        return unit_ideal(R)
    if g.degree() == 0:
        return Ideal(I.gens, R)
    if not g.is_homogeneous() or not I.is_homogeneous():
        return _quotient_by_element_affine(I, g, saturate)
    used = g.variables_used()
    # variable case: Bayer's trick directly
    if len(g.terms) == 1 and list(g.terms.values())[0] and sum(R.decode(g.lm())) == 1:
        v = R.decode(g.lm()).index(1)
        order = MonomialOrder.grevlex_last(v, R.n) if R.weights == (1,) * R.n else None
        if order is not None:
            S = R.with_order(order)
            G = I.groebner(order)
            shift = S.units[v]
            from .ring import EXP_BITS
            out = []
            for h in G:
                t = h.terms
                k = min((m >> (EXP_BITS * v)) & S.exp_mask for m in t)
                if k:
                    k = k if saturate else 1
                    t = {m - k * shift: c for m, c in t.items()}
                out.append(MultiPoly(S, t).to_ring(R))
            return Ideal(out, R)
    del used
    d = g.degree()
    n = R.n
    S = _extend_ring(R, "_y", d, lambda n0: MonomialOrder((("grevlex", tuple(range(n0 + 1))),)))
    y = S.var(n)
    gens = [h.to_ring(S) for h in I.gens] + [y - g.to_ring(S)]
    G = _buchberger_terms([h.terms for h in gens], S)
    from .ring import EXP_BITS
    shift = S.units[n]
    images = [R.var(i) for i in range(n)] + [g]
    out = []
    for t in G:
        k = min((m >> (EXP_BITS * n)) & S.exp_mask for m in t)
        if k:
            k = k if saturate else 1
            t = {m - k * shift: c for m, c in t.items()}
        out.append(MultiPoly(S, t).subs(images, R))
    return Ideal([h for h in out if not h.is_zero()], R)


def _quotient_by_element_affine(I: Ideal, g: MultiPoly, saturate: bool) -> Ideal:
    """Inhomogeneous fallback: I : g = (I cap (g)) / g, saturation by iteration."""
    R = I.ring
    cur = I
    while True:
        inter = _intersect2(cur, Ideal([g], R))
        nxt = Ideal([_exact_divide(h, g) for h in inter.gens], R)
        if not saturate or nxt == cur:
            return nxt
        cur = nxt


def _exact_divide(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    R = f.ring
    q = {}
    r = dict(f.terms)
    gt = _monic(g.terms, R)
    lc = g.lc()
    F = R.field
    glm = max(gt)
    while r:
        m = max(r)
        if not R.divides(glm, m):
            raise ArithmeticError("inexact polynomial division")
        c = r[m]
        shift = m - glm
        q[shift] = c
        r = _sub_scaled(r, gt, shift, c, R)
    inv = F.inv(lc)
    return MultiPoly(R, {m: F.mul(c, inv) for m, c in q.items()})


def _sub_scaled(f: dict, g: dict, shift: int, c: int, R: Ring) -> dict:
    F = R.field
    out = dict(f)
    for m, v in g.items():
        k = m + shift
        w = F.sub(out.get(k, 0), F.mul(c, v))
        if w:
            out[k] = w
        else:
            out.pop(k, None)
    return out


def ideal_quotient(I: Ideal, J: Ideal) -> Ideal:
    """(I : J) = intersection over generators g of J of (I : g)."""
    R = I.ring
    gens = [g.to_ring(R) for g in J.gens]
    if not gens:
        return unit_ideal(R)
    parts = [_quotient_by_element(I, g, saturate=False) for g in gens]
    return intersect(*parts)


def saturate(I: Ideal, J: Ideal | MultiPoly, max_steps: int = MAX_SATURATION_STEPS) -> Ideal:
    """(I : J^inf).

    A principal J is handled in one step by the graph construction;
    otherwise ideal quotients are iterated until two successive reduced
    Groebner bases agree.
    """
    R = I.ring
    if isinstance(J, MultiPoly):
        J = Ideal([J], R)
    gens = [g.to_ring(R) for g in J.gens]
    if not gens:
        return unit_ideal(R)
    if any(g.degree() == 0 for g in gens):
        return Ideal(I.gens, R)
    if len(gens) == 1:
        return _quotient_by_element(I, gens[0], saturate=True)
    cur = I
    for _ in range(max_steps):
        nxt = ideal_quotient(cur, J)
        if nxt == cur:
            return nxt
        cur = nxt
    raise ResourceError(f"saturation did not stabilize within {max_steps} quotients")


def saturate_each(I: Ideal, gens) -> Ideal:
    """Intersection of the principal saturations I : g^inf (equals I : (gens)^inf)."""
    parts = [saturate(I, g) for g in gens]
    return intersect(*parts)


def eliminate(I: Ideal, drop, keep_ring: bool = False) -> Ideal:
    """I intersected with the subring in the variables not in `drop`."""
    R = I.ring
    drop_idx = sorted({R.index(v) if isinstance(v, str) else v for v in drop})
    order = MonomialOrder.elimination(drop_idx, R.n)
    G = I.groebner(order)
    S = I.gb_ring(order)
    from .ring import EXP_BITS
    keep = []
    for g in G:
        e = S.decode(g.lm())
        if any(e[i] for i in drop_idx):
            continue
        keep.append(g.to_ring(R))
    if keep_ring:
        return Ideal(keep, R)
    rest = [R.names[i] for i in range(R.n) if i not in drop_idx]
    sub = make_ring(R.field, rest, None, [R.weights[i] for i in range(R.n) if i not in drop_idx])
    del EXP_BITS
    return Ideal([g.to_ring(sub) for g in keep], sub)
