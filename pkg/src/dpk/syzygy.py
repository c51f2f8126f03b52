"""First syzygies and degree-zero Hom computations."""

from __future__ import annotations

from dataclasses import dataclass

from .groebner import Ideal, ResourceError, _buchberger_terms, _reduce
from .linalg import nullspace
from .ring import EXP_BITS, MonomialOrder, MultiPoly, make_ring


@dataclass(frozen=True)
class SyzygyModule:
    """Syzygies of a tuple of homogeneous generators, complete up to `degree_bound`.

    Each vector s satisfies sum(s[i] * gens[i]) == 0; `degrees[k]` is the
    degree of the k-th vector (deg s_i + deg g_i, the same for every i).
    """

    gens: tuple[MultiPoly, ...]
    vectors: tuple[tuple[MultiPoly, ...], ...]
    degrees: tuple[int, ...]
    degree_bound: int

    def check(self) -> bool:
        R = self.gens[0].ring
        for s in self.vectors:
            tot = R.zero()
            for a, g in zip(s, self.gens):
                tot = tot + a * g
            if not tot.is_zero():
                return False
        return True


def syzygies(gens, degree_bound: int | None = None) -> SyzygyModule:
    """Syzygy module of homogeneous generators via a position-over-term Groebner basis.

    Component e_0 carries the generator values and e_1..e_m the bookkeeping
    of each generator; with e_0 dominating, basis elements free of e_0 are
    exactly a generating set of the syzygies (up to the degree bound).
    """
    gens = tuple(gens)
    if not gens:
        raise ValueError("need at least one generator")
    R = gens[0].ring
    if any(not g.is_homogeneous() or g.is_zero() for g in gens):
        raise ValueError("syzygies need nonzero homogeneous generators")
    if any(w != 1 for w in R.weights):
        raise ValueError("syzygies are implemented for the standard grading")
    m = len(gens)
    degs = [g.degree() for g in gens]
    if degree_bound is None:
        degree_bound = max(degs) + 3
    n = R.n
    pos_names = tuple(f"_e{i}" for i in range(m + 1))
    names = R.names + pos_names
    weights = (1,) * n + (0,) + tuple(degs)
    order = MonomialOrder((("lex", tuple(range(n, n + m + 1))), ("grevlex", tuple(range(n)))))
    M = make_ring(R.field, names, order, weights)
    e = [M.var(n + i) for i in range(m + 1)]
    vecs = []
    for i, g in enumerate(gens):
        vecs.append((g.to_ring(M) * e[0] + e[i + 1]).terms)
    G = _buchberger_terms(vecs, M, degree_bound=degree_bound,
                          module_vars=tuple(range(n, n + m + 1)))
    mask = M.exp_mask
    out = []
    out_deg = []
    for t in G:
        lm = max(t)
        if (lm >> (EXP_BITS * n)) & mask:
            continue
        comps = [dict() for _ in range(m)]
        for mono, c in t.items():
            ex = M.decode(mono)
            k = next(i for i in range(m) if ex[n + 1 + i])
            comps[k][R.encode(ex[:n])] = c
        vec = tuple(MultiPoly(R, comps[i]) for i in range(m))
        out.append(vec)
        out_deg.append(M.mdeg(lm))
    return SyzygyModule(gens, tuple(out), tuple(out_deg), degree_bound)


def hom_dim_degree_zero(I_gens, ambient_relations=(), degree_bound: int | None = None,
                        check_stability: bool = True) -> int:
    """dim Hom_R(I, R/I)_0 with R = S/(ambient_relations) and I generated by I_gens.

    The ambient relations must lie in the ideal generated by I_gens.  A
    homomorphism is a tuple (h_i) with h_i in (S/I)_{deg g_i} such that
    sum s_i h_i lies in I for every syzygy s of (g_1..g_m, relations),
    projected to its first m coordinates.
    """
    I_gens = tuple(I_gens)
    rel = tuple(ambient_relations)
    R = I_gens[0].ring
    F = R.field
    I = Ideal(list(I_gens) + list(rel), R)
    for r in rel:
        if not Ideal(I_gens, R).contains(r):
            raise ValueError("ambient relation does not lie in the ideal")
    G = I.groebner()
    reds = [(g.lm(), g.terms) for g in G]
    lead = [g.lm() for g in G]

    def standard(d):
        return [mono for mono in R.monomials_of_degree(d)
                if not any(R.divides(l, mono) for l in lead)]

    m = len(I_gens)
    degs = [g.degree() for g in I_gens]
    unknowns = []          # (generator index, standard monomial)
    for i in range(m):
        for mono in standard(degs[i]):
            unknowns.append((i, mono))

    def solve_for(bound):
        syz = syzygies(I_gens + rel, degree_bound=bound)
        rows = []
        for vec in syz.vectors:
            # images of each unknown under this syzygy, in normal form
            cols = []
            for i, mono in unknowns:
                s = vec[i]
                if s.is_zero():
                    cols.append({})
                    continue
                prod = {k + mono: c for k, c in s.terms.items()}
                cols.append(_reduce(prod, reds, R))
            monos = sorted({k for c in cols for k in c})
            for k in monos:
                rows.append([c.get(k, 0) for c in cols])
        return len(nullspace(F, rows, len(unknowns)))

    bound = degree_bound if degree_bound is not None else max(degs) + 3
    dim = solve_for(bound)
    if check_stability:
        again = solve_for(bound + 1)
        if again != dim:
            raise ResourceError(f"Hom dimension not stable at syzygy degree bound {bound}")
    return dim
