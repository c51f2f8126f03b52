"""Hilbert series data of homogeneous ideals from their leading monomials."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .groebner import Ideal
from .linalg import rank
from .ring import MultiPoly, Ring

# integer polynomials in t are coefficient lists, ascending


def _padd(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]


def _pmul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _shift(a, e):
    return [0] * e + list(a)


def _trim(a):
    a = list(a)
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def _minimalize(gens: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    gens = sorted(set(gens), key=sum)
    out: list[tuple[int, ...]] = []
    for g in gens:
        if not any(all(a <= b for a, b in zip(h, g)) for h in out):
            out.append(g)
    return out


def _numerator(gens: list[tuple[int, ...]], weights: tuple[int, ...]) -> list[int]:
    """K-polynomial of S/(gens): numerator of the Hilbert series over prod (1 - t^w_i)."""
    gens = _minimalize(gens)
    if not gens:
        return [1]
    if any(sum(g) == 0 for g in gens):
        return [0]

    def wdeg(e):
        return sum(a * w for a, w in zip(e, weights))

    # pairwise coprime generators: product formula
    support = [frozenset(i for i, a in enumerate(g) if a) for g in gens]
    seen: set[int] = set()
    coprime = True
    for s in support:
        if seen & s:
            coprime = False
            break
        seen |= s
    if coprime:
        out = [1]
        for g in gens:
            out = _pmul(out, _padd([1], _shift([-1], wdeg(g))))
        return out
    # pivot on the most frequent variable at a median exponent
    # (taken from mixed generators only, so the pivot is never already in the ideal)
    n = len(gens[0])
    mixed = [g for g, s in zip(gens, support) if len(s) > 1]
    counts = [sum(1 for g in mixed if g[i]) for i in range(n)]
    v = max(range(n), key=lambda i: counts[i])
    exps = sorted(g[v] for g in mixed if g[v])
    e = exps[len(exps) // 2]
    piv = tuple(e if i == v else 0 for i in range(n))
    plus = gens + [piv]
    colon = [tuple(max(a - b, 0) for a, b in zip(g, piv)) for g in gens]
    return _trim(_padd(_numerator(plus, weights), _shift(_numerator(colon, weights), wdeg(piv))))


def _binom_poly(shift: int, D: int) -> list[Fraction]:
    """Coefficients in n of binomial(n - shift + D - 1, D - 1)."""
    poly = [Fraction(1)]
    for j in range(1, D):
        # multiply by (n - shift + j) / j
        c0 = Fraction(j - shift, j)
        c1 = Fraction(1, j)
        nxt = [Fraction(0)] * (len(poly) + 1)
        for i, a in enumerate(poly):
            nxt[i] += a * c0
            nxt[i + 1] += a * c1
        poly = nxt
    return poly


@dataclass(frozen=True)
class HilbertData:
    """Hilbert series N(t)/(1-t)^n of S/I, with the derived invariants.

    `dim` is the projective dimension (-1 for an irrelevant ideal) and
    `hilbert_poly` lists rational coefficients in ascending powers of n.
    """

    numerator: tuple[int, ...]
    nvars: int
    dim: int
    degree: int
    reduced_numerator: tuple[int, ...]
    hilbert_poly: tuple[Fraction, ...]

    def hilbert_function(self, d: int) -> int:
        n = self.nvars
        if d < 0:
            return 0
        return sum(c * comb(d - k + n - 1, n - 1) for k, c in enumerate(self.numerator)
                   if d - k >= 0)

    def hilbert_poly_value(self, d: int) -> Fraction:
        return sum((c * d ** i for i, c in enumerate(self.hilbert_poly)), Fraction(0))

    def hilbert_poly_str(self, var: str = "n") -> str:
        parts = []
        for i in range(len(self.hilbert_poly) - 1, -1, -1):
            c = self.hilbert_poly[i]
            if c == 0:
                continue
            cs = str(c) if c.denominator == 1 else f"({c})"
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            if mono and c == 1:
                parts.append(mono)
            elif mono and c == -1:
                parts.append("-" + mono)
            else:
                parts.append(cs + mono)
        s = " + ".join(parts) if parts else "0"
        return s.replace("+ -", "- ")


def hilbert_from_numerator(num: list[int], nvars: int) -> HilbertData:
    num = _trim(num)
    red = list(num)
    D = nvars
    while D > 0 and sum(red) == 0 and any(red):
        # divide by (1 - t)
        q = []
        acc = 0
        for c in red[:-1]:
            acc += c
            q.append(acc)
        red = q if q else [0]
        D -= 1
    if not any(red):
        return HilbertData(tuple(num), nvars, -1, 0, (0,), (Fraction(0),))
    degree = sum(red)
    hp = [Fraction(0)]
    if D > 0:
        hp = [Fraction(0)] * D
        for k, c in enumerate(red):
            if c:
                for i, a in enumerate(_binom_poly(k, D)):
                    hp[i] += c * a
        while len(hp) > 1 and hp[-1] == 0:
            hp.pop()
    return HilbertData(tuple(num), nvars, D - 1, degree, tuple(red), tuple(hp))


def hilbert(I: Ideal) -> HilbertData:
    """Hilbert data of S/I for homogeneous I (standard grading)."""
    R = I.ring
    if any(w != 1 for w in R.weights):
        raise ValueError("Hilbert data is implemented for the standard grading")
    if not I.is_homogeneous():
        raise ValueError("Hilbert data needs a homogeneous ideal")
    G = I.groebner()
    lead = [R.decode(g.lm()) for g in G]
    return hilbert_from_numerator(_numerator(lead, R.weights), R.n)


def graded_piece_dim(I: Ideal, d: int) -> int:
    """dim_k I_d."""
    R = I.ring
    return comb(d + R.n - 1, R.n - 1) - hilbert(I).hilbert_function(d)


def _coeff_rows(polys: list[MultiPoly], basis: dict[int, int]) -> list[list[int]]:
    rows = []
    for f in polys:
        r = [0] * len(basis)
        for m, c in f.terms.items():
            r[basis[m]] = c
        rows.append(r)
    return rows


def degree_piece_span(gens: list[MultiPoly], R: Ring, d: int) -> list[MultiPoly]:
    """Spanning set of (gens)_d: all monomial multiples landing in degree d."""
    out = []
    for g in gens:
        e = d - g.degree()
        if e < 0:
            continue
        for m in R.monomials_of_degree(e):
            out.append(g.mul_monomial(m))
    return out


def minimal_generator_degrees(I: Ideal) -> list[int]:
    """Degrees (with multiplicity) of a minimal homogeneous generating set."""
    R = I.ring
    G = [g.to_ring(R) for g in I.groebner()]
    if not G:
        return []
    top = max(g.degree() for g in G)
    out: list[int] = []
    for d in range(min(g.degree() for g in G), top + 1):
        basis = {m: i for i, m in enumerate(R.monomials_of_degree(d))}
        full = rank(R.field, _coeff_rows(degree_piece_span(G, R, d), basis))
        lower = [g for g in G if g.degree() < d]
        below = rank(R.field, _coeff_rows(degree_piece_span(lower, R, d), basis)) if lower else 0
        out.extend([d] * (full - below))
    return out
