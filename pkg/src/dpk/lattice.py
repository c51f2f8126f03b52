"""Integer lattices: K_{a,b} discriminants, Smith normal form, discriminant groups, Euler numerology.

All arithmetic uses Python integers, so intermediate coefficient growth is exact.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd

Matrix = list[list[int]]


class LatticeError(ValueError):
    """Degenerate or inconsistent lattice data."""


# ---------------------------------------------------------------------------
# integer matrices


def _identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    if not A or not B:
        return [[0] * (len(B[0]) if B else 0) for _ in A]
    cols = list(zip(*B))
    return [[sum(x * y for x, y in zip(r, c)) for c in cols] for r in A]


def transpose(A: Matrix) -> Matrix:
    return [list(r) for r in zip(*A)]


def int_det(A: Matrix) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(r) for r in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if M[i][k]), None)
            if piv is None:
                return 0
            M[k], M[piv] = M[piv], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


@dataclass(frozen=True)
class SmithForm:
    """U * M * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... ."""

    matrix: tuple[tuple[int, ...], ...]
    diagonal: tuple[int, ...]
    U: tuple[tuple[int, ...], ...]
    V: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)

    def verify(self) -> bool:
        M = [list(r) for r in self.matrix]
        U = [list(r) for r in self.U]
        V = [list(r) for r in self.V]
        D = mat_mul(mat_mul(U, M), V)
        m, n = len(M), len(M[0]) if M else 0
        for i in range(m):
            for j in range(n):
                want = self.diagonal[i] if i == j and i < len(self.diagonal) else 0
                if D[i][j] != want:
                    return False
        nz = [d for d in self.diagonal if d]
        if any(d < 0 for d in self.diagonal):
            return False
        if any(nz[i + 1] % nz[i] for i in range(len(nz) - 1)):
            return False
        if self.rank < len(self.diagonal) and any(self.diagonal[self.rank:]):
            return False
        return abs(int_det(U)) == 1 and abs(int_det(V)) == 1


def smith_normal_form(M: Matrix) -> SmithForm:
    """Smith normal form with unimodular transformation certificate."""
    A = [list(map(int, r)) for r in M]
    m = len(A)
    n = len(A[0]) if m else 0
    U = _identity(m)
    V = _identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for R in (A, V):
            for r in R:
                r[i], r[j] = r[j], r[i]

    def add_row(dst, src, c):   # row_dst += c * row_src
        A[dst] = [x + c * y for x, y in zip(A[dst], A[src])]
        U[dst] = [x + c * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, c):   # col_dst += c * col_src
        for R in (A, V):
            for r in R:
                r[dst] += c * r[src]

    t = 0
    while t < min(m, n):
        while True:
            # pivot: smallest nonzero entry of the remaining block; choosing it
            # afresh after every sweep keeps the entries from swelling
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // A[t][t]))
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // A[t][t]))
            if any(A[i][t] for i in range(t + 1, m)) or any(A[t][j] for j in range(t + 1, n)):
                continue
            # the pivot must divide the rest of the block
            bad = next((i for i in range(t + 1, m) for j in range(t + 1, n)
                        if A[i][j] % A[t][t]), None)
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] == 0:
            break
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    diag = tuple(A[i][i] for i in range(min(m, n)))
    return SmithForm(tuple(map(tuple, M)), diag, tuple(map(tuple, U)), tuple(map(tuple, V)))


def integer_kernel(A: Matrix, ncols: int | None = None) -> Matrix:
    """Basis (as rows) of the saturated lattice {x in Z^n : A x = 0}."""
    n = ncols if ncols is not None else (len(A[0]) if A else 0)
    if not A:
        return _identity(n)
    S = smith_normal_form(A)
    r = S.rank
    return [[S.V[i][j] for i in range(n)] for j in range(r, n)]


# ---------------------------------------------------------------------------
# lattices


@dataclass(frozen=True)
class GramLattice:
    """Integral lattice given by a symmetric Gram matrix."""

    gram: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        g = self.gram
        if any(len(r) != len(g) for r in g):
            raise LatticeError("Gram matrix must be square")
        if any(g[i][j] != g[j][i] for i in range(len(g)) for j in range(i)):
            raise LatticeError("Gram matrix must be symmetric")

    @classmethod
    def of(cls, rows) -> "GramLattice":
        return cls(tuple(tuple(int(x) for x in r) for r in rows))

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def det(self) -> int:
        return int_det([list(r) for r in self.gram])

    @property
    def is_nondegenerate(self) -> bool:
        return self.det != 0

    @property
    def is_even(self) -> bool:
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    def dot(self, u, v) -> int:
        return sum(u[i] * self.gram[i][j] * v[j]
                   for i in range(self.rank) for j in range(self.rank) if u[i] and v[j])

    def direct_sum(self, other: "GramLattice") -> "GramLattice":
        n, m = self.rank, other.rank
        rows = [list(r) + [0] * m for r in self.gram] + [[0] * n + list(r) for r in other.gram]
        return GramLattice.of(rows)


@dataclass(frozen=True)
class DiscriminantGroup:
    """L^*/L as a product of cyclic groups Z/d_1 + Z/d_2 + ..., d_1 | d_2 | ...."""

    invariants: tuple[int, ...]

    @property
    def order(self) -> int:
        out = 1
        for d in self.invariants:
            out *= d
        return out

    def __str__(self) -> str:
        return " + ".join(f"Z/{d}" for d in self.invariants) if self.invariants else "0"


def discriminant_group(L: GramLattice) -> DiscriminantGroup:
    if not L.is_nondegenerate:
        raise LatticeError("discriminant group of a degenerate lattice")
    S = smith_normal_form([list(r) for r in L.gram])
    return DiscriminantGroup(tuple(d for d in S.diagonal if d > 1))


def orthogonal_complement(L: GramLattice, vectors) -> GramLattice:
    """Gram matrix of {x in L : x.v = 0 for all v}, on a saturated kernel basis."""
    G = [list(r) for r in L.gram]
    vectors = [list(v) for v in vectors]
    if not vectors:
        return L
    A = mat_mul(vectors, G)
    K = integer_kernel(A, L.rank)
    return GramLattice.of(mat_mul(mat_mul(K, G), transpose(K)))


A2 = GramLattice.of([[2, 1], [1, 2]])
U = GramLattice.of([[0, 1], [1, 0]])
E8 = GramLattice.of([
    [2, -1, 0, 0, 0, 0, 0, 0],
    [-1, 2, -1, 0, 0, 0, 0, 0],
    [0, -1, 2, -1, 0, 0, 0, -1],
    [0, 0, -1, 2, -1, 0, 0, 0],
    [0, 0, 0, -1, 2, -1, 0, 0],
    [0, 0, 0, 0, -1, 2, -1, 0],
    [0, 0, 0, 0, 0, -1, 2, 0],
    [0, 0, -1, 0, 0, 0, 0, 2],
])


def primitive_cohomology_lattice() -> GramLattice:
    """The even lattice A2 + U^2 + E8^2 (orthogonal complement of h^2)."""
    return A2.direct_sum(U).direct_sum(U).direct_sum(E8).direct_sum(E8)


# ---------------------------------------------------------------------------
# the rank-three overlattices K_{a,b}


def gram_K(a: int, b: int) -> GramLattice:
    """Gram matrix on (h^2, S, Sigma)."""
    return GramLattice.of([[3, 6, a], [6, 18, 1], [a, 1, b]])


def delta(a: int, b: int) -> int:
    return -3 + 12 * a - 18 * a * a + 18 * b


def normalize_sigma(a: int, b: int) -> tuple[int, int]:
    """Replace Sigma by Sigma + m(3h^2 - S) so that a lies in {-1, 0, 1}."""
    a2 = ((a + 1) % 3) - 1
    m = (a2 - a) // 3
    return a2, b + 2 * m * (3 * a - 1) + 9 * m * m


def evenness_check(a: int, b: int) -> bool:
    """Whether the orthogonal complement of h^2 in K_{a,b} is even."""
    L = gram_K(a, b)
    C = orthogonal_complement(L, [(1, 0, 0)])
    if C.rank != 2 or not C.is_nondegenerate:
        raise LatticeError("degenerate complement of h^2")
    return C.is_even


@dataclass(frozen=True)
class AdmissibleDiscriminants:
    """Positive discriminants of normalized even-complement K_{a,b}, with witnesses."""

    bound: int
    witnesses: tuple[tuple[int, int, int], ...]    # (delta, a, b)
    warning: str

    @property
    def values(self) -> tuple[int, ...]:
        return tuple(d for d, _, _ in self.witnesses)


SMALL_DELTA_WARNING = ("finitely many small discriminants may not define divisors; "
                       "the excluded set is not determined here")


def admissible_discriminants(max_delta: int) -> AdmissibleDiscriminants:
    """Enumerate normalized (a, b), a in {-1,0,1}, a = b mod 2, with 0 < delta <= max_delta.

    Every normalized pair is visited (delta grows linearly in b), so the
    witness uniqueness and the residue class 9 mod 12 are checked, not assumed.
    """
    if max_delta < 9:
        raise ValueError("max must be at least 9")
    found: dict[int, list[tuple[int, int]]] = {}
    for a in (-1, 0, 1):
        # delta(a, b) > 0 forces 18 b > 3 - 12 a + 18 a^2
        b = (3 - 12 * a + 18 * a * a) // 18
        while delta(a, b) <= max_delta:
            if (a - b) % 2 == 0 and delta(a, b) > 0:
                found.setdefault(delta(a, b), []).append((a, b))
            b += 1
    for d, ws in found.items():
        if len(ws) != 1:
            raise LatticeError(f"discriminant {d} has {len(ws)} normalized witnesses")
        if d % 12 != 9:
            raise LatticeError(f"discriminant {d} is not 9 mod 12")
    expected = set(range(9, max_delta + 1, 12))
    if set(found) != expected:
        raise LatticeError("admissible discriminants differ from 9 mod 12")
    wit = tuple((d, *found[d][0]) for d in sorted(found))
    return AdmissibleDiscriminants(max_delta, wit, SMALL_DELTA_WARNING)


# ---------------------------------------------------------------------------
# the Lambda(-1) witness


@dataclass(frozen=True)
class LabellingWitness:
    """A primitive vector v of the A2 + U^2 part with v^2 = 6 and divisibility 1."""

    vector: tuple[int, ...]
    complement_rank: int
    complement_det: int
    group: DiscriminantGroup
    complement_even: bool


def labelling_witness(bound: int = 3, square: int = 6) -> LabellingWitness:
    """First vector in lexicographic order with |c| <= bound; its complement in A2+U^2+E8^2."""
    small = A2.direct_sum(U).direct_sum(U)
    full = primitive_cohomology_lattice()
    rng = range(-bound, bound + 1)
    for v in itertools.product(rng, repeat=small.rank):
        if not any(v) or small.dot(v, v) != square:
            continue
        row = [sum(v[i] * small.gram[i][j] for i in range(small.rank)) for j in range(small.rank)]
        div = 0
        for x in row:
            div = gcd(div, x)
        if div != 1:
            continue
        g = 0
        for x in v:
            g = gcd(g, x)
        if g != 1:
            continue
        w = list(v) + [0] * (full.rank - small.rank)
        C = orthogonal_complement(full, [w])
        return LabellingWitness(tuple(v), C.rank, C.det, discriminant_group(C), C.is_even)
    raise LatticeError("no witness in the search region")


# ---------------------------------------------------------------------------
# intersection numbers and Euler characteristics


def surface_self_intersection(h2: int, hK: int, K2: int, chi_top: int) -> int:
    """Self-intersection of a smooth surface in a cubic fourfold."""
    return 6 * h2 + 3 * hK + K2 - chi_top


@dataclass(frozen=True)
class FibrationNumerology:
    """Curve degrees and Euler characteristics of the discriminant strata."""

    d_I: int
    d_II: int
    b_I: int
    b_II: int
    b_III: int
    b_IV: int


def euler_general(chi_P: int, n: FibrationNumerology) -> int:
    return 6 * chi_P - n.b_I - n.b_II - 2 * n.b_III - 2 * n.b_IV


def euler_p2(d_I: int, d_II: int, b_IV: int) -> int:
    return 14 + (d_I - 1) * (d_I - 2) + (d_II - 1) * (d_II - 2) - 3 * b_IV


def derived_strata(d_I: int, d_II: int, b_IV: int) -> FibrationNumerology:
    """Strata Euler numbers for a smooth B_I meeting a cuspidal B_II transversally.

    chi(smooth curve) = 2 - (d-1)(d-2); a curve with only cusps has the Euler
    number of its normalization; b_III = d_I d_II points by Bezout.
    """
    if b_IV < 0 or 2 * b_IV > (d_II - 1) * (d_II - 2):
        raise ValueError("too many cusps for the degree")
    chi_I = 2 - (d_I - 1) * (d_I - 2)
    chi_II = 2 - (d_II - 1) * (d_II - 2) + 2 * b_IV
    b_III = d_I * d_II
    return FibrationNumerology(d_I, d_II, chi_I - b_III, chi_II - b_III - b_IV, b_III, b_IV)


__all__ = [
    "A2", "AdmissibleDiscriminants", "DiscriminantGroup", "E8", "FibrationNumerology",
    "GramLattice", "LabellingWitness", "LatticeError", "SMALL_DELTA_WARNING", "SmithForm", "U",
    "admissible_discriminants", "delta", "derived_strata", "discriminant_group", "euler_general",
    "euler_p2", "evenness_check", "gram_K", "int_det", "integer_kernel", "labelling_witness",
    "normalize_sigma", "orthogonal_complement", "primitive_cohomology_lattice",
    "smith_normal_form", "surface_self_intersection",
]
