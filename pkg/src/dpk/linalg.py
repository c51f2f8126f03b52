"""Dense linear algebra over a finite field (rows are lists of encoded elements)."""

from __future__ import annotations

from functools import lru_cache

from .field import FieldCtx


def row_echelon(F: FieldCtx, rows: list[list[int]], ncols: int | None = None,
                reduced: bool = True) -> tuple[list[list[int]], list[int]]:
    """Row echelon form of a copy of `rows`; returns (nonzero rows, pivot columns)."""
    M = [list(r) for r in rows]
    if not M:
        return [], []
    ncols = len(M[0]) if ncols is None else ncols
    pivots: list[int] = []
    r = 0
    prime = F.k == 1
    p = F.p
    for c in range(ncols):
        piv = None
        for i in range(r, len(M)):
            if M[i][c]:
                piv = i
                break
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = F.inv(M[r][c])
        if prime:
            M[r] = [v * inv % p for v in M[r]]
        else:
            mul = F.mul_table[inv]
            M[r] = [mul[v] for v in M[r]]
        pr = M[r]
        targets = range(len(M)) if reduced else range(r + 1, len(M))
        for i in targets:
            if i == r:
                continue
            a = M[i][c]
            if a:
                if prime:
                    M[i] = [(x - a * y) % p for x, y in zip(M[i], pr)]
                else:
                    sub, row = F.sub_table, F.mul_table[a]
                    M[i] = [sub[x][row[y]] for x, y in zip(M[i], pr)]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(F: FieldCtx, rows: list[list[int]]) -> int:
    return len(row_echelon(F, rows, reduced=False)[1])


def nullspace(F: FieldCtx, rows: list[list[int]], ncols: int) -> list[list[int]]:
    """Basis of {v : rows * v = 0}."""
    E, piv = row_echelon(F, rows, ncols) if rows else ([], [])
    free = [c for c in range(ncols) if c not in set(piv)]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for r, pc in zip(E, piv):
            v[pc] = F.neg(r[fc])
        basis.append(v)
    return basis


def solve(F: FieldCtx, A: list[list[int]], b: list[int]) -> list[int] | None:
    """One solution of A v = b, or None when the system is inconsistent."""
    n = len(A[0]) if A else 0
    aug = [list(r) + [bi] for r, bi in zip(A, b)]
    E, piv = row_echelon(F, aug, n + 1)
    if n in piv:
        return None
    v = [0] * n
    for r, pc in zip(E, piv):
        v[pc] = r[n]
    return v


def mat_mul(F: FieldCtx, A: list[list[int]], B: list[list[int]]) -> list[list[int]]:
    cols = list(zip(*B))
    out = []
    for r in A:
        row = []
        for c in cols:
            s = 0
            for x, y in zip(r, c):
                if x and y:
                    s = F.add(s, F.mul(x, y))
            row.append(s)
        out.append(row)
    return out


def charpoly(F: FieldCtx, M: list[list[int]]) -> list[int]:
    """Characteristic polynomial det(t I - M), coefficients in ascending degree.

    Hessenberg reduction followed by the standard recurrence; O(n^3).
    """
    n = len(M)
    H = [list(r) for r in M]
    for m in range(1, n - 1):
        piv = None
        for i in range(m, n):
            if H[i][m - 1]:
                piv = i
                break
        if piv is None:
            continue
        if piv != m:
            H[m], H[piv] = H[piv], H[m]
            for r in H:
                r[m], r[piv] = r[piv], r[m]
        inv = F.inv(H[m][m - 1])
        for i in range(m + 1, n):
            u = F.mul(H[i][m - 1], inv)
            if u:
                H[i] = [F.sub(a, F.mul(u, b)) for a, b in zip(H[i], H[m])]
                for r in H:
                    r[m] = F.add(r[m], F.mul(u, r[i]))
    # p_k(t) = det of leading k x k block of (tI - H)
    polys: list[list[int]] = [[1]]
    for k in range(1, n + 1):
        a = H[k - 1][k - 1]
        pk = [0] + polys[k - 1]                       # t * p_{k-1}
        for i, c in enumerate(polys[k - 1]):
            pk[i] = F.sub(pk[i], F.mul(a, c))
        prod = 1
        for i in range(1, k):
            prod = F.mul(prod, H[k - i][k - i - 1])
            if not prod:
                break
            coef = F.mul(prod, H[k - i - 1][k - 1])
            for j, c in enumerate(polys[k - i - 1]):
                pk[j] = F.sub(pk[j], F.mul(coef, c))
        polys.append(pk)
    return polys[n]


def det(F: FieldCtx, M: list[list[int]]) -> int:
    n = len(M)
    A = [list(r) for r in M]
    d = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            d = F.neg(d)
        d = F.mul(d, A[c][c])
        inv = F.inv(A[c][c])
        for i in range(c + 1, n):
            u = F.mul(A[i][c], inv)
            if u:
                A[i] = [F.sub(a, F.mul(u, b)) for a, b in zip(A[i], A[c])]
    return d


# ---------------------------------------------------------------------------
# vectorized elimination (numpy), used for large homogeneous batches


@lru_cache(maxsize=8)
def _np_tables(F: FieldCtx):
    import numpy as np

    return (np.array(F.mul_table, dtype=np.int64), np.array(F.sub_table, dtype=np.int64))


def rref_array(F: FieldCtx, A):
    """Reduced row echelon form of an integer array of encoded elements.

    Returns (rows, pivot columns) as a numpy array and a list.  Prime fields
    use modular arithmetic directly; extension fields go through the
    field's addition and multiplication tables.
    """
    import numpy as np

    A = np.array(A, dtype=np.int64, copy=True)
    if A.size == 0:
        return A.reshape(0, A.shape[1] if A.ndim == 2 else 0), []
    nrows, ncols = A.shape
    prime = F.k == 1
    p = F.p
    if not prime:
        mul, sub = _np_tables(F)
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        inv = F.inv(int(A[r, c]))
        if prime:
            A[r] = (A[r] * inv) % p
        else:
            A[r] = mul[inv, A[r]]
        col = A[:, c].copy()
        col[r] = 0
        rows = np.nonzero(col)[0]
        if rows.size:
            if prime:
                A[rows] = (A[rows] - np.outer(col[rows], A[r])) % p
            else:
                A[rows] = sub[A[rows], mul[col[rows][:, None], A[r][None, :]]]
        pivots.append(c)
        r += 1
    return A[:r], pivots
