"""Smith normal form over the integers with unimodular transforms."""
from __future__ import annotations

from .ring import RingTag
from .sparse import SparseMatrix


def _min_nonzero(a, t, rows, cols):
    best = None
    for i in rows:
        row = a[i]
        for j in cols:
            v = row[j]
            if v and (best is None or abs(v) < best[0]):
                best = (abs(v), i, j)
                if best[0] == 1:
                    return best
    return best


def smith_normal_form_dense(m: list[list[int]]):
    """Return (U, D, V) as dense lists with U*m*V = D.

    Pivots are chosen by minimal absolute value, ties broken by lowest row
    then lowest column.
    """
    nr = len(m)
    nc = len(m[0]) if nr else 0
    a = [list(map(int, r)) for r in m]
    u = [[int(i == j) for j in range(nr)] for i in range(nr)]
    v = [[int(i == j) for j in range(nc)] for i in range(nc)]

    def swap_rows(i, k):
        a[i], a[k] = a[k], a[i]
        u[i], u[k] = u[k], u[i]

    def swap_cols(j, k):
        for r in a:
            r[j], r[k] = r[k], r[j]
        for r in v:
            r[j], r[k] = r[k], r[j]

    def add_row(src, dst, q):  # row dst += q * row src
        ra, rd = a[src], a[dst]
        for j in range(nc):
            if ra[j]:
                rd[j] += q * ra[j]
        ua, ud = u[src], u[dst]
        for j in range(nr):
            if ua[j]:
                ud[j] += q * ua[j]

    def add_col(src, dst, q):  # col dst += q * col src
        for r in a:
            if r[src]:
                r[dst] += q * r[src]
        for r in v:
            if r[src]:
                r[dst] += q * r[src]

    t = 0
    while t < min(nr, nc):
        best = _min_nonzero(a, t, range(t, nr), range(t, nc))
        if best is None:
            break
        _, i, j = best
        if i != t:
            swap_rows(i, t)
        if j != t:
            swap_cols(j, t)
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, nr):
                if a[i][t]:
                    add_row(t, i, -(a[i][t] // p))
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, nc):
                if a[t][j]:
                    add_col(t, j, -(a[t][j] // p))
                    if a[t][j]:
                        dirty = True
            if dirty:
                cand = [(abs(a[i][t]), i, t) for i in range(t + 1, nr) if a[i][t]]
                cand += [(abs(a[t][j]), t, j) for j in range(t + 1, nc) if a[t][j]]
                _, i, j = min(cand)
                if i != t:
                    swap_rows(i, t)
                if j != t:
                    swap_cols(j, t)
                continue
            bad = next(((i, j) for i in range(t + 1, nr) for j in range(t + 1, nc)
                        if a[i][j] % p), None)
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return u, a, v


def smith_normal_form(m: SparseMatrix):
    if m.ring is not RingTag.Z:
        raise ValueError("Smith normal form is computed over the integers")
    u, d, v = smith_normal_form_dense(m.to_dense())
    return (SparseMatrix.from_dense(u) if u else SparseMatrix(0, 0),
            SparseMatrix(m.rows, m.cols, {(i, j): x for i, r in enumerate(d) for j, x in enumerate(r) if x}),
            SparseMatrix.from_dense(v) if v else SparseMatrix(0, 0))


def invariant_factors(m) -> list[int]:
    """Nonzero diagonal of the Smith form of a dense or sparse integer matrix."""
    dense = m.to_dense() if isinstance(m, SparseMatrix) else m
    if not dense or not dense[0]:
        return []
    _, d, _ = smith_normal_form_dense(dense)
    return [d[i][i] for i in range(min(len(d), len(d[0]))) if d[i][i]]
