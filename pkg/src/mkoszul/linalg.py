"""Exact dense linear algebra on lists of rows.

Every routine takes the scalar field explicitly and never rounds.  Matrices
are ``list[list[scalar]]`` in row-major order; vectors are flat lists.
"""

from __future__ import annotations

from .field import Field


def as_matrix(rows, field: Field) -> list[list]:
    return [[field(x) for x in row] for row in rows]


def rref(rows, field: Field, ncols: int | None = None):
    """Reduced row echelon form.

    Returns ``(rows, pivots)`` where zero rows are dropped, every pivot is 1
    and pivot columns are zero in all other rows.
    """
    mat = [[field(x) for x in row] for row in rows]
    if not mat:
        return [], []
    if ncols is None:
        ncols = len(mat[0])
    pivots = []
    r = 0
    nrows = len(mat)
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if mat[i][c]:
                piv = i
                break
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        prow = mat[r]
        inv = field.one / prow[c]
        if inv != 1:
            for j in range(c, ncols):
                if prow[j]:
                    prow[j] = prow[j] * inv
        nz = [j for j in range(c, ncols) if prow[j]]
        for i in range(nrows):
            if i == r:
                continue
            row = mat[i]
            f = row[c]
            if f:
                for j in nz:
                    row[j] = row[j] - f * prow[j]
        pivots.append(c)
        r += 1
    return mat[:r], pivots


def rank(rows, field: Field, ncols: int | None = None) -> int:
    return len(rref(rows, field, ncols)[1])


def nullspace(rows, ncols: int, field: Field) -> list[list]:
    """Basis of ``{v : M v = 0}`` read off the RREF (one vector per free column)."""
    red, pivots = rref(rows, field, ncols)
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [field.zero] * ncols
        v[f] = field.one
        for row, p in zip(red, pivots):
            if row[f]:
                v[p] = -row[f]
        basis.append(v)
    return basis


def solve(A, b, field: Field, ncols: int | None = None):
    """Solve ``A x = b``.

    Returns ``(particular, kernel_basis)``; ``particular`` is ``None`` when the
    system is inconsistent.  The particular solution sets every free variable
    to zero.
    """
    if ncols is None:
        ncols = len(A[0]) if A else 0
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    red, pivots = rref(aug, field, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None, nullspace(A, ncols, field)
    x = [field.zero] * ncols
    for row, p in zip(red, pivots):
        x[p] = row[ncols]
    return x, nullspace(A, ncols, field)


def identity(n: int, field: Field) -> list[list]:
    return [[field.one if i == j else field.zero for j in range(n)] for i in range(n)]


def matmul(A, B, field: Field) -> list[list]:
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    out = []
    for row in A:
        acc = [field.zero] * cols
        for k in range(inner):
            a = row[k]
            if a:
                brow = B[k]
                for j in range(cols):
                    if brow[j]:
                        acc[j] = acc[j] + a * brow[j]
        out.append(acc)
    return out


def matvec(A, v, field: Field) -> list:
    out = []
    for row in A:
        s = field.zero
        for a, x in zip(row, v):
            if a and x:
                s = s + a * x
        out.append(s)
    return out


def transpose(A) -> list[list]:
    return [list(col) for col in zip(*A)]


def inverse(A, field: Field) -> list[list]:
    n = len(A)
    aug = [list(row) + e for row, e in zip(A, identity(n, field))]
    red, pivots = rref(aug, field, 2 * n)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in red[:n]]


def det(A, field: Field):
    """Determinant by Gaussian elimination over the field."""
    n = len(A)
    mat = [[field(x) for x in row] for row in A]
    result = field.one
    for c in range(n):
        piv = next((i for i in range(c, n) if mat[i][c]), None)
        if piv is None:
            return field.zero
        if piv != c:
            mat[c], mat[piv] = mat[piv], mat[c]
            result = -result
        p = mat[c][c]
        result = result * p
        for i in range(c + 1, n):
            f = mat[i][c] / p
            if f:
                for j in range(c, n):
                    mat[i][j] = mat[i][j] - f * mat[c][j]
    return result


def is_zero_matrix(A) -> bool:
    return all(not x for row in A for x in row)
