"""Exact linear algebra over a coefficient field"""

from fanodefect.exceptions import SingularMatrixError

def row_echelon(rows, field):
    """Return (echelon rows, pivot columns) by Gaussian elimination"""
    rows = [list(row) for row in rows]
    pivots = []
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(rows)) if not field.is_zero(rows[i][col])), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = field.inv(rows[rank][col])
        rows[rank] = [field.mul(inv, x) for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and not field.is_zero(rows[i][col]):
                factor = rows[i][col]
                rows[i] = [field.sub(x, field.mul(factor, y)) for x, y in zip(rows[i], rows[rank])]
        pivots.append(col)
        rank += 1
    return rows[:rank], pivots

def rank(rows, field) -> int:
    if not rows:
        return 0
    return len(row_echelon(rows, field)[1])

def determinant(rows, field):
    rows = [list(row) for row in rows]
    n = len(rows)
    det = field.one
    for col in range(n):
        pivot = next((i for i in range(col, n) if not field.is_zero(rows[i][col])), None)
        if pivot is None:
            return field.zero
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = field.neg(det)
        det = field.mul(det, rows[col][col])
        inv = field.inv(rows[col][col])
        for i in range(col + 1, n):
            if not field.is_zero(rows[i][col]):
                factor = field.mul(rows[i][col], inv)
                rows[i] = [field.sub(x, field.mul(factor, y)) for x, y in zip(rows[i], rows[col])]
    return det

def inverse(rows, field):
    n = len(rows)
    augmented = [list(row) + [field.one if i == j else field.zero for j in range(n)]
                 for i, row in enumerate(rows)]
    echelon, pivots = row_echelon(augmented, field)
    if pivots[:n] != list(range(n)):
        raise SingularMatrixError("Matrix is singular")
    return [tuple(row[n:]) for row in echelon]

def matmul(a, b, field):
    cols = list(zip(*b))
    out = []
    for row in a:
        entries = []
        for col in cols:
            acc = field.zero
            for x, y in zip(row, col):
                acc = field.add(acc, field.mul(x, y))
            entries.append(acc)
        out.append(tuple(entries))
    return out
