"""Small exact linear algebra over the Scalar fraction field."""

from __future__ import annotations

from .scalar import ONE, ZERO, Scalar

__all__ = [
    "SingularMatrix",
    "identity",
    "mat_mul",
    "mat_vec",
    "transpose",
    "mat_sub",
    "mat_inv",
    "rref_solve",
    "matrix_rank",
    "is_zero_matrix",
]


class SingularMatrix(Exception):
    pass


Matrix = tuple


def identity(n: int) -> Matrix:
    return tuple(
        tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)
    )


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n, k, m = len(a), len(b), len(b[0])
    assert len(a[0]) == k
    return tuple(
        tuple(
            sum((a[i][s] * b[s][j] for s in range(k)), ZERO) for j in range(m)
        )
        for i in range(n)
    )


def mat_vec(a: Matrix, v) -> tuple:
    return tuple(sum((a[i][j] * v[j] for j in range(len(v))), ZERO) for i in range(len(a)))


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a))


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(
        tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b)
    )


def is_zero_matrix(a: Matrix) -> bool:
    return all(x.is_zero() for row in a for x in row)


def mat_inv(a: Matrix) -> Matrix:
    """Gauss-Jordan inverse; raises SingularMatrix when rank-deficient."""
    n = len(a)
    aug = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if not aug[r][col].is_zero()), None)
        if pivot is None:
            raise SingularMatrix(f"no pivot in column {col}")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = aug[col][col].inv()
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and not aug[r][col].is_zero():
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def rref_solve(rows, rhs):
    """Exact solve of rows * x = rhs.

    Returns (x, consistent): the pivot-based solution with free variables set
    to zero, and whether the system is consistent.
    """
    m = len(rows)
    n = len(rows[0]) if rows else 0
    aug = [list(r) + [rhs[i]] for i, r in enumerate(rows)]
    pivots = []
    row = 0
    for col in range(n):
        pivot = next((r for r in range(row, m) if not aug[r][col].is_zero()), None)
        if pivot is None:
            continue
        aug[row], aug[pivot] = aug[pivot], aug[row]
        inv = aug[row][col].inv()
        aug[row] = [x * inv for x in aug[row]]
        for r in range(m):
            if r != row and not aug[r][col].is_zero():
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[row])]
        pivots.append((row, col))
        row += 1
        if row == m:
            break
    consistent = all(
        aug[r][n].is_zero() or any(not aug[r][c].is_zero() for c in range(n))
        for r in range(m)
    )
    x = [ZERO] * n
    for r, c in pivots:
        x[c] = aug[r][n]
    return x, consistent


def matrix_rank(rows) -> int:
    _, _ = rows, None
    m = len(rows)
    n = len(rows[0]) if rows else 0
    work = [list(r) for r in rows]
    rank = 0
    for col in range(n):
        pivot = next((r for r in range(rank, m) if not work[r][col].is_zero()), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        inv = work[rank][col].inv()
        work[rank] = [x * inv for x in work[rank]]
        for r in range(m):
            if r != rank and not work[r][col].is_zero():
                f = work[r][col]
                work[r] = [x - f * y for x, y in zip(work[r], work[rank])]
        rank += 1
        if rank == m:
            break
    return rank
