"""Matrices over a number field: tuples of tuples of NFElement."""

from __future__ import annotations


def mat_identity(F, n):
    return tuple(tuple(F.one() if i == j else F.zero() for j in range(n)) for i in range(n))


def mat_mul(A, B):
    n, k, m = len(A), len(B), len(B[0])
    return tuple(tuple(sum((A[i][l] * B[l][j] for l in range(1, k)), A[i][0] * B[0][j])
                       for j in range(m)) for i in range(n))


def mat_sub(A, B):
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(A, B))


def mat_scale(A, c):
    return tuple(tuple(x * c for x in row) for row in A)


def mat_transpose(A):
    return tuple(zip(*A))


def mat_trace(A):
    acc = A[0][0]
    for i in range(1, len(A)):
        acc = acc + A[i][i]
    return acc


def _eliminate(A, augment=None):
    n = len(A)
    F = A[0][0].field
    M = [list(row) + (list(augment[i]) if augment else []) for i, row in enumerate(A)]
    det = F.one()
    for c in range(n):
        piv = next((r for r in range(c, n) if not M[r][c].is_zero()), None)
        if piv is None:
            return F.zero(), None
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det = det * M[c][c]
        inv = M[c][c].inverse()
        M[c] = [x * inv for x in M[c]]
        for r in range(n):
            if r != c and not M[r][c].is_zero():
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return det, M


def mat_det(A):
    n = len(A)
    if n == 1:
        return A[0][0]
    if n == 2:
        return A[0][0] * A[1][1] - A[0][1] * A[1][0]
    return _eliminate(A)[0]


def mat_inverse(A):
    n = len(A)
    if n == 2:
        det = A[0][0] * A[1][1] - A[0][1] * A[1][0]
        if det == 1:
            return ((A[1][1], -A[0][1]), (-A[1][0], A[0][0]))
    F = A[0][0].field
    det, M = _eliminate(A, mat_identity(F, n))
    if M is None:
        raise ZeroDivisionError("singular matrix")
    return tuple(tuple(row[n:]) for row in M)


def mat_power(A, e):
    F = A[0][0].field
    if e < 0:
        A, e = mat_inverse(A), -e
    result = mat_identity(F, len(A))
    while e:
        if e & 1:
            result = mat_mul(result, A)
        e >>= 1
        if e:
            A = mat_mul(A, A)
    return result


def commutator(x, y):
    """[x, y] = x^-1 y^-1 x y."""
    return mat_mul(mat_mul(mat_inverse(x), mat_inverse(y)), mat_mul(x, y))


def is_identity(A):
    return all((x == 1) if i == j else x.is_zero()
               for i, row in enumerate(A) for j, x in enumerate(row))


def entries(A):
    return [x for row in A for x in row]


__all__ = ["mat_identity", "mat_mul", "mat_sub", "mat_scale", "mat_transpose", "mat_trace",
           "mat_det", "mat_inverse", "mat_power", "commutator", "is_identity", "entries"]
