"""Exact linear algebra over Q, number fields and finite fields.

Field arithmetic is abstracted by a small ops object so the same echelon
code serves P (``NFElement``), Q (``Fraction``) and F_q (table-backed ints).
"""

from __future__ import annotations

from fractions import Fraction


def _frac_matrix(M):
    return [[Fraction(x) for x in row] for row in M]


def qdet(M):
    A = _frac_matrix(M)
    n = len(A)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = -det
        det *= A[c][c]
        inv = 1 / A[c][c]
        for r in range(c + 1, n):
            f = A[r][c] * inv
            if f:
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return det


def qinverse(M):
    n = len(M)
    A = [row + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(_frac_matrix(M))]
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        A[c], A[piv] = A[piv], A[c]
        inv = 1 / A[c][c]
        A[c] = [x * inv for x in A[c]]
        for r in range(n):
            if r != c and A[r][c]:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return [row[n:] for row in A]


def vec_mat(v, M):
    return [sum(Fraction(v[i]) * M[i][j] for i in range(len(v))) for j in range(len(M[0]))]


def mat_vec(M, v):
    return [sum(Fraction(M[i][j]) * v[j] for j in range(len(v))) for i in range(len(M))]


class PyFieldOps:
    """Field operations delegated to Python operators (Fraction, NFElement)."""

    def is_zero(self, a):
        return a == 0

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        return 1 / a if not hasattr(a, "inverse") else a.inverse()

    def normalize(self, a):
        return a


PY_OPS = PyFieldOps()


class EchelonSpan:
    """Incrementally maintained row-echelon basis of a subspace of E^N.

    ``add`` returns True when the vector was outside the span (and is then
    added).  Rows are kept with leading coefficient 1.
    """

    def __init__(self, ops=PY_OPS):
        self.ops = ops
        self.rows = []      # (pivot, row)

    def reduce(self, v):
        ops = self.ops
        v = list(v)
        for piv, row in self.rows:
            c = v[piv]
            if not ops.is_zero(c):
                v = [ops.sub(x, ops.mul(c, y)) for x, y in zip(v, row)]
        return v

    def contains(self, v):
        ops = self.ops
        return all(ops.is_zero(x) for x in self.reduce(v))

    def add(self, v):
        ops = self.ops
        v = self.reduce(v)
        piv = next((i for i, x in enumerate(v) if not ops.is_zero(x)), None)
        if piv is None:
            return False
        inv = ops.inv(v[piv])
        v = [ops.mul(inv, x) for x in v]
        # keep earlier rows reduced at the new pivot
        new_rows = []
        for p, row in self.rows:
            c = row[piv]
            if not ops.is_zero(c):
                row = [ops.sub(x, ops.mul(c, y)) for x, y in zip(row, v)]
            new_rows.append((p, row))
        new_rows.append((piv, v))
        new_rows.sort(key=lambda t: t[0])
        self.rows = new_rows
        return True

    @property
    def dim(self):
        return len(self.rows)


def rank(rows, ops=PY_OPS):
    span = EchelonSpan(ops)
    for r in rows:
        span.add(r)
    return span.dim


def nullspace(rows, ncols, ops, zero, one):
    """Basis of {x : rows . x = 0} over the field described by ``ops``."""
    span = EchelonSpan(ops)
    for r in rows:
        span.add(r)
    pivots = {p: row for p, row in span.rows}
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for f in free:
        x = [zero] * ncols
        x[f] = one
        for p, row in pivots.items():
            # row is fully reduced: x_p = -row[f]
            x[p] = ops.sub(zero, row[f])
        basis.append(x)
    return basis
