"""Integer lattices: Hermite normal form, Z-span membership, indices."""

from __future__ import annotations

import math
from fractions import Fraction

from .linalg import qdet


def _xgcd(a, b):
    # returns (g, s, t) with s*a + t*b = g >= 0
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def hnf(rows):
    """Row-style Hermite normal form.

    Returns (H, U) with U square unimodular and U*rows = H.  Nonzero rows of
    H come first, have positive pivots moving strictly right, and entries
    above each pivot lie in [0, pivot).  Zero rows are left at the bottom.
    """
    A = [[int(x) for x in r] for r in rows]
    nr = len(A)
    nc = len(A[0]) if nr else 0
    U = [[int(i == j) for j in range(nr)] for i in range(nr)]
    r = 0
    for c in range(nc):
        if r == nr:
            break
        # fold every lower row into row r with extended gcds
        for i in range(r + 1, nr):
            if A[i][c] == 0:
                continue
            a, b = A[r][c], A[i][c]
            g, s, t = _xgcd(a, b)
            u, v = -b // g, a // g
            A[r], A[i] = ([s * x + t * y for x, y in zip(A[r], A[i])],
                          [u * x + v * y for x, y in zip(A[r], A[i])])
            U[r], U[i] = ([s * x + t * y for x, y in zip(U[r], U[i])],
                          [u * x + v * y for x, y in zip(U[r], U[i])])
        if A[r][c] == 0:
            continue
        if A[r][c] < 0:
            A[r] = [-x for x in A[r]]
            U[r] = [-x for x in U[r]]
        piv = A[r][c]
        for i in range(r):
            q = A[i][c] // piv
            if q:
                A[i] = [x - q * y for x, y in zip(A[i], A[r])]
                U[i] = [x - q * y for x, y in zip(U[i], U[r])]
        r += 1
    return A, U


def hnf_basis(rows):
    """Nonzero rows of the HNF."""
    if not rows:
        return []
    H, _ = hnf(rows)
    return [row for row in H if any(row)]


def int_det(M):
    return int(qdet(M))


class ZModuleBasis:
    """A Z-submodule of Z^d stored by its HNF basis."""

    def __init__(self, ambient_dim, rows=()):
        self.ambient_dim = ambient_dim
        self.basis = hnf_basis([list(r) for r in rows]) if rows else []
        self.index_in = None

    @property
    def rank(self):
        return len(self.basis)

    def _pivots(self):
        return [next(j for j, x in enumerate(r) if x) for r in self.basis]

    def coordinates(self, v):
        """Integer coordinates of v in the basis, or None when v is outside the span."""
        v = [int(x) for x in v]
        coords = []
        for row, p in zip(self.basis, self._pivots()):
            if any(v[:p]):
                return None
            q, rem = divmod(v[p], row[p])
            if rem:
                return None
            coords.append(q)
            if q:
                v = [x - q * y for x, y in zip(v, row)]
        return coords if not any(v) else None

    def contains(self, v):
        if any(Fraction(x).denominator != 1 for x in v):
            return False
        return self.coordinates(v) is not None

    def add(self, v):
        """Add v to the generating set; returns True when the span grew."""
        if self.contains(v):
            return False
        self.basis = hnf_basis(self.basis + [[int(x) for x in v]])
        return True

    def __eq__(self, other):
        return isinstance(other, ZModuleBasis) and self.basis == other.basis

    def __repr__(self):
        return f"ZModuleBasis(rank={self.rank}, basis={self.basis})"


def module_index(sub, sup):
    """[sup : sub] as |det w| for the change-of-basis matrix w; math.inf on rank drop."""
    coords = []
    for v in sub.basis:
        c = sup.coordinates(v)
        if c is None:
            raise ValueError("submodule is not contained in the supermodule")
        coords.append(c)
    if sub.rank != sup.rank:
        return math.inf
    if sub.rank == 0:
        return 1
    return abs(int_det(coords))


__all__ = ["hnf", "hnf_basis", "ZModuleBasis", "module_index", "int_det"]
