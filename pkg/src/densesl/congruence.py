"""Congruence homomorphisms O[1/mu] -> O/I and O[1/mu] -> O/mO."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

import numpy as np

from .polys import prem


class ReductionError(ValueError):
    pass


@lru_cache(maxsize=4096)
def residue_field_of(I):
    return I.residue_field()


@lru_cache(maxsize=256)
def local_ring_of(m, F):
    from .residue import local_ring
    return local_ring(m, F)


def _coords_mod(a, n):
    from .ideals import theta_coords
    out = []
    for c in theta_coords(a, a.field):
        c = Fraction(c)
        if gcd(c.denominator, n) != 1:
            raise ReductionError("reduction undefined at this ideal: denominator not invertible")
        out.append(c.numerator * pow(c.denominator, -1, n) % n)
    return out


def reduce_element(a, I):
    """phi_I(a) as a ResidueField code."""
    F = residue_field_of(I)
    coeffs = _coords_mod(a, I.p)
    r = prem(coeffs, list(I.modpoly), I.p) if len(coeffs) > I.k else coeffs
    return F.code(r)


def reduce_element_mod(a, m):
    """phi_m(a) as a code of O/mO."""
    R = local_ring_of(m, a.field)
    return R.code(_coords_mod(a, m))


def reduce_matrix(M, I):
    return np.array([[reduce_element(x, I) for x in row] for row in M], dtype=np.int64)


def reduce_matrix_mod(M, m):
    return np.array([[reduce_element_mod(x, m) for x in row] for row in M], dtype=np.int64)


def _dedup(mats):
    seen = set()
    out = []
    for A in mats:
        key = A.tobytes()
        if key not in seen:
            seen.add(key)
            out.append(A)
    return out


def reduce_group(H, target):
    """Images of the inverse-closed generators of H at a MaximalIdeal or integer modulus."""
    if isinstance(target, int):
        if gcd(H.mu, target) != 1:
            raise ReductionError("reduction undefined: modulus shares a prime with mu")
        mats = [reduce_matrix_mod(g, target) for g in H.gens]
        ring = local_ring_of(target, H.field)
    else:
        if H.mu % target.p == 0:
            raise ReductionError("reduction undefined at this ideal")
        mats = [reduce_matrix(g, target) for g in H.gens]
        ring = residue_field_of(target)
    if not mats:
        mats = [np.eye(H.n, dtype=np.int64) * ring.one]
    return _dedup(mats)


class ReductionMap:
    """phi_I or phi_m bundled with its target ring."""

    def __init__(self, field, target, mu=1):
        self.field = field
        self.mu = mu
        self.target = target
        if isinstance(target, int):
            self.ring = local_ring_of(target, field)
            self.root_image = None
        else:
            if mu % target.p == 0:
                raise ReductionError("reduction undefined at this ideal")
            self.ring = residue_field_of(target)
            self.root_image = reduce_element(field.alpha, target)

    def __call__(self, a):
        a = self.field(a)
        if isinstance(self.target, int):
            return reduce_element_mod(a, self.target)
        return reduce_element(a, self.target)

    def matrix(self, M):
        if isinstance(self.target, int):
            return reduce_matrix_mod(M, self.target)
        return reduce_matrix(M, self.target)


__all__ = [
    "ReductionError", "ReductionMap", "reduce_element", "reduce_element_mod",
    "reduce_matrix", "reduce_matrix_mod", "reduce_group", "residue_field_of", "local_ring_of",
]
