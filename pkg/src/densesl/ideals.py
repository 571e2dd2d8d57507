"""Maximal ideals of the ring of integers O of a number field.

An ideal above the rational prime p is stored as (p, f_j) where f_j is a
monic F_p-irreducible factor of the minimal polynomial of a generator theta
of O (theta = alpha unless the field is quadratic with Z[alpha] != O).
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd, isqrt

import sympy

from .nfield import NFElement, NumberField
from .polys import poly_factor_mod_p, pmod, prem, trim

PID_DISCRIMINANTS = (1, 2, 3, 7, 11, 19, 43, 67, 163)


class IdealError(ValueError):
    pass


def _theta_minpoly(F):
    if F.m == 2:
        theta = F.generator
        return (F.norm(theta), -F.trace(theta), 1)
    return F.minpoly


def theta_coords(a, F):
    """Coordinates of a in the basis 1, theta, ..., theta^(m-1)."""
    if F.m == 2:
        return F.to_integral_basis(a)
    return list(a.coeffs)


def _from_theta_poly(coeffs, F):
    theta = F.generator if F.m == 2 else F.alpha
    acc = F.zero()
    power = F.one()
    for c in coeffs:
        if c:
            acc = acc + power * c
        power = power * theta
    return acc


class MaximalIdeal:
    __slots__ = ("field", "p", "modpoly", "e", "k", "__dict__")

    def __init__(self, field, p, modpoly, e):
        self.field = field
        self.p = p
        self.modpoly = tuple(modpoly)
        self.e = e
        self.k = len(modpoly) - 1

    @property
    def norm(self):
        return self.p ** self.k

    @cached_property
    def gen2(self):
        if self.k == self.field.m:
            return self.field(self.p)
        return _from_theta_poly(list(self.modpoly), self.field)

    def contains(self, a):
        return ideal_contains(self, a)

    def residue_field(self):
        from .residue import ResidueField
        return ResidueField(self.p, list(self.modpoly))

    @cached_property
    def _key(self):
        return (self.p, self.modpoly)

    def sort_key(self):
        return (self.norm, self.p, tuple(self.gen2.coeffs))

    def __eq__(self, other):
        return isinstance(other, MaximalIdeal) and self._key == other._key and \
            self.field == other.field

    def __hash__(self):
        return hash(self._key)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def to_json(self):
        return {"p": self.p, "gen2": [_jsonable(c) for c in self.gen2.coeffs],
                "e": self.e, "k": self.k, "norm": self.norm}

    def label(self):
        """Single generator when one is found, else '(p, g)'."""
        g = single_generator(self)
        if g is not None:
            return str(g)
        return f"({self.p}, {self.gen2})"

    def __repr__(self):
        return f"MaximalIdeal({self.p}, {self.gen2}; e={self.e}, k={self.k})"


def _jsonable(c):
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    return c


def factor_rational_prime(p, F):
    """Maximal ideals above p with ramification indices and residue degrees."""
    return _factor_rational_prime(int(p), F)


@lru_cache(maxsize=4096)
def _factor_rational_prime(p, F):
    if not sympy.isprime(p):
        raise IdealError(f"{p} is not prime")
    if F.m != 2 and F.index % p == 0:
        raise IdealError(
            f"index-divisor unsupported: {p} divides [O : Z[alpha]] = {F.index}")
    factors = poly_factor_mod_p(list(_theta_minpoly(F)), p)
    ideals = [MaximalIdeal(F, p, fj, e) for fj, e in factors]
    ideals.sort(key=lambda I: [Fraction(c) for c in I.gen2.coeffs])
    return tuple(ideals)


def ideal_contains(I, a):
    from .congruence import reduce_element
    return reduce_element(a, I) == 0


def _prime_factors(n):
    n = abs(int(n))
    if n <= 1:
        return []
    return sorted(int(p) for p in sympy.factorint(n))


def pi_of(a, F=None, mu=1):
    """Maximal ideals of O[1/mu] containing a (a != 0)."""
    F = F or a.field
    if a.is_zero():
        raise IdealError("zero has infinitely many divisors")
    N = Fraction(F.norm(a))
    den = F.denominator(a)
    out = set()
    for p in _prime_factors(N.numerator):
        if mu % p == 0 or den % p == 0:
            continue
        for I in factor_rational_prime(p, F):
            if ideal_contains(I, a):
                out.add(I)
    return out


def common_ideals(elements, F, mu=1):
    """Maximal ideals of O[1/mu] containing every nonzero element in ``elements``.

    Works with a gcd of norm numerators so huge elements never need their
    norms factored.
    """
    elements = [a for a in elements if not a.is_zero()]
    if not elements:
        raise IdealError("zero has infinitely many divisors")
    g = 0
    for a in elements:
        g = gcd(g, Fraction(F.norm(a)).numerator)
        if g == 1:
            return set()
    out = set()
    for p in _prime_factors(g):
        if mu % p == 0 or any(F.denominator(a) % p == 0 for a in elements):
            continue
        for I in factor_rational_prime(p, F):
            if all(ideal_contains(I, a) for a in elements):
                out.add(I)
    return out


def ideals_up_to_norm(F, bound, mu=1):
    out = []
    for p in sympy.primerange(2, bound + 1):
        if mu % p == 0:
            continue
        if F.m != 2 and F.index % p == 0:
            continue
        for I in factor_rational_prime(p, F):
            if I.norm <= bound:
                out.append(I)
    return sorted(out)


def _canonical_key(F, x):
    # prefer a positive sqrt(d)-part, then the smallest such, then small rational part
    s0, s1 = (Fraction(c) for c in F.sqrt_d.coeffs)
    c0, c1 = (Fraction(c) for c in x.coeffs)
    v = c1 / s1
    u = c0 - v * s0
    return (v <= 0, abs(v), u < 0 if v == 0 else False, abs(u), u)


@lru_cache(maxsize=4096)
def single_generator(I):
    """A generator of I when O is a known imaginary quadratic PID, else None."""
    F = I.field
    if F.m != 2 or F.squarefree_d is None or F.squarefree_d >= 0:
        return None
    if -F.squarefree_d not in PID_DISCRIMINANTS:
        return None
    if I.k == 2:
        return F(I.p)
    # N(x + y theta) = x^2 + B x y + C y^2 with B = tr(theta), C = N(theta)
    theta = F.generator
    C = F.norm(theta)
    B = F.trace(theta)
    N = I.norm
    found = []
    ymax = isqrt(4 * N // (4 * C - B * B)) + 1
    for y in range(-ymax, ymax + 1):
        disc = B * B * y * y - 4 * (C * y * y - N)
        if disc < 0:
            continue
        r = isqrt(disc)
        if r * r != disc:
            continue
        for num in {-B * y + r, -B * y - r}:
            if num % 2:
                continue
            x = num // 2
            g = F(x) + theta * y
            if F.norm(g) == N and ideal_contains(I, g):
                found.append(g)
    if not found:
        return None
    return min(found, key=lambda g: _canonical_key(F, g))


def conjugate_ideal(I):
    """Image of I under the nontrivial automorphism of a quadratic field."""
    F = I.field
    g = F.conjugate(I.gen2)
    for J in factor_rational_prime(I.p, F):
        if ideal_contains(J, g):
            return J
    raise IdealError("conjugate ideal not found")


__all__ = [
    "IdealError", "MaximalIdeal", "factor_rational_prime", "ideal_contains", "pi_of",
    "common_ideals", "ideals_up_to_norm", "single_generator", "conjugate_ideal",
    "theta_coords", "poly_factor_mod_p", "NFElement", "NumberField", "pmod", "prem",
    "trim",
]
