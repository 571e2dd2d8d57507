"""Finite rings (Z/m)[x]/(g): residue fields F_{p^k} and quotients O/mO.

Ring elements are encoded as integers 0 .. size-1 (base-m digits are the
polynomial coefficients, lowest degree first).  All arithmetic accepts numpy
arrays of such codes so whole batches of matrices can be multiplied at once.
"""

from __future__ import annotations

from functools import cached_property, lru_cache
from math import gcd

import numpy as np
import sympy

from .polys import is_irreducible_mod_p, pmod

TABLE_LIMIT = 2048


class RingError(ValueError):
    pass


class QuotientRing:
    """(Z/m)[x]/(g) for a monic g of degree k >= 1."""

    def __init__(self, modulus, poly):
        poly = [int(c) % modulus for c in poly]
        if len(poly) < 2 or poly[-1] != 1 % modulus:
            raise RingError("modulus polynomial must be monic of degree >= 1")
        self.modulus = int(modulus)
        self.poly = tuple(poly)
        self.k = len(poly) - 1
        self.size = self.modulus ** self.k
        self.zero = 0
        self.one = 1 % self.size if self.size > 1 else 0
        m, k = self.modulus, self.k
        # x^(k+j) mod g for j = 0 .. k-2, as coefficient rows
        red = []
        cur = [0] * k
        cur[k - 1] = 1
        for _ in range(max(k - 1, 0)):
            lead = cur[k - 1]
            nxt = [0] + cur[:k - 1]
            nxt = [(nxt[i] - lead * poly[i]) % m for i in range(k)]
            red.append(nxt)
            cur = nxt
        self._red = np.array(red, dtype=np.int64).reshape(-1, k)
        self._powers = np.array([m ** i for i in range(k)], dtype=np.int64)
        self._add = self._mul = None
        if k > 1 and self.size <= TABLE_LIMIT:
            codes = np.arange(self.size, dtype=np.int64)
            A, B = np.meshgrid(codes, codes, indexing="ij")
            self._add = self._add_coeffwise(A, B)
            self._mul = self._mul_coeffwise(A, B)

    # -- codes <-> coefficient vectors ------------------------------------------

    def to_coeffs(self, a):
        a = np.asarray(a, dtype=np.int64)
        return (a[..., None] // self._powers) % self.modulus

    def from_coeffs(self, C):
        C = np.asarray(C, dtype=np.int64) % self.modulus
        return (C * self._powers).sum(axis=-1)

    def code(self, coeffs):
        """Code of a single element from an integer coefficient list (any length < k+1)."""
        coeffs = list(coeffs) + [0] * (self.k - len(coeffs))
        return int(sum((int(c) % self.modulus) * self.modulus ** i
                       for i, c in enumerate(coeffs[:self.k])))

    def coeffs(self, a):
        return [int(c) for c in self.to_coeffs(int(a))]

    # -- vectorized arithmetic -----------------------------------------------------

    def _add_coeffwise(self, a, b):
        return self.from_coeffs(self.to_coeffs(a) + self.to_coeffs(b))

    def _mul_coeffwise(self, a, b):
        k, m = self.k, self.modulus
        A, B = self.to_coeffs(a), self.to_coeffs(b)
        shape = np.broadcast_shapes(A.shape, B.shape)[:-1]
        conv = np.zeros(shape + (2 * k - 1,), dtype=np.int64)
        for i in range(k):
            conv[..., i:i + k] += A[..., i:i + 1] * B
        conv %= m
        out = conv[..., :k]
        for j in range(k - 1):
            out = out + conv[..., k + j:k + j + 1] * self._red[j]
        return self.from_coeffs(out % m)

    def add(self, a, b):
        if self.k == 1:
            return (np.asarray(a) + b) % self.modulus
        if self._add is not None:
            return self._add[a, b]
        return self._add_coeffwise(a, b)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def neg(self, a):
        if self.k == 1:
            return (-np.asarray(a)) % self.modulus
        return self.from_coeffs(-self.to_coeffs(a))

    def mul(self, a, b):
        if self.k == 1:
            return (np.asarray(a, dtype=np.int64) * b) % self.modulus
        if self._mul is not None:
            return self._mul[a, b]
        return self._mul_coeffwise(a, b)

    # -- scalar helpers -------------------------------------------------------------

    def sadd(self, a, b):
        return int(self.add(a, b))

    def ssub(self, a, b):
        return int(self.sub(a, b))

    def smul(self, a, b):
        return int(self.mul(a, b))

    def sneg(self, a):
        return int(self.neg(a))

    def spow(self, a, e):
        result = self.one
        base = int(a)
        while e:
            if e & 1:
                result = self.smul(result, base)
            base = self.smul(base, base)
            e >>= 1
        return result

    @cached_property
    def _unit_inverse(self):
        if self.size > TABLE_LIMIT:
            raise RingError("unit table too large for this ring")
        codes = np.arange(self.size, dtype=np.int64)
        prod = self.mul(codes[:, None], codes[None, :])
        hit = prod == self.one
        inv = np.where(hit.any(axis=1), hit.argmax(axis=1), -1)
        return inv

    def is_unit(self, a):
        if self.k == 1:
            return gcd(int(a), self.modulus) == 1
        return self.sinv(a) is not None

    def sinv(self, a):
        """Inverse of a unit, or None."""
        a = int(a)
        if self.k == 1:
            if gcd(a, self.modulus) != 1:
                return None
            return pow(a, -1, self.modulus)
        inv = int(self._unit_inverse[a])
        return None if inv < 0 else inv

    def random_element(self, rng):
        return int(rng.integers(self.size))

    def __repr__(self):
        return f"QuotientRing(m={self.modulus}, poly={list(self.poly)})"


class LocalRingZxMod(QuotientRing):
    """O/mO = (Z/m)[x]/(f mod m) for O = Z[theta] with theta of minimal polynomial f."""

    def __init__(self, m, minpoly):
        if m < 2:
            raise RingError("modulus must be at least 2")
        super().__init__(m, minpoly)

    def norm_mod(self, a):
        """Resultant of f and the element polynomial, reduced mod m."""
        x = sympy.Symbol("x")
        f = sympy.Poly(list(reversed(self.poly)), x)
        g = sympy.Poly(list(reversed(self.coeffs(a))) or [0], x)
        return int(sympy.resultant(f, g)) % self.modulus


class ResidueField(QuotientRing):
    """F_{p^k} = F_p[x]/(f) with f monic irreducible mod p."""

    def __init__(self, p, modpoly):
        if not sympy.isprime(p):
            raise RingError(f"{p} is not prime")
        modpoly = pmod(modpoly, p)
        if not modpoly or modpoly[-1] != 1 or not is_irreducible_mod_p(modpoly, p):
            raise RingError(f"{modpoly} is not monic irreducible mod {p}")
        super().__init__(p, modpoly)
        self.p = p
        self.q = self.size

    def sinv(self, a):
        a = int(a)
        if a == 0:
            raise ZeroDivisionError("inversion of zero in a finite field")
        if self.k == 1:
            return pow(a, -1, self.p)
        if self.size <= TABLE_LIMIT:
            return int(self._unit_inverse[a])
        return self.spow(a, self.q - 2)

    def is_unit(self, a):
        return int(a) != 0

    def frobenius(self, a, times=1):
        """a -> a^(p^times), vectorized."""
        a = np.asarray(a, dtype=np.int64)
        if self.k == 1:
            return a
        return self.pow(a, self.p ** (times % self.k))

    def pow(self, a, e):
        a = np.asarray(a, dtype=np.int64)
        result = np.full(a.shape, self.one, dtype=np.int64)
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def mult_order(self, a):
        a = int(a)
        if a == 0:
            raise ZeroDivisionError("zero has no multiplicative order")
        t = self.q - 1
        for r in sympy.factorint(t):
            while t % r == 0 and self.spow(a, t // r) == self.one:
                t //= r
        return t

    def in_subfield(self, a, r):
        """Vectorized test a in F_{p^r}."""
        return self.frobenius(a, r) == np.asarray(a)

    @cached_property
    def primitive_element(self):
        for a in range(1, self.q):
            if self.mult_order(a) == self.q - 1:
                return a
        raise RingError("no primitive element")

    def __repr__(self):
        return f"ResidueField(p={self.p}, modpoly={list(self.poly)})"


def fq_arith(F, op, a, b=None):
    """Scalar arithmetic in a ResidueField: op in {add, mul, inv, pow}."""
    if op == "add":
        return F.sadd(a, b)
    if op == "mul":
        return F.smul(a, b)
    if op == "inv":
        return F.sinv(a)
    if op == "pow":
        if b < 0:
            return F.spow(F.sinv(a), -b)
        return F.spow(a, b)
    raise ValueError(f"unknown operation {op!r}")


def mult_order(F, a):
    return F.mult_order(a)


def sl_order_field(q, n=2):
    """|SL(n, q)|."""
    order = q ** (n * (n - 1) // 2)
    for i in range(2, n + 1):
        order *= q ** i - 1
    return order


def sl2_order_field(q):
    return q * (q * q - 1)


@lru_cache(maxsize=1024)
def sl2_order_mod(m, F):
    """|SL(2, O/mO)| from the prime-ideal-power factorization of mO."""
    from .ideals import factor_rational_prime
    if m < 2:
        raise RingError("modulus must be at least 2")
    order = 1
    for p, a in sympy.factorint(m).items():
        for I in factor_rational_prime(p, F):
            t = a * I.e
            q = I.norm
            order *= sl2_order_field(q) * q ** (3 * (t - 1))
    return order


def local_ring(m, F):
    """O/mO for a field whose ring of integers is monogenic."""
    from .ideals import _theta_minpoly
    if F.m != 2 and F.index != 1:
        raise RingError("O/mO needs a monogenic ring of integers")
    return LocalRingZxMod(m, list(_theta_minpoly(F)))


__all__ = [
    "RingError", "QuotientRing", "LocalRingZxMod", "ResidueField", "fq_arith",
    "mult_order", "sl_order_field", "sl2_order_field", "sl2_order_mod", "local_ring",
]
