"""Exact arithmetic in a number field P = Q(alpha).

Elements are stored in the power basis 1, alpha, ..., alpha^(m-1) with
coefficients that are ``int`` or ``Fraction``.
"""

from __future__ import annotations

import numbers
from fractions import Fraction
from functools import cached_property
from math import isqrt, lcm

import sympy

from .linalg import qdet, qinverse, vec_mat


class FieldError(ValueError):
    pass


def _num(c):
    if isinstance(c, numbers.Integral):
        return int(c)
    c = Fraction(c) if not isinstance(c, Fraction) else c
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _squarefree_part(n):
    """Write n = s^2 * d with d squarefree; return (s, d), sign kept in d."""
    sign = -1 if n < 0 else 1
    n = abs(n)
    s = 1
    for prime, e in sympy.factorint(n).items():
        s *= prime ** (e // 2)
    return s, sign * (n // (s * s))


class NumberField:
    """P = Q(alpha), alpha a root of the monic integer polynomial ``minpoly``."""

    def __init__(self, minpoly, integral_basis=None):
        minpoly = [int(c) for c in minpoly]
        while minpoly and minpoly[-1] == 0:
            minpoly.pop()
        if len(minpoly) < 2:
            raise FieldError("minimal polynomial must have degree >= 1")
        if minpoly[-1] != 1:
            raise FieldError("minimal polynomial must be monic")
        x = sympy.Symbol("x")
        if not sympy.Poly(list(reversed(minpoly)), x).is_irreducible:
            raise FieldError(f"minimal polynomial {minpoly} is reducible over Q")
        self.minpoly = tuple(minpoly)
        self.m = len(minpoly) - 1
        self._reduction = self._build_reduction()
        self.squarefree_d = None
        if self.m == 2:
            c, b = minpoly[0], minpoly[1]
            self.squarefree_d = _squarefree_part(b * b - 4 * c)[1]
        if integral_basis is None:
            if self.m == 1:
                integral_basis = [[1]]
            elif self.m == 2:
                integral_basis = self._quadratic_integral_basis()
            else:
                raise FieldError("integral basis required for fields of degree > 2")
        basis = [self.element(v) for v in integral_basis]
        if len(basis) != self.m:
            raise FieldError("integral basis must have m elements")
        self.integral_basis = tuple(basis)
        self.disc_alpha = self.trace_form_det([self.power(i) for i in range(self.m)])
        self.disc_field = self.trace_form_det(basis)
        if self.disc_field == 0:
            raise FieldError("integral basis is linearly dependent")
        ratio = Fraction(self.disc_alpha) / Fraction(self.disc_field)
        if ratio.denominator != 1 or isqrt(ratio.numerator) ** 2 != ratio.numerator:
            raise FieldError("supplied basis is not an integral basis containing Z[alpha]")
        self.disc_alpha = int(self.disc_alpha)
        self.disc_field = int(self.disc_field)
        self.index = isqrt(ratio.numerator)
        # integral-basis coordinates of the power basis are integers
        self._basis_rows = [list(b.coeffs) for b in basis]
        self._to_ib = qinverse(self._basis_rows)

    # -- construction helpers ------------------------------------------------

    def _build_reduction(self):
        # x^k for k = m .. 2m-2 written in the power basis
        m = self.m
        f = self.minpoly
        table = []
        cur = [0] * m
        cur[m - 1] = 1  # x^(m-1)
        for _ in range(m - 1):
            lead = cur[m - 1]
            nxt = [0] + cur[:m - 1]
            nxt = [nxt[i] - lead * f[i] for i in range(m)]
            table.append(nxt)
            cur = nxt
        return table

    def _quadratic_integral_basis(self):
        c, b = self.minpoly[0], self.minpoly[1]
        disc = b * b - 4 * c
        s, d = _squarefree_part(disc)
        if disc == (d if d % 4 == 1 else 4 * d):
            return [[1, 0], [0, 1]]
        # sqrt(d) = (2 alpha + b) / s
        sqrt_d = [Fraction(b, s), Fraction(2, s)]
        if d % 4 == 1:
            omega = [Fraction(1, 2) + sqrt_d[0] / 2, sqrt_d[1] / 2]
        else:
            omega = sqrt_d
        return [[1, 0], omega]

    # -- elements ------------------------------------------------------------

    def element(self, coeffs):
        coeffs = [_num(c) for c in coeffs]
        if len(coeffs) > self.m:
            raise FieldError("too many coefficients for this field")
        coeffs += [0] * (self.m - len(coeffs))
        return NFElement(self, tuple(coeffs))

    def __call__(self, value):
        if isinstance(value, NFElement):
            return value
        if isinstance(value, numbers.Rational):
            return self.element([value])
        return self.element(value)

    def zero(self):
        return self.element([0])

    def one(self):
        return self.element([1])

    @property
    def alpha(self):
        return self.power(1) if self.m > 1 else self.element([0])

    def power(self, i):
        e = self.one()
        if i == 0:
            return e
        if self.m == 1:
            raise FieldError("alpha is rational in a degree-1 field")
        a = self.element([0, 1])
        for _ in range(i):
            e = e * a
        return e

    @property
    def is_quadratic(self):
        return self.m == 2

    @cached_property
    def sqrt_d(self):
        """sqrt(d) for a quadratic field Q(sqrt(d)), in the power basis."""
        c, b = self.minpoly[0], self.minpoly[1]
        s = _squarefree_part(b * b - 4 * c)[0]
        return self.element([Fraction(b, s), Fraction(2, s)])

    @cached_property
    def generator(self):
        """theta with O = Z[theta] when known (quadratic fields), else alpha."""
        if self.m == 2:
            return self.integral_basis[1]
        if self.index == 1:
            return self.alpha
        return None

    # -- coordinates ---------------------------------------------------------

    def to_integral_basis(self, a):
        return [_num(x) for x in vec_mat(list(a.coeffs), self._to_ib)]

    def from_integral_basis(self, coords):
        acc = self.zero()
        for c, b in zip(coords, self.integral_basis):
            acc = acc + b * c
        return acc

    def is_integral(self, a):
        return all(Fraction(c).denominator == 1 for c in self.to_integral_basis(a))

    def denominator(self, a):
        """Least positive integer d with d*a integral."""
        return lcm(*[Fraction(c).denominator for c in self.to_integral_basis(a)])

    # -- trace, norm, discriminant -------------------------------------------

    def mult_matrix(self, a):
        """Matrix of x -> a*x on the power basis (columns = images of alpha^j)."""
        cols = []
        e = a
        alpha = self.element([0, 1]) if self.m > 1 else None
        for j in range(self.m):
            cols.append(list(e.coeffs))
            if j + 1 < self.m:
                e = e * alpha
        return [[cols[j][i] for j in range(self.m)] for i in range(self.m)]

    @cached_property
    def _power_traces(self):
        return [sum(self.mult_matrix(self.power(i))[k][k] for k in range(self.m))
                for i in range(self.m)]

    def trace(self, a):
        return _num(sum(Fraction(c) * t for c, t in zip(a.coeffs, self._power_traces)))

    def norm(self, a):
        if self.m == 2:
            c0, c1 = a.coeffs
            # N(c0 + c1 alpha) = c0^2 + c0 c1 tr(alpha) + c1^2 N(alpha)
            b, c = self.minpoly[1], self.minpoly[0]
            return _num(Fraction(c0) ** 2 - Fraction(c0) * c1 * b + Fraction(c1) ** 2 * c)
        return _num(qdet(self.mult_matrix(a)))

    def trace_form_det(self, S):
        if len(S) != self.m:
            raise FieldError(f"need exactly {self.m} elements, got {len(S)}")
        gram = [[self.trace(a * b) for b in S] for a in S]
        return _num(qdet(gram))

    def conjugate(self, a):
        """Nontrivial automorphism of a quadratic field."""
        if self.m != 2:
            raise FieldError("conjugation only implemented for quadratic fields")
        c0, c1 = a.coeffs
        # alpha' = -b - alpha
        b = self.minpoly[1]
        return self.element([c0 - c1 * b, -c1])

    # -- printing ------------------------------------------------------------

    def format(self, a):
        if self.m == 2 and self.squarefree_d is not None:
            return _format_quadratic(self, a)
        terms = []
        for i, c in enumerate(a.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                mon = "a" if i == 1 else f"a^{i}"
                terms.append(mon if c == 1 else f"{c}*{mon}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"

    def __eq__(self, other):
        return (isinstance(other, NumberField) and self.minpoly == other.minpoly
                and self.integral_basis == other.integral_basis)

    def __hash__(self):
        return hash(self.minpoly)

    def __repr__(self):
        return f"NumberField(minpoly={list(self.minpoly)})"


def _format_quadratic(F, a):
    # a = u + v*sqrt(d) with u, v rational; print over the common denominator
    c0, c1 = (Fraction(x) for x in a.coeffs)
    sq = F.sqrt_d
    # alpha = (sqrt_d - b/s) * s/2  ->  solve a = u + v*sqrt_d
    s0, s1 = (Fraction(x) for x in sq.coeffs)
    v = c1 / s1
    u = c0 - v * s0
    den = lcm(u.denominator, v.denominator)
    U, V = int(u * den), int(v * den)
    root = f"sqrt({F.squarefree_d})"
    if V == 0:
        body = str(U)
    else:
        vpart = root if abs(V) == 1 else f"{abs(V)}*{root}"
        if U == 0:
            body = ("-" if V < 0 else "") + vpart
        else:
            body = f"{U}{'-' if V < 0 else '+'}{vpart}"
    if den == 1:
        return body
    return f"({body})/{den}"


class NFElement:
    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = coeffs

    def _coerce(self, other):
        if isinstance(other, NFElement):
            return other
        if isinstance(other, numbers.Rational):
            return self.field.element([other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return NFElement(self.field, tuple(_num(a + b) for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return NFElement(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return NFElement(self.field, tuple(_num(a - b) for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, numbers.Rational):
            other = _num(other)
            return NFElement(self.field, tuple(_num(a * other) for a in self.coeffs))
        if not isinstance(other, NFElement):
            return NotImplemented
        F = self.field
        m = F.m
        a, b = self.coeffs, other.coeffs
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        out = prod[:m]
        for k, c in enumerate(prod[m:]):
            if c:
                row = F._reduction[k]
                for i in range(m):
                    out[i] += c * row[i]
        return NFElement(F, tuple(_num(c) for c in out))

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a number field")
        M = self.field.mult_matrix(self)
        # solve M x = e_0
        inv = qinverse(M)
        return self.field.element([inv[i][0] for i in range(self.field.m)])

    def __truediv__(self, other):
        if isinstance(other, numbers.Rational):
            other = _num(other)
            return NFElement(self.field, tuple(_num(Fraction(a) / other) for a in self.coeffs))
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def is_zero(self):
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.coeffs[0] == other and not any(self.coeffs[1:])
        if not isinstance(other, NFElement):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def trace(self):
        return self.field.trace(self)

    def norm(self):
        return self.field.norm(self)

    def is_rational(self):
        return not any(self.coeffs[1:])

    def __repr__(self):
        return f"NFElement({self.field.format(self)})"

    def __str__(self):
        return self.field.format(self)


def make_field(minpoly, integral_basis=None):
    return NumberField(minpoly, integral_basis)


def nf_trace(a, F=None):
    return (F or a.field).trace(a)


def nf_norm(a, F=None):
    return (F or a.field).norm(a)


def trace_form_det(S, F):
    return F.trace_form_det(S)


def quadratic_field(d):
    """Q(sqrt(-d)) for squarefree d > 0 with alpha the integral-basis generator."""
    if d <= 0:
        raise FieldError("d must be positive")
    if -d % 4 == 1:
        # alpha = (1 + sqrt(-d))/2, root of x^2 - x + (1+d)/4
        return NumberField([(1 + d) // 4, -1, 1])
    return NumberField([d, 0, 1])


__all__ = [
    "FieldError", "NumberField", "NFElement", "make_field", "nf_trace", "nf_norm",
    "trace_form_det", "quadratic_field",
]
