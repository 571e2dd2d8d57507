"""Finitely generated subgroups of SL(n, P): enveloping algebras, trace rings,
derived-subgroup machinery, the adjoint representation and order tests."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .lattice import ZModuleBasis, hnf, hnf_basis, module_index
from .linalg import PY_OPS, EchelonSpan
from .nfmat import (commutator, entries, is_identity, mat_det, mat_identity, mat_inverse,
                    mat_mul, mat_power, mat_sub, mat_trace)
from .polys import charpoly, cyclotomic, euler_phi, poly_eval_matrix, qderiv, qdivmod, qgcd


class GroupError(ValueError):
    pass


class Inconclusive(RuntimeError):
    """A randomized search ran out of budget; not a negative certificate."""


class MatGroup:
    """H = <X> <= SL(n, P) with X = X^-1 and all entries in O[1/mu]."""

    def __init__(self, field, n, gens, mu=1):
        self.field = field
        self.n = n
        self.gens = list(gens)
        self.mu = mu

    def __repr__(self):
        return f"MatGroup(n={self.n}, gens={len(self.gens)}, mu={self.mu})"


def _as_matrix(M, F):
    return tuple(tuple(F(x) for x in row) for row in M)


def make_group(raw_gens, field, n=None):
    """Validate generators, close under inverses and compute mu."""
    gens = [_as_matrix(M, field) for M in raw_gens]
    if not gens:
        if n is None:
            raise GroupError("need at least one generator or an explicit degree")
        gens = [mat_identity(field, n)]
    n = n or len(gens[0])
    for M in gens:
        if len(M) != n or any(len(row) != n for row in M):
            raise GroupError("generators must be square matrices of one size")
        if mat_det(M) != 1:
            raise GroupError(f"generator has determinant {mat_det(M)}, expected 1")
    out = []
    for M in gens:
        for x in (M, mat_inverse(M)):
            if x not in out:
                out.append(x)
    mu = 1
    for M in out:
        for x in entries(M):
            mu = lcm(mu, field.denominator(x))
    return MatGroup(field, n, out, _radical(mu))


def _radical(mu):
    from sympy import factorint
    r = 1
    for p in factorint(mu):
        r *= p
    return r


# ---------------------------------------------------------------------------
# enveloping algebras

def _vec_P(M):
    return entries(M)


def _vec_Q(M):
    return [Fraction(c) for x in entries(M) for c in x.coeffs]


def _vec_Z(M):
    F = M[0][0].field
    out = []
    for x in entries(M):
        coords = F.to_integral_basis(x)
        if any(Fraction(c).denominator != 1 for c in coords):
            raise GroupError("Z-spans need integral entries (R = O)")
        out.extend(int(c) for c in coords)
    return out


class _ZSpan:
    def __init__(self, dim):
        self.module = ZModuleBasis(dim)

    def add(self, v):
        return self.module.add(v)

    @property
    def dim(self):
        return self.module.rank


def basis_env_algebra(X, domain="P", start=None):
    """Products of X spanning the ring <X> over P, Q or Z.

    Starts from {1_n} (or ``start``) and appends a*x whenever it leaves the
    current span.  Returns (products, span object); over Z the span object
    carries the HNF basis in ``.module``.
    """
    X = list(X)
    if not X:
        raise GroupError("need a nonempty set")
    F = X[0][0][0].field
    n = len(X[0])
    if domain == "P":
        span, vec = EchelonSpan(PY_OPS), _vec_P
    elif domain == "Q":
        span, vec = EchelonSpan(PY_OPS), _vec_Q
    elif domain == "Z":
        span, vec = _ZSpan(n * n * F.m), _vec_Z
    else:
        raise ValueError(f"unknown domain {domain!r}")
    A = []
    for a in (start if start is not None else [mat_identity(F, n)]):
        if span.add(vec(a)):
            A.append(a)
    i = 0
    while i < len(A):
        for x in X:
            ax = mat_mul(A[i], x)
            if span.add(vec(ax)):
                A.append(ax)
        i += 1
    return A, span


def env_algebra_dim(X, domain="P"):
    return len(basis_env_algebra(X, domain)[0])


def is_abs_irreducible(H):
    return env_algebra_dim(H.gens, "P") == H.n * H.n


def gram_discriminant(A):
    """det(tr(a_i a_j)) over P for an env-algebra basis A."""
    gram = tuple(tuple(mat_trace(mat_mul(a, b)) for b in A) for a in A)
    return mat_det(gram)


# ---------------------------------------------------------------------------
# lattices in O

def integral_coords(a):
    coords = a.field.to_integral_basis(a)
    if any(Fraction(c).denominator != 1 for c in coords):
        raise GroupError("element is not integral")
    return [int(c) for c in coords]


def full_order(F):
    return ZModuleBasis(F.m, [[int(i == j) for j in range(F.m)] for i in range(F.m)])


def _one_by_one(a):
    return ((a,),)


@dataclass
class TraceRing:
    """span_Z(tr H), the ring it generates, and the unital ring <tr H, 1>_Z."""
    span: ZModuleBasis
    ring: ZModuleBasis
    unital: ZModuleBasis
    span_index: object
    ring_index: object
    unital_index: object
    traces: list

    @property
    def index(self):
        return self.span_index


def _ring_closure(elements, F, unital):
    mats = [_one_by_one(t) for t in elements]
    start = None if unital else mats
    if not mats:
        mats = [_one_by_one(F.one())]
    A, span = basis_env_algebra(mats, "Z", start=start)
    return span.module


def _require_integral(H):
    if H.mu != 1:
        raise GroupError("needs integral entries (mu = 1): Z-spans of O[1/mu] "
                         "are not finitely generated, so R = O is required")


def trace_ring(H):
    _require_integral(H)
    F = H.field
    B, _ = basis_env_algebra(H.gens, "Z")
    traces = [mat_trace(b) for b in B]
    return _trace_ring_from(traces, F)


def _trace_ring_from(traces, F):
    O = full_order(F)
    span = ZModuleBasis(F.m, [integral_coords(t) for t in traces])
    ring = _ring_closure(traces, F, unital=False)
    unital = _ring_closure(traces, F, unital=True)
    return TraceRing(span, ring, unital, module_index(span, O), module_index(ring, O),
                     module_index(unital, O), traces)


def lattice_elements(module, F):
    return [F.from_integral_basis(row) for row in module.basis]


# ---------------------------------------------------------------------------
# derived subgroup

def derived_normal_gens(H):
    K = []
    for x in H.gens:
        for y in H.gens:
            c = commutator(x, y)
            if not is_identity(c) and c not in K:
                K.append(c)
    return K or [mat_identity(H.field, H.n)]


def basis_algebra_closure(K, X):
    """Z-basis of <[H,H]>_Z from a normal generating set K of [H,H]."""
    F = X[0][0][0].field
    n = len(X[0])
    span = ZModuleBasis(n * n * F.m)
    Aprime = []
    for k in K:
        if span.add(_vec_Z(k)):
            Aprime.append(k)
    conj = [(mat_inverse(x), x) for x in X]
    i = 0
    while i < len(Aprime):
        for xi, x in conj:
            ax = mat_mul(mat_mul(xi, Aprime[i]), x)
            if span.add(_vec_Z(ax)):
                Aprime.append(ax)
        i += 1
    # [H,H] contains 1, so the ring closure starts from the identity
    A, zspan = basis_env_algebra(Aprime, "Z")
    return A, zspan.module


def derived_trace_ring(H):
    """Trace data of [H,H] from a Z-basis of <[H,H]>_Z."""
    _require_integral(H)
    A, _ = basis_algebra_closure(derived_normal_gens(H), H.gens)
    return _trace_ring_from([mat_trace(a) for a in A], H.field), A


# ---------------------------------------------------------------------------
# random elements

def random_word(H, rng, length):
    g = H.gens[rng.randrange(len(H.gens))]
    for _ in range(length - 1):
        g = mat_mul(g, H.gens[rng.randrange(len(H.gens))])
    return g


def _lengths(budget):
    # ramp 2, 4, 8, ... capped so single words stay cheap
    out = []
    length = 2
    while len(out) < budget:
        out.extend([length] * 4)
        length = min(length * 2, 64)
    return out[:budget]


def iterated_commutator(H, l, seed=1, budget=50, retries=8):
    """A nontrivial element of the (l+1)-th derived subgroup H^(l+1).

    Level by level g <- [g, w g w^-1] for a random word w; the conjugate stays
    in the same (normal) derived term, so after l+1 steps g lies in H^(l+1)
    and its image is trivial in every quotient of derived length <= l+1.
    A trivial commutator is retried with a fresh w before giving up on g.
    """
    rng = random.Random(seed)
    for length in _lengths(budget):
        length = min(length, 8)
        g = random_word(H, rng, length)
        for _ in range(l + 1):
            if is_identity(g):
                break
            for _ in range(retries):
                w = random_word(H, rng, length)
                c = commutator(g, mat_mul(mat_mul(w, g), mat_inverse(w)))
                if not is_identity(c):
                    break
            g = c
        if not is_identity(g):
            return g
    raise Inconclusive(f"inconclusive: possibly solvable of derived length <= {l + 1}")


# ---------------------------------------------------------------------------
# adjoint representation

def sl_basis(F, n):
    basis = []
    for i in range(n):
        for j in range(n):
            if i != j:
                basis.append(tuple(tuple(F.one() if (r, c) == (i, j) else F.zero()
                                         for c in range(n)) for r in range(n)))
    for i in range(n - 1):
        basis.append(tuple(tuple((F.one() if r == i else -F.one()) if r == c and r in (i, i + 1)
                                 else F.zero() for c in range(n)) for r in range(n)))
    return basis


def _sl_coords(M, n):
    coords = [M[i][j] for i in range(n) for j in range(n) if i != j]
    # diagonal d = sum c_i (E_ii - E_{i+1,i+1}) gives c_i = d_0 + ... + d_i
    acc = M[0][0]
    for i in range(n - 1):
        coords.append(acc)
        acc = acc + M[i + 1][i + 1]
    return coords


def adjoint_matrix(g):
    n = len(g)
    F = g[0][0].field
    gi = mat_inverse(g)
    cols = [_sl_coords(mat_mul(mat_mul(g, E), gi), n) for E in sl_basis(F, n)]
    return tuple(tuple(cols[j][i] for j in range(len(cols))) for i in range(len(cols)))


def adjoint_rep(H):
    return MatGroup(H.field, H.n * H.n - 1, [adjoint_matrix(g) for g in H.gens], H.mu)


# ---------------------------------------------------------------------------
# finite-order certificate

def rational_matrix(h):
    """h acting Q-linearly on P^n with Q-basis e_i * alpha^j."""
    F = h[0][0].field
    n, m = len(h), F.m
    N = n * m
    M = [[Fraction(0)] * N for _ in range(N)]
    for i in range(n):
        for j in range(n):
            block = F.mult_matrix(h[i][j])
            for r in range(m):
                for c in range(m):
                    M[i * m + r][j * m + c] = Fraction(block[r][c])
    return M


def finite_order(h):
    """(True, order) when h has finite order, else (False, None)."""
    M = rational_matrix(h)
    N = len(M)
    cp = charpoly(M)
    rest = cp
    ts = []
    for t in range(1, 4 * N * N + 3):
        if euler_phi(t) > N:
            continue
        phi = cyclotomic(t)
        while len(rest) >= len(phi):
            q, r = qdivmod(rest, phi)
            if r:
                break
            rest = q
            if t not in ts:
                ts.append(t)
    if len(rest) != 1:
        return False, None
    sqf = qdivmod(cp, qgcd(cp, qderiv(cp)))[0]
    if any(any(x != 0 for x in row) for row in poly_eval_matrix(sqf, M)):
        return False, None
    return True, lcm(*ts)


def infinite_order_element(H, seed=1, budget=200):
    rng = random.Random(seed)
    for g in H.gens:
        if not finite_order(g)[0]:
            return g
    for length in _lengths(budget):
        h = random_word(H, rng, length)
        if not finite_order(h)[0]:
            return h
    raise Inconclusive("inconclusive: no element of infinite order found (possibly finite)")


__all__ = [
    "GroupError", "Inconclusive", "MatGroup", "make_group", "basis_env_algebra",
    "env_algebra_dim", "is_abs_irreducible", "gram_discriminant", "hnf", "hnf_basis",
    "ZModuleBasis", "module_index", "trace_ring", "TraceRing", "derived_normal_gens",
    "basis_algebra_closure", "derived_trace_ring", "iterated_commutator", "adjoint_rep",
    "adjoint_matrix", "finite_order", "infinite_order_element", "random_word", "full_order",
    "integral_coords", "lattice_elements", "rational_matrix", "sl_basis", "mat_sub",
    "mat_power",
]
