"""Finite matrix groups over residue fields F_{p^k} and quotient rings O/mO.

Matrices are numpy arrays of ring codes with shape (..., n, n); every
operation works on whole batches.  Groups are enumerated by a breadth-first
closure whose frontier is kept in sorted key order, so runs are
deterministic.  For n = 2 the exact order of a subgroup is also available
without enumeration, by an orbit-stabilizer count on the orbit of e1.
"""

from __future__ import annotations

import itertools
import random
from functools import cached_property

import numpy as np
import sympy

from .linalg import EchelonSpan, nullspace
from .residue import ResidueField, sl_order_field

DEFAULT_CAP = 20_000_000


class EnumerationCap(RuntimeError):
    def __init__(self, count, cap):
        super().__init__(f"enumeration cap {cap} exceeded after {count} elements; "
                         "raise --cap to continue")
        self.count = count
        self.cap = cap


# ---------------------------------------------------------------------------
# batched matrix arithmetic

def identity(ring, n, batch=()):
    eye = np.zeros(batch + (n, n), dtype=np.int64)
    idx = np.arange(n)
    eye[..., idx, idx] = ring.one
    return eye


def mat_mul(ring, A, B):
    """Batched product over the ring; shapes broadcast like numpy."""
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    n = A.shape[-1]
    shape = np.broadcast_shapes(A.shape, B.shape)
    C = np.empty(shape, dtype=np.int64)
    for i in range(n):
        for j in range(n):
            acc = ring.mul(A[..., i, 0], B[..., 0, j])
            for l in range(1, n):
                acc = ring.add(acc, ring.mul(A[..., i, l], B[..., l, j]))
            C[..., i, j] = acc
    return C


def mat_pow(ring, A, e):
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[-1]
    result = identity(ring, n, A.shape[:-2])
    base = A
    while e:
        if e & 1:
            result = mat_mul(ring, result, base)
        e >>= 1
        if e:
            base = mat_mul(ring, base, base)
    return result


def _det(ring, A):
    n = A.shape[-1]
    if n == 1:
        return A[..., 0, 0]
    if n == 2:
        return ring.sub(ring.mul(A[..., 0, 0], A[..., 1, 1]), ring.mul(A[..., 0, 1], A[..., 1, 0]))
    acc = None
    for j in range(n):
        minor = np.delete(np.delete(A, 0, axis=-2), j, axis=-1)
        term = ring.mul(A[..., 0, j], _det(ring, minor))
        if j % 2:
            term = ring.neg(term)
        acc = term if acc is None else ring.add(acc, term)
    return acc


def mat_det(ring, A):
    return _det(ring, np.asarray(A, dtype=np.int64))


def mat_inv(ring, A):
    """Inverse of determinant-one matrices (batched adjugate)."""
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[-1]
    if n == 1:
        return A.copy()
    if n == 2:
        out = np.empty_like(A)
        out[..., 0, 0] = A[..., 1, 1]
        out[..., 1, 1] = A[..., 0, 0]
        out[..., 0, 1] = ring.neg(A[..., 0, 1])
        out[..., 1, 0] = ring.neg(A[..., 1, 0])
        return out
    out = np.empty_like(A)
    for i in range(n):
        for j in range(n):
            minor = np.delete(np.delete(A, j, axis=-2), i, axis=-1)
            c = _det(ring, minor)
            out[..., i, j] = ring.neg(c) if (i + j) % 2 else c
    return out


def mat_trace(ring, A):
    A = np.asarray(A, dtype=np.int64)
    acc = A[..., 0, 0]
    for i in range(1, A.shape[-1]):
        acc = ring.add(acc, A[..., i, i])
    return acc


class KeyPacker:
    """Packs n x n matrices of ring codes into sortable keys."""

    def __init__(self, ring, n):
        self.n = n
        self.size = ring.size
        self.fits = self.size ** (n * n) < 2 ** 63
        if self.fits:
            self._weights = np.array([self.size ** i for i in range(n * n)], dtype=np.int64)

    def pack(self, M):
        flat = np.ascontiguousarray(M, dtype=np.int64).reshape(M.shape[:-2] + (self.n * self.n,))
        if self.fits:
            return flat @ self._weights
        raw = np.ascontiguousarray(flat[..., ::-1]).astype(">i8")
        return raw.view(np.dtype((np.void, 8 * self.n * self.n))).reshape(M.shape[:-2])


def _sorted_member(sorted_keys, keys):
    if len(sorted_keys) == 0:
        return np.zeros(np.shape(keys), dtype=bool)
    pos = np.searchsorted(sorted_keys, keys)
    pos = np.minimum(pos, len(sorted_keys) - 1)
    return sorted_keys[pos] == keys


def enumerate_group(ring, n, gens, cap=DEFAULT_CAP):
    """All elements of <gens>, sorted by key.  Returns (elements, keys)."""
    packer = KeyPacker(ring, n)
    gens = [np.asarray(g, dtype=np.int64) for g in gens]
    frontier = identity(ring, n, (1,))
    visited = packer.pack(frontier)
    chunks = [frontier]
    total = 1
    while len(frontier):
        cands = np.concatenate([mat_mul(ring, frontier, g) for g in gens])
        keys = packer.pack(cands)
        keys_u, first = np.unique(keys, return_index=True)
        fresh = ~_sorted_member(visited, keys_u)
        frontier = cands[first[fresh]]
        total += len(frontier)
        if total > cap:
            raise EnumerationCap(total, cap)
        if len(frontier):
            visited = np.sort(np.concatenate([visited, keys_u[fresh]]), kind="mergesort")
            chunks.append(frontier)
    elements = np.concatenate(chunks)
    keys = packer.pack(elements)
    order = np.argsort(keys, kind="mergesort")
    return elements[order], keys[order]


# ---------------------------------------------------------------------------
# exact orders in degree 2

def _additive_closure(ring, gens):
    span = np.array([ring.zero], dtype=np.int64)
    for b in np.unique(np.asarray(gens, dtype=np.int64)):
        if _sorted_member(span, np.array([b]))[0]:
            continue
        while True:
            grown = np.union1d(span, ring.add(span, b))
            if len(grown) == len(span):
                break
            span = grown
    return span


def _vector_codes(ring, v0, v1):
    return v0 * ring.size + v1


def sl2_subgroup_order(ring, gens):
    """|<gens>| for gens in SL(2, R), R a finite commutative ring.

    The stabilizer of e1 in SL(2, R) is {[[1, b], [0, 1]]}, so the order is
    |orbit of e1| times the size of the additive group generated by the
    upper-right entries of the Schreier generators.
    """
    gens = [np.asarray(g, dtype=np.int64) for g in gens]
    start = identity(ring, 2, (1,))
    U = [start]
    codes = [_vector_codes(ring, start[:, 0, 0], start[:, 1, 0])]
    seen = np.sort(codes[0])
    frontier = start
    while len(frontier):
        cands = np.concatenate([mat_mul(ring, g, frontier) for g in gens])
        c = _vector_codes(ring, cands[:, 0, 0], cands[:, 1, 0])
        cu, first = np.unique(c, return_index=True)
        fresh = ~_sorted_member(seen, cu)
        frontier = cands[first[fresh]]
        if len(frontier):
            U.append(frontier)
            codes.append(cu[fresh])
            seen = np.sort(np.concatenate([seen, cu[fresh]]), kind="mergesort")
    U = np.concatenate(U)
    codes = np.concatenate(codes)
    perm = np.argsort(codes, kind="mergesort")
    sorted_codes = codes[perm]
    Uinv = mat_inv(ring, U)
    betas = []
    for g in gens:
        XU = mat_mul(ring, g, U)
        w = _vector_codes(ring, XU[:, 0, 0], XU[:, 1, 0])
        idx = perm[np.searchsorted(sorted_codes, w)]
        s = mat_mul(ring, Uinv[idx], XU)
        if not (np.all(s[:, 0, 0] == ring.one) and np.all(s[:, 1, 0] == ring.zero)):
            raise AssertionError("Schreier generator outside the stabilizer of e1")
        betas.append(np.unique(s[:, 0, 1]))
    stab = _additive_closure(ring, np.concatenate(betas))
    return len(U) * len(stab)


# ---------------------------------------------------------------------------
# field ops for echelon computations

class FiniteFieldOps:
    def __init__(self, field):
        self.F = field

    def is_zero(self, a):
        return a == 0

    def sub(self, a, b):
        return self.F.ssub(a, b)

    def mul(self, a, b):
        return self.F.smul(a, b)

    def inv(self, a):
        return self.F.sinv(a)


class PrimeFieldOps:
    def __init__(self, p):
        self.p = p

    def is_zero(self, a):
        return a == 0

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        return pow(a, -1, self.p)


def env_algebra_basis(ring, n, gens, ops, vectorize):
    """Spanning loop A <- A + {a x} over right multiplication by gens."""
    span = EchelonSpan(ops)
    one = identity(ring, n)
    span.add(vectorize(one))
    basis = [one]
    i = 0
    while i < len(basis):
        a = basis[i]
        for x in gens:
            ax = mat_mul(ring, a, x)
            if span.add(vectorize(ax)):
                basis.append(ax)
        i += 1
    return basis


def _divisors(n):
    return sorted(d for d in range(1, n + 1) if n % d == 0)


# ---------------------------------------------------------------------------


def _dickson_full_sl2(F, gens, tries=20, seed=0):
    """Certify <gens> = SL(2, F) for a finite field F with q >= 7.

    Proper subgroups of SL(2,q) are solvable of derived length <= 4, binary
    icosahedral (projective element orders 1, 2, 3, 5), or lie in a subfield
    type group where every tr(g)^2 sits in a proper subfield.  A nontrivial
    fourth iterated commutator, an element of projective order > 5 and squared
    traces spanning no proper subfield rule all three out.  False means "no
    certificate", not "proper".
    """
    if F.q < 7:
        return False
    rng = random.Random(seed)
    one, minus = (F.one, 0, 0, F.one), (F.sneg(F.one), 0, 0, F.sneg(F.one))
    gens = [tuple(int(x) for x in g.ravel()) for g in gens]

    def mul(x, y):
        m, a = F.smul, F.sadd
        return (a(m(x[0], y[0]), m(x[1], y[2])), a(m(x[0], y[1]), m(x[1], y[3])),
                a(m(x[2], y[0]), m(x[3], y[2])), a(m(x[2], y[1]), m(x[3], y[3])))

    def inv(x):
        return (x[3], F.sneg(x[1]), F.sneg(x[2]), x[0])

    def rand_elem():
        x = one
        for _ in range(12):
            x = mul(x, rng.choice(gens))
        return x

    def big_order(x):
        y = x
        for _ in range(5):
            if y in (one, minus):
                return False
            y = mul(y, x)
        return True

    sample = [rand_elem() for _ in range(tries)]
    if not any(big_order(x) for x in sample):
        return False
    tr2 = [F.smul(t, t) for t in (F.sadd(x[0], x[3]) for x in sample)]
    for r in sympy.primefactors(F.k):
        if all(bool(F.in_subfield(t, F.k // r)) for t in tr2):
            return False
    for _ in range(tries):
        g = rand_elem()
        for _ in range(4):
            w = rand_elem()
            h = mul(mul(w, g), inv(w))
            g = mul(mul(mul(inv(g), inv(h)), g), h)
        if g != one:
            return True
    return False

class FiniteMatGroup:
    """A subgroup of SL(n, R) given by generators, R finite."""

    def __init__(self, ring, n, gens, cap=DEFAULT_CAP, ambient_order=None):
        self.ring = ring
        self.n = n
        self.cap = cap
        gens = [np.asarray(g, dtype=np.int64).reshape(n, n) for g in gens]
        I = identity(ring, n)
        seen = set()
        uniq = []
        for g in gens:
            key = g.tobytes()
            if key not in seen and not np.array_equal(g, I):
                seen.add(key)
                uniq.append(g)
        self.gens = uniq if uniq else [I]
        self._ambient_order = ambient_order

    @property
    def is_field(self):
        return isinstance(self.ring, ResidueField)

    # -- enumeration ------------------------------------------------------------

    @cached_property
    def _enumerated(self):
        return enumerate_group(self.ring, self.n, self.gens, self.cap)

    @property
    def elements(self):
        return self._enumerated[0]

    @property
    def keys(self):
        return self._enumerated[1]

    @cached_property
    def packer(self):
        return KeyPacker(self.ring, self.n)

    @cached_property
    def order(self):
        if "_enumerated" in self.__dict__ or self.n != 2:
            return len(self.elements)
        return sl2_subgroup_order(self.ring, self.gens)

    def contains(self, M):
        keys = self.packer.pack(np.asarray(M, dtype=np.int64))
        return _sorted_member(self.keys, keys)

    def is_trivial(self):
        return all(np.array_equal(g, identity(self.ring, self.n)) for g in self.gens)

    # -- ambient SL -------------------------------------------------------------

    @property
    def ambient_order(self):
        if self._ambient_order is None:
            if self.is_field:
                self._ambient_order = sl_order_field(self.ring.q, self.n)
            elif self.n == 2:
                self._ambient_order = sl2_subgroup_order(self.ring, _elementary_gens(self.ring))
            else:
                raise ValueError("ambient order unknown for this ring")
        return self._ambient_order

    def is_full_sl(self):
        if "order" not in self.__dict__ and self._certified_full_sl2():
            self.__dict__["order"] = self.ambient_order
            return True
        return self.order == self.ambient_order

    def _certified_full_sl2(self):
        if self.n != 2 or not self.is_field:
            return False
        return self._unipotent_full() or _dickson_full_sl2(self.ring, self.gens)

    def _unipotent_full(self):
        # Over F_p a subgroup of SL(2,p) whose order is divisible by p either
        # has a normal Sylow p-subgroup (so it fixes a line) or is all of SL(2,p).
        # A unipotent u != 1 plus a generator moving ker(u - 1) certifies fullness.
        if self.ring.k != 1:
            return False
        p = self.ring.p
        gens = [tuple(int(x) % p for x in g.ravel()) for g in self.gens]

        def mul(x, y):
            return ((x[0] * y[0] + x[1] * y[2]) % p, (x[0] * y[1] + x[1] * y[3]) % p,
                    (x[2] * y[0] + x[3] * y[2]) % p, (x[2] * y[1] + x[3] * y[3]) % p)

        words = list(gens)
        words += [mul(x, y) for x in gens for y in gens]
        words += [mul(mul(x, y), z) for x in gens for y in gens for z in gens]
        for u in words:
            if (u[0] + u[3]) % p != 2 % p or u == (1, 0, 0, 1):
                continue
            # fixed vector of u: kernel of u - 1
            a, b, c, d = (u[0] - 1) % p, u[1], u[2], (u[3] - 1) % p
            v = (b, (-a) % p) if (a or b) else (d, (-c) % p)
            for g in gens:
                w = ((g[0] * v[0] + g[1] * v[1]) % p, (g[2] * v[0] + g[3] * v[1]) % p)
                if (w[0] * v[1] - w[1] * v[0]) % p:
                    return True
            return False
        return False

    def index_in_sl(self):
        N = self.ambient_order
        if N % self.order:
            raise AssertionError("group order does not divide |SL|")
        return N // self.order

    # -- subgroups ---------------------------------------------------------------

    def subgroup(self, gens):
        return FiniteMatGroup(self.ring, self.n, gens, self.cap)

    def normal_closure(self, S):
        N = self.subgroup(S)
        ginv = [mat_inv(self.ring, g) for g in self.gens]
        while True:
            extra = []
            for g, gi in zip(self.gens, ginv):
                conj = mat_mul(self.ring, mat_mul(self.ring, gi, np.stack(N.gens)), g)
                missing = ~N.contains(conj)
                extra.extend(conj[missing])
            if not extra:
                return N
            N = self.subgroup(N.gens + extra)

    def commutator_gens(self):
        R = self.ring
        out = []
        for x, y in itertools.combinations(self.gens, 2):
            c = mat_mul(R, mat_mul(R, mat_inv(R, x), mat_inv(R, y)), mat_mul(R, x, y))
            out.append(c)
        return out

    def derived_subgroup(self):
        comms = self.commutator_gens()
        if not comms:
            return self.subgroup([identity(self.ring, self.n)])
        return self.normal_closure(comms)

    @cached_property
    def derived_series(self):
        series = [self]
        while True:
            D = series[-1].derived_subgroup()
            if D.order == series[-1].order:
                return series
            series.append(D)
            if D.order == 1:
                return series

    def is_solvable(self):
        return self.derived_series[-1].order == 1

    def derived_length(self):
        """Derived length, or None (standing for infinity) for non-solvable groups."""
        if not self.is_solvable():
            return None
        return len(self.derived_series) - 1

    def is_abelian(self):
        R = self.ring
        for x, y in itertools.combinations(self.gens, 2):
            if not np.array_equal(mat_mul(R, x, y), mat_mul(R, y, x)):
                return False
        return True

    # -- orders -----------------------------------------------------------------

    @cached_property
    def element_orders(self):
        X = self.elements
        N = len(X)
        I = identity(self.ring, self.n, (N,))
        orders = np.ones(N, dtype=np.int64)
        for p, a in sympy.factorint(N).items():
            Y = mat_pow(self.ring, X, N // p ** a)
            part = np.ones(N, dtype=np.int64)
            done = np.all(Y == I, axis=(-2, -1))
            for j in range(1, a + 1):
                Y = mat_pow(self.ring, Y, p)
                hit = np.all(Y == I, axis=(-2, -1)) & ~done
                part[hit] = p ** j
                done |= hit
            orders *= part
        return orders

    def max_element_order(self):
        return int(self.element_orders.max())

    def exponent(self):
        E = self.order
        X = self.elements
        I = identity(self.ring, self.n, (len(X),))
        for p in sympy.factorint(E):
            while E % p == 0 and np.all(mat_pow(self.ring, X, E // p) == I):
                E //= p
        return E

    def is_cyclic(self):
        return self.max_element_order() == self.order

    def abelian_invariants(self):
        orders = self.element_orders
        N = self.order
        factors = []
        for p in sorted(sympy.factorint(N)):
            ppart = np.ones_like(orders)
            o = orders.copy()
            while True:
                mask = o % p == 0
                if not mask.any():
                    break
                ppart[mask] *= p
                o[mask] //= p
            # c_j = log_p #{x : x^(p^j) = 1}, restricted to the Sylow p-subgroup
            sylow = ppart[o == 1]
            c = [0]
            j = 1
            while c[-1] < sympy.multiplicity(p, N):
                cnt = int(np.sum(sylow <= p ** j))
                c.append(sympy.multiplicity(p, cnt))
                j += 1
            ge = [c[j] - c[j - 1] for j in range(1, len(c))]
            parts = []
            for j in range(len(ge)):
                nxt = ge[j + 1] if j + 1 < len(ge) else 0
                parts += [p ** (j + 1)] * (ge[j] - nxt)
            factors.append(sorted(parts, reverse=True))
        width = max((len(f) for f in factors), default=0)
        inv = [1] * width
        for f in factors:
            for i, q in enumerate(f):
                inv[i] *= q
        return sorted(d for d in inv if d > 1)

    # -- module-theoretic tests (field rings) -------------------------------------

    def _require_field(self):
        if not self.is_field:
            raise ValueError("this test needs a residue field")

    def is_abs_irreducible(self):
        self._require_field()
        basis = env_algebra_basis(self.ring, self.n, self.gens, FiniteFieldOps(self.ring),
                                  lambda M: [int(x) for x in M.reshape(-1)])
        return len(basis) == self.n * self.n

    @cached_property
    def trace_subfield(self):
        """Degree r of the subfield of F_{p^k} generated by all element traces."""
        self._require_field()
        F = self.ring
        if F.k == 1:
            return 1
        vec = lambda M: [int(c) for c in F.to_coeffs(M.reshape(-1)).reshape(-1)]
        basis = env_algebra_basis(F, self.n, self.gens, PrimeFieldOps(F.p), vec)
        traces = np.array([int(mat_trace(F, a)) for a in basis], dtype=np.int64)
        for r in _divisors(F.k):
            if np.all(F.in_subfield(traces, r)):
                return r
        return F.k

    def trace_subfield_by_scan(self):
        """Same as trace_subfield, from the traces of all enumerated elements."""
        F = self.ring
        traces = np.unique(mat_trace(F, self.elements))
        for r in _divisors(F.k):
            if np.all(F.in_subfield(traces, r)):
                return r
        return F.k

    def is_c5_group(self):
        self._require_field()
        if self.ring.k == 1 or self.is_full_sl():
            return False
        if not self.is_abs_irreducible():
            return False
        return self.trace_subfield < self.ring.k

    # -- imprimitivity ------------------------------------------------------------

    @cached_property
    def _lines(self):
        """Canonical representatives of the points of P^(n-1)(F_q) and the gens' actions."""
        F = self.ring
        q, n = F.q, self.n
        reps = []
        for lead in range(n):
            # vectors (0,..,0,1,*,..,*) with the 1 in position lead
            tail = n - lead - 1
            grid = np.array(list(itertools.product(range(q), repeat=tail)),
                            dtype=np.int64).reshape(q ** tail, tail)
            block = np.zeros((len(grid), n), dtype=np.int64)
            block[:, lead] = F.one
            block[:, lead + 1:] = grid
            reps.append(block)
        reps = np.concatenate(reps)
        inv = np.array([0] + [F.sinv(a) for a in range(1, q)], dtype=np.int64)

        def normalize(V):
            nz = V != 0
            lead = nz.argmax(axis=1)
            scale = inv[V[np.arange(len(V)), lead]]
            return F.mul(V, scale[:, None])

        weights = np.array([q ** (n - 1 - i) for i in range(n)], dtype=np.int64)
        rep_keys = reps @ weights
        order = np.argsort(rep_keys)
        sorted_keys = rep_keys[order]
        perms = []
        for g in self.gens:
            img = np.zeros_like(reps)
            for i in range(n):
                acc = F.mul(g[i, 0], reps[:, 0])
                for j in range(1, n):
                    acc = F.add(acc, F.mul(g[i, j], reps[:, j]))
                img[:, i] = acc
            keys = normalize(img) @ weights
            perms.append(order[np.searchsorted(sorted_keys, keys)])
        return reps, perms

    def is_monomial_sl2(self):
        """Is there a pair of distinct lines permuted by every generator?"""
        self._require_field()
        if self.n != 2:
            raise ValueError("is_monomial_sl2 needs n = 2")
        _, perms = self._lines
        L = self.ring.q + 1
        i, j = np.triu_indices(L, k=1)
        ok = np.ones(len(i), dtype=bool)
        for pi in perms:
            a, b = pi[i], pi[j]
            ok &= ((a == i) & (b == j)) | ((a == j) & (b == i))
        return bool(ok.any())

    def is_monomial(self):
        """Does G permute n lines spanning F_q^n (n prime)?"""
        self._require_field()
        if self.n == 2:
            return self.is_monomial_sl2()
        reps, perms = self._lines
        L = len(reps)
        # orbits of G on lines
        label = -np.ones(L, dtype=np.int64)
        orbits = []
        for start in range(L):
            if label[start] >= 0:
                continue
            orb = [start]
            label[start] = len(orbits)
            k = 0
            while k < len(orb) and len(orb) <= self.n:
                for pi in perms:
                    t = int(pi[orb[k]])
                    if label[t] < 0:
                        label[t] = len(orbits)
                        orb.append(t)
                k += 1
            if len(orb) > self.n:
                # finish labelling, the orbit is too large to matter
                stack = list(orb)
                while stack:
                    v = stack.pop()
                    for pi in perms:
                        t = int(pi[v])
                        if label[t] < 0:
                            label[t] = len(orbits)
                            stack.append(t)
                orbits.append(None)
            else:
                orbits.append(orb)
        small = [o for o in orbits if o is not None]
        ops = FiniteFieldOps(self.ring)
        for r in range(1, self.n + 1):
            for combo in itertools.combinations(small, r):
                lines = [x for o in combo for x in o]
                if len(lines) != self.n:
                    continue
                span = EchelonSpan(ops)
                for x in lines:
                    span.add([int(v) for v in reps[x]])
                if span.dim == self.n:
                    return True
        return False

    # -- labels --------------------------------------------------------------------

    def structure_description(self):
        N = self.order
        if N == 1:
            return "C_1"
        if self.is_cyclic():
            return f"C_{N}"
        if self.is_field and self.n == 2 and self.is_abs_irreducible():
            qq = self.ring.p ** self.trace_subfield
            if N == sl_order_field(qq, 2):
                return f"SL(2,{qq})"
        if self.is_abelian():
            return "abelian[" + ",".join(str(d) for d in self.abelian_invariants()) + "]"
        dl = self.derived_length()
        if dl is not None:
            return f"solvable(dl={dl}, order={N})"
        return f"other(order={N})"


def _elementary_gens(ring):
    """Elementary matrices generating SL(2, R) for a finite local or semilocal R."""
    gens = []
    for i in range(ring.k):
        c = ring.code([0] * i + [1])
        up = identity(ring, 2)
        up[0, 1] = c
        low = identity(ring, 2)
        low[1, 0] = c
        gens += [up, low]
    return gens


def transvection_gens(ring, n):
    """t_{i,j}(x^l) for all i != j and l < k."""
    gens = []
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            for l in range(ring.k):
                T = identity(ring, n)
                T[i, j] = ring.code([0] * l + [1])
                gens.append(T)
    return gens


# ---------------------------------------------------------------------------
# invariant forms

def find_invariant_form(G, kind, allow_similarity=False):
    """A nonzero form Omega with g^T Omega tau(g) = lambda_g Omega for all generators.

    kind: 'symmetric', 'alternating' or 'hermitian' (tau = Frobenius of order 2).
    Without similarity every lambda_g is 1.  Returns (Omega, nondegenerate) or None.
    """
    F = G.ring
    if not G.is_field:
        raise ValueError("invariant forms need a residue field")
    if kind == "hermitian":
        if F.k % 2:
            raise ValueError("hermitian forms need an even-degree residue field")
        return _hermitian_form(G, allow_similarity)
    if kind not in ("symmetric", "alternating"):
        raise ValueError(f"unknown form kind {kind!r}")
    n = G.n
    ops = FiniteFieldOps(F)

    def idx(i, j):
        return i * n + j

    sym_rows = []
    for i in range(n):
        for j in range(i, n):
            row = [0] * (n * n)
            if kind == "symmetric" and i < j:
                row[idx(i, j)] = F.one
                row[idx(j, i)] = F.sneg(F.one)
                sym_rows.append(row)
            elif kind == "alternating":
                row[idx(i, j)] = F.one
                if i < j:
                    row[idx(j, i)] = F.one
                sym_rows.append(row)

    def action_rows(g, lam):
        # entries of g^T Omega g - lam Omega as linear forms in Omega
        rows = []
        for a in range(n):
            for b in range(n):
                row = [0] * (n * n)
                for i in range(n):
                    for j in range(n):
                        c = F.smul(int(g[i, a]), int(g[j, b]))
                        row[idx(i, j)] = F.sadd(row[idx(i, j)], c)
                row[idx(a, b)] = F.ssub(row[idx(a, b)], lam)
                rows.append(row)
        return rows

    lams = list(range(1, F.q)) if allow_similarity else [F.one]
    sols = _search_scalars(G.gens, sym_rows, action_rows, lams, n * n, ops, 0, F.one)
    if not sols:
        return None
    return _pick_form(F, n, sols, ops,
                      lambda v: np.array(v, dtype=np.int64).reshape(n, n))


def _search_scalars(gens, rows, action_rows, lams, N, ops, zero, one):
    """Depth-first choice of one multiplier per generator keeping a nonzero solution."""
    if not gens:
        return nullspace(rows, N, ops, zero, one)
    g, rest = gens[0], gens[1:]
    for lam in lams:
        trial = rows + action_rows(g, lam)
        if nullspace(trial, N, ops, zero, one):
            found = _search_scalars(rest, trial, action_rows, lams, N, ops, zero, one)
            if found:
                return found
    return None


def _pick_form(F, n, vectors, ops, to_matrix):
    """Prefer a nondegenerate form: each basis solution, then their sum."""
    candidates = list(vectors)
    if len(vectors) > 1:
        total = vectors[0]
        for v in vectors[1:]:
            total = [ops.sub(a, ops.sub(0, b)) for a, b in zip(total, v)]
        candidates.append(total)
    forms = [to_matrix(v) for v in candidates]
    for Om in forms:
        if _nondegenerate(F, Om, n):
            return Om, True
    return forms[0], False


def _nondegenerate(F, Omega, n):
    span = EchelonSpan(FiniteFieldOps(F))
    for row in Omega:
        span.add([int(x) for x in row])
    return span.dim == n


def _hermitian_form(G, allow_similarity):
    """Hermitian forms over F_{q^2}, by solving over F_p coordinates."""
    F = G.ring
    n, k, p = G.n, F.k, F.p
    half = k // 2
    # unknowns: F_p-coordinates of the n^2 entries of Omega
    N = n * n * k
    basis_codes = [F.code([0] * i + [1]) for i in range(k)]

    def entry_vec(code):
        return [int(c) for c in F.coeffs(code)]

    def linear_map(fn):
        # matrix (rows = output F_p coords) of an F_p-linear map on Omega-coordinates
        cols = []
        for u in range(n * n):
            for c in range(k):
                Om = np.zeros((n, n), dtype=np.int64)
                Om[u // n, u % n] = basis_codes[c]
                out = fn(Om)
                cols.append([x for e in out.reshape(-1) for x in entry_vec(int(e))])
        return [list(r) for r in zip(*cols)]

    def tau(M):
        return F.frobenius(M, half)

    ops = PrimeFieldOps(p)
    herm_rows = linear_map(lambda Om: F.sub(Om.T, tau(Om)))
    lams = [F.one]
    if allow_similarity:
        lams = [a for a in range(1, F.q) if F.in_subfield(np.array([a]), half)[0]]

    def action_rows(g, lam):
        return linear_map(lambda Om: F.sub(mat_mul(F, mat_mul(F, g.T, Om), tau(g)),
                                           F.mul(Om, lam)))

    sols = _search_scalars(G.gens, herm_rows, action_rows, lams, N, ops, 0, 1)
    if not sols:
        return None
    return _pick_form(F, n, sols, ops, lambda v: np.array(
        [F.code(v[u * k:(u + 1) * k]) for u in range(n * n)], dtype=np.int64).reshape(n, n))


# ---------------------------------------------------------------------------
# congruence subgroup certification

def congruence_index_check(L_gens, m, claimed_index, field, cap=DEFAULT_CAP):
    """Index of phi_m(L) in SL(2, O/mO) compared with the claimed |Gamma : L|.

    Returns (passed, found_index, image_order, ambient_order).
    """
    from .congruence import local_ring_of, reduce_matrix_mod
    from .residue import sl2_order_mod
    R = local_ring_of(m, field)
    mats = [reduce_matrix_mod(g, m) for g in L_gens]
    n = len(L_gens[0]) if L_gens else 2
    ambient = sl2_order_mod(m, field)
    if n != 2:
        raise ValueError("congruence_index_check supports degree 2")
    if sl2_subgroup_order(R, _elementary_gens(R)) != ambient:
        raise AssertionError("elementary matrices do not generate SL(2, O/mO)")
    G = FiniteMatGroup(R, 2, mats, cap, ambient_order=ambient)
    order = G.order
    if ambient % order:
        raise AssertionError("image order does not divide |SL(2, O/mO)|")
    found = ambient // order
    return found == claimed_index, found, order, ambient


__all__ = [
    "DEFAULT_CAP", "EnumerationCap", "FiniteMatGroup", "enumerate_group", "identity",
    "mat_mul", "mat_pow", "mat_inv", "mat_det", "mat_trace", "sl2_subgroup_order",
    "transvection_gens", "find_invariant_form", "congruence_index_check", "KeyPacker",
    "env_algebra_basis", "FiniteFieldOps", "PrimeFieldOps",
]
