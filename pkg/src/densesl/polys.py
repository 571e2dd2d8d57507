"""Dense univariate polynomials over F_p and Q.

Polynomials are lists of coefficients in ascending degree order, trimmed so
the last entry is nonzero.  The zero polynomial is ``[]``.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import gcd


def trim(f):
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def deg(f):
    return len(f) - 1


# ---------------------------------------------------------------------------
# F_p[x]

def pmod(f, p):
    return trim([c % p for c in f])


def padd(f, g, p):
    n = max(len(f), len(g))
    return trim([((f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0)) % p
                 for i in range(n)])


def psub(f, g, p):
    n = max(len(f), len(g))
    return trim([((f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0)) % p
                 for i in range(n)])


def pmul(f, g, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return trim([c % p for c in out])


def pdivmod(f, g, p):
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    f = list(f)
    inv = pow(g[-1], -1, p)
    dg = len(g) - 1
    q = [0] * max(len(f) - dg, 0)
    for i in range(len(f) - 1, dg - 1, -1):
        c = f[i] * inv % p
        if c:
            q[i - dg] = c
            for j in range(dg + 1):
                f[i - dg + j] = (f[i - dg + j] - c * g[j]) % p
    return trim(q), trim(f[:dg])


def prem(f, g, p):
    return pdivmod(f, g, p)[1]


def pmonic(f, p):
    if not f:
        return []
    inv = pow(f[-1], -1, p)
    return [c * inv % p for c in f]


def pgcd(f, g, p):
    f, g = pmod(f, p), pmod(g, p)
    while g:
        f, g = g, prem(f, g, p)
    return pmonic(f, p)


def ppowmod(f, e, m, p):
    result = [1]
    base = prem(f, m, p)
    while e:
        if e & 1:
            result = prem(pmul(result, base, p), m, p)
        base = prem(pmul(base, base, p), m, p)
        e >>= 1
    return result


def pderiv(f, p):
    return trim([(i * f[i]) % p for i in range(1, len(f))])


def _pth_root(f, p):
    # f(x) = g(x^p) over F_p; coefficients are fixed by Frobenius.
    return trim([f[i] for i in range(0, len(f), p)])


def squarefree_decomposition(f, p):
    """Return [(g, e), ...] with f = prod g^e, each g squarefree and monic."""
    f = pmonic(pmod(f, p), p)
    out = []
    _sqf(f, p, 1, out)
    merged = {}
    for g, e in out:
        if len(g) > 1:
            key = tuple(g)
            merged[key] = merged.get(key, 0) + e
    return [(list(k), e) for k, e in sorted(merged.items(), key=lambda t: (t[1], t[0]))]


def _sqf(f, p, mult, out):
    if len(f) <= 1:
        return
    df = pderiv(f, p)
    if not df:
        _sqf(_pth_root(f, p), p, mult * p, out)
        return
    c = pgcd(f, df, p)
    w = pdivmod(f, c, p)[0]
    i = 1
    while len(w) > 1:
        y = pgcd(w, c, p)
        z = pdivmod(w, y, p)[0]
        if len(z) > 1:
            out.append((pmonic(z, p), i * mult))
        i += 1
        w = y
        c = pdivmod(c, y, p)[0]
    if len(c) > 1:
        _sqf(_pth_root(c, p), p, mult * p, out)


def distinct_degree(f, p):
    """Split squarefree monic f into [(g_d, d)], g_d the product of degree-d factors."""
    out = []
    h = [0, 1]
    d = 0
    f = list(f)
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = ppowmod(h, p, f, p)
        g = pgcd(f, psub(h, [0, 1], p), p)
        if len(g) > 1:
            out.append((g, d))
            f = pdivmod(f, g, p)[0]
            h = prem(h, f, p)
    if len(f) > 1:
        out.append((pmonic(f, p), len(f) - 1))
    return out


def equal_degree(f, d, p, rng):
    """Split squarefree monic f whose irreducible factors all have degree d."""
    n = len(f) - 1
    if n == d:
        return [f]
    while True:
        a = trim([rng.randrange(p) for _ in range(n)])
        if len(a) <= 1:
            continue
        if p == 2:
            # trace map a + a^2 + ... + a^(2^(d-1)) over F_{2^d}
            t = a
            b = a
            for _ in range(d - 1):
                b = prem(pmul(b, b, 2), f, 2)
                t = padd(t, b, 2)
            g = pgcd(f, t, 2)
        else:
            g = pgcd(f, a, p)
            if 1 < len(g) < len(f):
                break
            b = ppowmod(a, (p ** d - 1) // 2, f, p)
            g = pgcd(f, psub(b, [1], p), p)
        if 1 < len(g) < len(f):
            break
    h = pdivmod(f, g, p)[0]
    return equal_degree(g, d, p, rng) + equal_degree(pmonic(h, p), d, p, rng)


def poly_factor_mod_p(g, p, seed=0):
    """Complete factorization of g over F_p as [(monic irreducible, multiplicity)].

    Factors are sorted by (degree, coefficient vector) so the output is
    reproducible.
    """
    g = pmod(g, p)
    if len(g) < 2:
        raise ValueError("need a polynomial of degree >= 1 mod p")
    rng = random.Random(seed)
    factors = []
    for sf, e in squarefree_decomposition(g, p):
        for gd, d in distinct_degree(sf, p):
            for irr in equal_degree(gd, d, p, rng):
                factors.append((pmonic(irr, p), e))
    factors.sort(key=lambda t: (len(t[0]), t[0][::-1], t[1]))
    return factors


def is_irreducible_mod_p(f, p):
    f = pmonic(pmod(f, p), p)
    k = len(f) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    # Rabin: x^(p^k) = x mod f and gcd(x^(p^(k/r)) - x, f) = 1 for primes r | k
    x = [0, 1]
    if ppowmod(x, p ** k, f, p) != prem(x, f, p):
        return False
    for r in _prime_divisors(k):
        h = psub(ppowmod(x, p ** (k // r), f, p), x, p)
        if len(pgcd(f, h, p)) > 1:
            return False
    return True


def _prime_divisors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# Q[x] (coefficients are int or Fraction)

def qadd(f, g):
    n = max(len(f), len(g))
    return trim([(f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0) for i in range(n)])


def qsub(f, g):
    n = max(len(f), len(g))
    return trim([(f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0) for i in range(n)])


def qmul(f, g):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return trim(out)


def qdivmod(f, g):
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    f = [Fraction(c) for c in f]
    dg = len(g) - 1
    lead = Fraction(g[-1])
    q = [Fraction(0)] * max(len(f) - dg, 0)
    for i in range(len(f) - 1, dg - 1, -1):
        c = f[i] / lead
        if c:
            q[i - dg] = c
            for j in range(dg + 1):
                f[i - dg + j] -= c * g[j]
    return trim(_norm(q)), trim(_norm(f[:dg]))


def _norm(coeffs):
    return [int(c) if isinstance(c, Fraction) and c.denominator == 1 else c for c in coeffs]


def qderiv(f):
    return trim([i * f[i] for i in range(1, len(f))])


def qgcd(f, g):
    f, g = trim(f), trim(g)
    while g:
        f, g = g, qdivmod(f, g)[1]
    if not f:
        return []
    lead = Fraction(f[-1])
    return _norm([Fraction(c) / lead for c in f])


def cyclotomic(t):
    """Integer coefficients of the t-th cyclotomic polynomial."""
    num = [-1] + [0] * (t - 1) + [1]
    for d in range(1, t):
        if t % d == 0:
            num = qdivmod(num, cyclotomic(d))[0]
    return [int(c) for c in num]


def euler_phi(t):
    result = t
    for r in _prime_divisors(t):
        result -= result // r
    return result


def charpoly(M):
    """Characteristic polynomial det(xI - M) of a square rational matrix.

    Faddeev-LeVerrier recursion, exact over Q.
    """
    n = len(M)
    M = [[Fraction(x) for x in row] for row in M]
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    Mk = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # Mk = M * (Mk_prev + c_{n-k+1} I)
        prev = [[Mk[i][j] + (coeffs[n - k + 1] if i == j else 0) for j in range(n)]
                for i in range(n)]
        Mk = [[sum(M[i][l] * prev[l][j] for l in range(n)) for j in range(n)]
              for i in range(n)]
        coeffs[n - k] = -sum(Mk[i][i] for i in range(n)) / k
    return _norm(coeffs)


def poly_eval_matrix(f, M):
    """Evaluate polynomial f at square matrix M by Horner's rule."""
    n = len(M)
    acc = [[Fraction(0)] * n for _ in range(n)]
    for c in reversed(f):
        acc = [[sum(acc[i][l] * M[l][j] for l in range(n)) + (c if i == j else 0)
                for j in range(n)] for i in range(n)]
    return acc


def gcd_list(values):
    g = 0
    for v in values:
        g = gcd(g, v)
    return g
