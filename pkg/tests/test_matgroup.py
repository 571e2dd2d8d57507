import itertools
import random
from fractions import Fraction

import pytest
import sympy

from densesl.ideals import common_ideals, ideals_up_to_norm
from densesl.lattice import ZModuleBasis
from densesl.matgroup import GroupError, Inconclusive, adjoint_matrix, adjoint_rep, \
    basis_algebra_closure, basis_env_algebra, derived_normal_gens, derived_trace_ring, \
    env_algebra_dim, finite_order, gram_discriminant, infinite_order_element, integral_coords, \
    iterated_commutator, make_group, trace_ring
from densesl.nfield import NumberField
from densesl.nfmat import entries, mat_det, mat_identity, mat_inverse, mat_mul, mat_sub, mat_trace


def M(F, rows):
    return tuple(tuple(F(x) for x in r) for r in rows)


def test_make_group(O7, H51):
    assert H51.mu == 1 and H51.n == 2
    assert len(H51.gens) == 4
    for g in H51.gens:
        assert mat_inverse(g) in H51.gens
    trivial = make_group([M(O7, [[1, 0], [0, 1]])], O7)
    assert trivial.gens == [mat_identity(O7, 2)]
    with pytest.raises(GroupError):
        make_group([M(O7, [[2, 0], [0, 1]])], O7)
    with pytest.raises(GroupError):
        make_group([M(O7, [[1, 0], [0, 1]]), M(O7, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])], O7)


def test_mu_is_radical(O7):
    H = make_group([M(O7, [[4, 0], [0, Fraction(1, 4)]])], O7)
    assert H.mu == 2


def test_env_algebra_examples(O7, H51):
    assert env_algebra_dim([mat_identity(O7, 2)]) == 1
    assert env_algebra_dim(H51.gens, "P") == 4


def _flat_q(A):
    return [c for x in entries(A) for c in x.coeffs]


def test_adjoint_dimension_against_rank_oracle(H51):
    Ad = adjoint_rep(H51)
    assert env_algebra_dim(Ad.gens, "P") == 9
    # oracle: Q-rank of products of up to three generators, lifted to P by
    # multiplying with alpha (a P-span of dimension 9 has Q-dimension 18)
    F = H51.field
    prods = [mat_identity(F, 3)]
    for length in range(1, 4):
        for word in itertools.product(Ad.gens, repeat=length):
            g = word[0]
            for h in word[1:]:
                g = mat_mul(g, h)
            prods.append(g)
    alpha = F.alpha
    rows = [_flat_q(g) for g in prods]
    rows += [_flat_q(tuple(tuple(alpha * x for x in r) for r in g)) for g in prods]
    assert sympy.Matrix(rows).rank() == 18


def test_env_dim_conjugation_invariant(O7, H51):
    rng = random.Random(3)
    for _ in range(5):
        g = H51.gens[rng.randrange(4)]
        for _ in range(3):
            g = mat_mul(g, H51.gens[rng.randrange(4)])
        conj = [mat_mul(mat_mul(g, x), mat_inverse(g)) for x in H51.gens]
        assert env_algebra_dim(conj) == env_algebra_dim(H51.gens)
    # reducible example is invariant too
    upper = [M(O7, [[1, 1], [0, 1]])]
    conj = [mat_mul(mat_mul(H51.gens[0], upper[0]), mat_inverse(H51.gens[0]))]
    assert env_algebra_dim(upper) == env_algebra_dim(conj) == 2


def test_env_algebra_products_lie_in_group(H51):
    A, _ = basis_env_algebra(H51.gens, "P")
    assert all(mat_det(a) == 1 for a in A)


def test_trace_ring_table_group(O7, H51):
    tr = trace_ring(H51)
    assert tr.index == 78
    expected = ZModuleBasis(2, [[2, 0], integral_coords(O7([55, -39]))])
    assert tr.span.basis == expected.basis
    # (71 - 39 sqrt(-7))/2 is 55 - 39 alpha
    assert O7([55, -39]) == (O7(71) - 39 * O7.sqrt_d) / 2
    assert tr.unital_index == 39


def test_trace_ring_closed_under_products(H51):
    tr = trace_ring(H51)
    F = H51.field
    for mod in (tr.ring, tr.unital):
        elems = [F.from_integral_basis(r) for r in mod.basis]
        for a in elems:
            for b in elems:
                assert mod.contains(integral_coords(a * b))


def test_trace_ring_small_cases(O7, O3):
    trivial = make_group([mat_identity(O7, 2)], O7)
    tr = trace_ring(trivial)
    assert tr.span.basis == [[2, 0]] and tr.unital.basis == [[1, 0]]
    H = make_group([M(O3, [[0, -1], [1, O3.alpha]])], O3)  # trace alpha
    assert trace_ring(H).span.rank == 2
    with pytest.raises(GroupError):
        trace_ring(make_group([M(O7, [[2, 0], [0, Fraction(1, 2)]])], O7))


def test_derived_machinery(O7, H51):
    diag = make_group([M(O7, [[2, 0], [0, Fraction(1, 2)]])], O7)
    K = derived_normal_gens(diag)
    assert K == [mat_identity(O7, 2)]
    A, mod = basis_algebra_closure(K, diag.gens)
    assert len(A) == 1
    dtr, A = derived_trace_ring(H51)
    assert dtr.unital.rank == 2  # complete, so the subfield set is finite
    assert dtr.span_index == 78 and dtr.unital_index == 39


def test_normal_set_adds_nothing(O7, H51):
    # the set of all conjugates of a central element is itself
    minus = M(O7, [[-1, 0], [0, -1]])
    A, mod = basis_algebra_closure([minus], H51.gens)
    # conjugation adds nothing, and the ring generated by {1, -1} is Z
    assert mod.rank == 1 and len(A) == 1


def test_iterated_commutator(O7, H51):
    Qf = NumberField([1, 1, 1])
    sl2z = make_group([M(Qf, [[1, 1], [0, 1]]), M(Qf, [[0, -1], [1, 0]])], Qf)
    g = iterated_commutator(sl2z, 4, seed=1)
    assert g != mat_identity(Qf, 2)
    abelian = make_group([M(O7, [[1, 1], [0, 1]]), M(O7, [[1, O7.alpha], [0, 1]])], O7)
    with pytest.raises(Inconclusive):
        iterated_commutator(abelian, 0, seed=1, budget=8)
    g = iterated_commutator(H51, 4, seed=1)
    nz = [x for x in entries(mat_sub(g, mat_identity(O7, 2))) if not x.is_zero()]
    found = {I.norm for I in common_ideals(nz, O7)}
    assert {2, 9, 11, 43} <= found


def test_adjoint_examples(O7):
    I3 = adjoint_matrix(mat_identity(O7, 2))
    assert I3 == mat_identity(O7, 3)
    u = O7([1, 1])
    g = M(O7, [[u, 0], [0, 1 / u]])
    A = adjoint_matrix(g)
    assert [A[i][i] for i in range(3)] == [u * u, 1 / (u * u), O7.one()]
    assert all(A[i][j].is_zero() for i in range(3) for j in range(3) if i != j)


def test_adjoint_trace_and_homomorphism(H51):
    rng = random.Random(9)
    gens = H51.gens
    for _ in range(20):
        g = mat_mul(gens[rng.randrange(4)], gens[rng.randrange(4)])
        h = mat_mul(gens[rng.randrange(4)], gens[rng.randrange(4)])
        assert mat_trace(adjoint_matrix(g)) == mat_trace(g) * mat_trace(mat_inverse(g)) - 1
        assert adjoint_matrix(mat_mul(g, h)) == mat_mul(adjoint_matrix(g), adjoint_matrix(h))


def test_finite_order_examples(O7):
    assert finite_order(M(O7, [[1, 1], [0, 1]])) == (False, None)
    assert finite_order(M(O7, [[0, -1], [1, 0]])) == (True, 4)
    assert finite_order(mat_identity(O7, 2)) == (True, 1)


def test_finite_order_vs_brute_force(O3):
    vals = range(-2, 3)
    e = mat_identity(O3, 2)
    checked = 0
    for a, b, c, d in itertools.product(vals, repeat=4):
        if a * d - b * c != 1:
            continue
        g = M(O3, [[a, b], [c, d]])
        y, order = g, None
        for t in range(1, 25):
            if y == e:
                order = t
                break
            y = mat_mul(y, g)
        assert finite_order(g) == ((True, order) if order else (False, None))
        checked += 1
    assert checked > 20


def test_infinite_order_element(H51, O7):
    h = infinite_order_element(H51, seed=1)
    assert not finite_order(h)[0]
    finite = make_group([M(O7, [[0, -1], [1, 0]])], O7)
    with pytest.raises(Inconclusive):
        infinite_order_element(finite, seed=1, budget=10)


def test_ideals_with_full_env_algebra_mod_small_primes(H51):
    # the env-algebra discriminant is nonzero, so only finitely many ideals lose
    # absolute irreducibility
    A, _ = basis_env_algebra(H51.gens, "P")
    assert not gram_discriminant(A).is_zero()
    assert len(ideals_up_to_norm(H51.field, 50)) > 10
