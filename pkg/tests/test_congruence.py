import random
from fractions import Fraction

import numpy as np
import pytest

from densesl.congruence import ReductionError, ReductionMap, local_ring_of, reduce_element, \
    reduce_group, reduce_matrix, reduce_matrix_mod
from densesl.fingrp import FiniteMatGroup
from densesl.fingrp import mat_det as fdet
from densesl.ideals import factor_rational_prime, ideal_contains, ideals_up_to_norm
from densesl.matgroup import make_group
from densesl.nfmat import mat_det, mat_mul
from densesl.words import swan_generators


def _ideal(F, p, norm=None, index=0):
    ideals = [I for I in factor_rational_prime(p, F) if norm is None or I.norm == norm]
    return ideals[index]


def test_alpha_maps_to_zero_at_x_factor(O7):
    I = next(I for I in factor_rational_prime(2, O7) if list(I.modpoly) == [0, 1])
    assert reduce_element(O7.alpha, I) == 0
    # the ideal with C_2 image is the other one, containing alpha - 1
    J = next(I for I in factor_rational_prime(2, O7) if list(I.modpoly) == [1, 1])
    assert ideal_contains(J, O7.alpha - 1)


def test_simple_reductions(O7):
    for I in ideals_up_to_norm(O7, 30):
        assert reduce_element(O7.one(), I) == 1
    I5 = factor_rational_prime(5, O7)[0]
    assert reduce_element(O7(Fraction(1, 3)), I5) == 2
    with pytest.raises(ReductionError):
        reduce_element(O7(Fraction(1, 3)), factor_rational_prime(3, O7)[0])


def test_identity_and_transvection(O3):
    I2 = factor_rational_prime(2, O3)[0]
    eye = ((O3.one(), O3.zero()), (O3.zero(), O3.one()))
    assert (reduce_matrix(eye, I2) == np.eye(2, dtype=np.int64)).all()
    t = swan_generators(O3)["t"]
    assert reduce_matrix(t, I2).tolist() == [[1, 1], [0, 1]]


def test_table_generator_mod_3(O7, H51):
    I3 = factor_rational_prime(3, O7)[0]
    a = O7([19, -1])
    M = reduce_matrix(((O7.one(), O7.zero()), (a, O7.one())), I3)
    assert M[0, 1] == 0 and M[1, 0] != 0 and M[0, 0] == M[1, 1] == 1


def test_reduce_group_examples(O7, H51):
    trivial = make_group([((O7.one(), O7.zero()), (O7.zero(), O7.one()))], O7)
    I = factor_rational_prime(5, O7)[0]
    imgs = reduce_group(trivial, I)
    assert len(imgs) == 1 and (imgs[0] == np.eye(2)).all()
    c2 = next(I for I in factor_rational_prime(2, O7) if ideal_contains(I, O7.alpha - 1))
    assert FiniteMatGroup(c2.residue_field(), 2, reduce_group(H51, c2)).order == 2
    (I13,) = factor_rational_prime(13, O7)
    G = FiniteMatGroup(I13.residue_field(), 2, reduce_group(H51, I13))
    assert len(G.elements) == 2184


def test_reduction_at_mu_is_an_error(O7):
    H = make_group([((O7(2), O7.zero()), (O7.zero(), O7(Fraction(1, 2))))], O7)
    assert H.mu == 2
    with pytest.raises(ReductionError):
        reduce_group(H, factor_rational_prime(2, O7)[0])
    with pytest.raises(ReductionError):
        reduce_group(H, 6)
    # mod 3 the generator and its inverse coincide, so one image survives
    assert len(reduce_group(H, factor_rational_prime(3, O7)[0])) == 1
    assert len(reduce_group(H, factor_rational_prime(5, O7)[0])) == 2


def _rand_elem(F, rng, mu=1):
    den = mu ** rng.randint(0, 2)
    return F([Fraction(rng.randint(-50, 50), den) for _ in range(F.m)])


def _ten_ideals(O7, O3):
    out = []
    for F in (O7, O3):
        out += [I for I in ideals_up_to_norm(F, 30, mu=5)][:5]
    return out


def test_homomorphism_laws(O7, O3):
    rng = random.Random(17)
    ideals = _ten_ideals(O7, O3)
    assert len(ideals) == 10
    for I in ideals:
        phi = ReductionMap(I.field, I, mu=5)
        R = phi.ring
        assert phi(0) == 0 and phi(1) == R.one
        for _ in range(1000):
            a, b = _rand_elem(I.field, rng, 5), _rand_elem(I.field, rng, 5)
            assert phi(a + b) == R.sadd(phi(a), phi(b))
            assert phi(a * b) == R.smul(phi(a), phi(b))


def test_kernel_is_the_ideal(O7):
    rng = random.Random(4)
    for I in ideals_up_to_norm(O7, 50):
        for _ in range(100):
            a = O7([rng.randint(-40, 40), rng.randint(-40, 40)])
            assert (reduce_element(a, I) == 0) == ideal_contains(I, a)
            assert reduce_element(a * O7(I.p), I) == 0


def test_det_commutes(O3):
    rng = random.Random(8)
    S = swan_generators(O3)
    words = list(S.values())
    for I in ideals_up_to_norm(O3, 40):
        R = I.residue_field()
        for _ in range(20):
            M = mat_mul(rng.choice(words), rng.choice(words))
            assert fdet(R, reduce_matrix(M, I)) == reduce_element(mat_det(M), I)
    # and modulo an integer
    M = mat_mul(S["t"], S["l"])
    R = local_ring_of(24, O3)
    assert fdet(R, reduce_matrix_mod(M, 24)) == R.one
