import random

import pytest
import sympy
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_factor

from densesl.ideals import IdealError, common_ideals, conjugate_ideal, factor_rational_prime, \
    ideal_contains, ideals_up_to_norm, pi_of, single_generator
from densesl.nfield import NumberField, nf_norm
from densesl.polys import is_irreducible_mod_p, poly_factor_mod_p

x = sympy.Symbol("x")


def _sympy_factors(g, p):
    _, facs = gf_factor([int(c) for c in reversed(g)], p, ZZ)
    return sorted((tuple(int(c) % p for c in reversed(f)), e) for f, e in facs)


def test_factor_examples():
    assert poly_factor_mod_p([0, 1, 1], 2) == [([0, 1], 1), ([1, 1], 1)]
    assert poly_factor_mod_p([2, -1, 1], 3) == [([2, 2, 1], 1)]
    assert poly_factor_mod_p([1, 1, 1], 3) == [([2, 1], 2)]


@pytest.mark.parametrize("p", [2, 3, 5, 7, 13])
def test_factorization_matches_sympy(p):
    rng = random.Random(p)
    for _ in range(40):
        d = rng.randint(1, 7)
        g = [rng.randrange(p) for _ in range(d)] + [1]
        got = sorted((tuple(f), e) for f, e in poly_factor_mod_p(g, p))
        assert got == _sympy_factors(g, p)
        assert is_irreducible_mod_p(g, p) == (len(got) == 1 and got[0][1] == 1)


def test_factor_rational_prime_examples(O7, O3):
    (I3,) = factor_rational_prime(3, O7)
    assert I3.norm == 9 and I3.e == 1
    two = factor_rational_prime(2, O7)
    assert [I.norm for I in two] == [2, 2]
    (R,) = factor_rational_prime(3, O3)
    assert (R.e, R.norm) == (2, 3)
    with pytest.raises(IdealError):
        factor_rational_prime(4, O7)


@pytest.mark.parametrize("F", [NumberField([2, -1, 1]), NumberField([1, 1, 1]),
                               NumberField([5, 0, 1]), NumberField([1, 0, 1])])
def test_norm_product_and_degree_sum(F):
    for p in sympy.primerange(2, 200):
        ideals = factor_rational_prime(p, F)
        prod = 1
        for I in ideals:
            prod *= I.norm ** I.e
        assert prod == p ** F.m
        assert sum(I.e * I.k for I in ideals) == F.m
        for I in ideals:
            assert ideal_contains(I, F(p))
            assert not ideal_contains(I, F.one())


def test_split_ideals_are_conjugate(O7):
    for p in [2, 11, 23, 29, 43]:
        A, B = factor_rational_prime(p, O7)
        assert conjugate_ideal(A) == B and conjugate_ideal(B) == A


def test_pi_examples(O7):
    labels = sorted((I.p, I.norm) for I in pi_of(O7(78)))
    assert labels == [(2, 2), (2, 2), (3, 9), (13, 169)]
    (I,) = pi_of(O7(6) + O7.sqrt_d)
    assert I.norm == 43
    assert pi_of(O7.one()) == set()
    with pytest.raises(IdealError):
        pi_of(O7.zero())


def test_c2_ideal_contains_generator(O7):
    g = (O7(-1) + O7.sqrt_d) / 2
    (I,) = pi_of(g)
    assert I.norm == 2 and ideal_contains(I, g)
    assert I.label() == "(-1+sqrt(-7))/2"


def test_pi_multiplicative(O7, O3):
    rng = random.Random(11)
    for F in (O7, O3):
        for _ in range(50):
            a = F([rng.randint(-30, 30), rng.randint(-30, 30)])
            b = F([rng.randint(-30, 30), rng.randint(-30, 30)])
            if a.is_zero() or b.is_zero():
                continue
            assert pi_of(a * b) == pi_of(a) | pi_of(b)


def test_pi_excludes_mu(O7):
    a = O7([6, 0]) / 5
    assert {I.p for I in pi_of(a, O7, mu=5)} == {2, 3}
    assert {I.p for I in pi_of(O7(6), O7, mu=2)} == {3}


def test_common_ideals_is_intersection(O7):
    elems = [O7(78), O7(6) + O7.sqrt_d, O7(12)]
    assert common_ideals(elems, O7) == pi_of(elems[0]) & pi_of(elems[1]) & pi_of(elems[2])


def test_single_generators(O7, O3):
    for F in (O7, O3):
        for I in ideals_up_to_norm(F, 200):
            g = single_generator(I)
            assert abs(nf_norm(g)) == I.norm
            assert ideal_contains(I, g)


def test_table_labels(O7, O3):
    got = {I.norm: I.label() for I in ideals_up_to_norm(O7, 200)
           if I.label() in {"3", "-2+sqrt(-7)", "6+sqrt(-7)", "13"}}
    assert got == {9: "3", 11: "-2+sqrt(-7)", 43: "6+sqrt(-7)", 169: "13"}
    assert [I.label() for I in factor_rational_prime(3, O3)] == ["(-3+sqrt(-3))/2"]
    assert sorted(I.label() for I in factor_rational_prime(7, O3)) == \
        ["(-5+sqrt(-3))/2", "(5+sqrt(-3))/2"]


def test_json_shape(O7):
    (I,) = factor_rational_prime(3, O7)
    assert I.to_json() == {"p": 3, "gen2": [3, 0], "e": 1, "k": 2, "norm": 9}


def test_ideals_up_to_norm_count(O7):
    ideals = ideals_up_to_norm(O7, 300)
    assert all(I.norm <= 300 for I in ideals)
    assert ideals == sorted(ideals)
    # every split or ramified prime below 300 and every inert prime below sqrt(300)
    expected = 0
    for p in sympy.primerange(2, 301):
        if p == 7:
            expected += 1
        elif p == 2 or sympy.legendre_symbol(-7 % p, p) == 1:
            expected += 2
        else:
            expected += int(p * p <= 300)
    assert len(ideals) == expected
