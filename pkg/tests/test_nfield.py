import random
from fractions import Fraction

import pytest
import sympy

from densesl.nfield import FieldError, NumberField, make_field, nf_norm, nf_trace, quadratic_field, \
    trace_form_det

x = sympy.Symbol("x")


def test_eisenstein_field(O3):
    assert O3.m == 2
    assert O3.disc_field == -3
    assert trace_form_det(O3.integral_basis, O3) == -3


def test_sqrt_minus_7(O7):
    assert O7.disc_field == -7
    # Gram matrix [[2,1],[1,-3]] of the basis {1, alpha}
    assert trace_form_det([O7.one(), O7.alpha], O7) == -7


def test_reducible_and_nonmonic_rejected():
    with pytest.raises(FieldError):
        make_field([-1, 0, 1])
    with pytest.raises(FieldError):
        make_field([1, 0, 2])


def test_non_quadratic_needs_integral_basis():
    with pytest.raises(FieldError):
        NumberField([-2, 0, 0, 1])
    F = NumberField([-2, 0, 0, 1], [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert F.disc_field == -108


def test_table_norms(O7):
    s = O7.sqrt_d
    assert nf_norm((O7(-1) + s) / 2) == 2
    assert nf_norm(O7(6) + s) == 43
    assert nf_norm(O7(-2) + s) == 11
    assert nf_trace(O7.one()) == 2 and nf_norm(O7.one()) == 1


def test_trace_form_det_examples(O7):
    s = O7.sqrt_d
    assert trace_form_det([O7.one(), s], O7) == -28
    assert trace_form_det([O7.one(), O7.one()], O7) == 0
    with pytest.raises(FieldError):
        trace_form_det([O7.one()], O7)


@pytest.mark.parametrize("d", [1, 2, 3, 5, 7, 11, 15, 19, 43, 163])
def test_quadratic_discriminants(d):
    F = quadratic_field(d)
    expected = -d if d % 4 == 3 else -4 * d
    assert F.disc_field == expected
    assert trace_form_det(F.integral_basis, F) == expected


def _sym(a):
    """sympy expression of an element, as an independent oracle."""
    F = a.field
    root = sympy.CRootOf(sympy.Poly(list(reversed(F.minpoly)), x), 0)
    return sum(sympy.Rational(c.numerator, c.denominator) * root ** i
               for i, c in enumerate(a.coeffs))


def _rand(F, rng):
    return F([Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(F.m)])


@pytest.mark.parametrize("minpoly", [[2, -1, 1], [1, 1, 1], [5, 0, 1]])
def test_arithmetic_against_sympy(minpoly):
    F = NumberField(minpoly)
    rng = random.Random(7)
    for _ in range(20):
        a, b = _rand(F, rng), _rand(F, rng)
        prod = sympy.N(_sym(a * b) - _sym(a) * _sym(b), 30)
        assert abs(prod) < 1e-20
        if not b.is_zero():
            assert abs(sympy.N(_sym(a / b) - _sym(a) / _sym(b), 30)) < 1e-20
        # norm = product of conjugates: resultant oracle
        poly = sympy.Poly(list(reversed([sympy.Rational(c.numerator, c.denominator)
                                         for c in a.coeffs])), x)
        f = sympy.Poly(list(reversed(F.minpoly)), x)
        assert sympy.resultant(f, poly) == sympy.Rational(nf_norm(a))


def test_norm_multiplicative_trace_additive(O7):
    rng = random.Random(3)
    for _ in range(100):
        a, b = _rand(O7, rng), _rand(O7, rng)
        assert nf_norm(a * b) == nf_norm(a) * nf_norm(b)
        assert nf_trace(a + b) == nf_trace(a) + nf_trace(b)


def test_field_axioms_random_triples(O3):
    rng = random.Random(5)
    for _ in range(100):
        a, b, c = (_rand(O3, rng) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c


def test_integrality(O7):
    assert O7.is_integral(O7.alpha)
    assert O7.is_integral((O7(1) + O7.sqrt_d) / 2)
    assert not O7.is_integral(O7.alpha / 2)
    assert O7.to_integral_basis(O7.alpha) == [0, 1]


def test_disc_relation(O7, O3):
    for F in (O7, O3):
        c2 = Fraction(F.disc_alpha, F.disc_field)
        assert c2.denominator == 1 and int(c2) == F.index ** 2


def test_printing(O7):
    assert str(O7.alpha) == "(1+sqrt(-7))/2"
    assert str(O7(6) + O7.sqrt_d) == "6+sqrt(-7)"
