import random
from fractions import Fraction

import pytest

from kummer.exactalg import (
    ExponentMultiset,
    IntPolynomial,
    NotProductOfCyclotomics,
    age,
    char_poly,
    cyclotomic_factor,
    cyclotomic_polynomial,
    det_one_plus_t,
    exponent_multiset,
    hermite_normal_form,
    identity_matrix,
    kernel_basis,
    mat_det,
    mat_mul,
    mat_sub,
    smith_normal_form,
)
from kummer.catalog import standard_rep_matrix


Z6_GEN = ((0, -1), (1, 1))
FOUR_CYCLE_STD = standard_rep_matrix((1, 2, 3, 0), 4)


class TestIntPolynomial:
    def test_arithmetic(self):
        p = IntPolynomial([1, 2]) * IntPolynomial([1, -2]) + 4
        assert p == IntPolynomial([5, 0, -4])
        assert p(2) == -11
        assert (IntPolynomial([0, 1]) ** 5).degree == 5

    def test_palindromic(self):
        assert IntPolynomial([1, 0, 22, 0, 1]).is_palindromic()
        assert not IntPolynomial([1, 0, 1, 1]).is_palindromic()
        assert IntPolynomial([0, 1, 1]).reciprocal(2) == IntPolynomial([1, 1])

    def test_exact_division(self):
        assert IntPolynomial([2, 4]).divide_exact(2) == IntPolynomial([1, 2])
        with pytest.raises(ValueError):
            IntPolynomial([1, 2]).divide_exact(2)


class TestCharPoly:
    def test_order_six_generator(self):
        assert char_poly(Z6_GEN) == IntPolynomial([1, -1, 1])

    def test_identity(self):
        assert char_poly(identity_matrix(4)) == IntPolynomial([-1, 1]) ** 4

    def test_four_cycle_standard(self):
        # x^3 + x^2 + x + 1
        assert char_poly(FOUR_CYCLE_STD) == IntPolynomial([1, 1, 1, 1])

    def test_det_one_plus_t_matches_eigenvalues(self):
        assert det_one_plus_t(Z6_GEN) == IntPolynomial([1, 1, 1])
        assert det_one_plus_t(identity_matrix(2), 2) == IntPolynomial([1, 2, 1]) ** 2


class TestCyclotomic:
    def test_small_table(self):
        assert cyclotomic_polynomial(1) == IntPolynomial([-1, 1])
        assert cyclotomic_polynomial(2) == IntPolynomial([1, 1])
        assert cyclotomic_polynomial(6) == IntPolynomial([1, -1, 1])
        assert cyclotomic_polynomial(12) == IntPolynomial([1, 0, -1, 0, 1])

    def test_factor_examples(self):
        assert cyclotomic_factor(IntPolynomial([1, -1, 1])) == {6: 1}
        assert cyclotomic_factor(IntPolynomial([-1, 1]) ** 3) == {1: 3}
        assert cyclotomic_factor(IntPolynomial([1, 1, 1, 1])) == {2: 1, 4: 1}

    def test_infinite_order_rejected(self):
        with pytest.raises(NotProductOfCyclotomics):
            cyclotomic_factor(char_poly(((1, 1), (0, 1))) + IntPolynomial([1]))
        with pytest.raises(NotProductOfCyclotomics):
            cyclotomic_factor(IntPolynomial([-1, -1, 1]))  # golden ratio

    def test_reconstruction(self):
        # the exponent multiset re-expands to the characteristic polynomial
        for m in [Z6_GEN, FOUR_CYCLE_STD, ((-1, 0, 0), (0, -1, 0), (0, 0, 1))]:
            factors = cyclotomic_factor(char_poly(m))
            product = IntPolynomial.one()
            for k, mult in factors.items():
                product = product * cyclotomic_polynomial(k) ** mult
            assert product == char_poly(m)
            assert len(exponent_multiset(m)) == len(m)


class TestExponentsAndAge:
    def test_z6_exponents(self):
        assert exponent_multiset(Z6_GEN).entries == (
            Fraction(1, 6), Fraction(5, 6),
        )

    def test_identity_and_diag(self):
        assert exponent_multiset(identity_matrix(3)).entries == (0, 0, 0)
        diag = ((-1, 0, 0), (0, -1, 0), (0, 0, 1))
        assert exponent_multiset(diag).entries == (0, Fraction(1, 2), Fraction(1, 2))

    def test_age_examples(self):
        assert age(exponent_multiset(identity_matrix(5)), 3) == 0
        diag = ((-1, 0, 0), (0, -1, 0), (0, 0, 1))
        assert age(exponent_multiset(diag), 1) == 1
        transposition = standard_rep_matrix((1, 0, 2, 3), 4)
        assert age(exponent_multiset(transposition), 2) == 1
        assert age(exponent_multiset(FOUR_CYCLE_STD), 2) == 3

    def test_age_pairs_with_inverse(self):
        # exponents pair a <-> 1-a between a matrix and its inverse
        from kummer.exactalg import mat_inverse_unimodular

        for m in [Z6_GEN, FOUR_CYCLE_STD]:
            e = exponent_multiset(m)
            ei = exponent_multiset(mat_inverse_unimodular(m))
            nonzero = sum(1 for x in e.entries if x != 0)
            assert age(e, 2) + age(ei, 2) == 2 * nonzero
            assert ei == e.conjugate()


class TestNormalForms:
    def test_spec_examples(self):
        assert smith_normal_form(((2, 0, 0), (0, 2, 0), (0, 0, 0))).divisors == (2, 2)
        three_cycle = ((0, 0, 1), (1, 0, 0), (0, 1, 0))
        m = mat_sub(identity_matrix(3), three_cycle)
        assert smith_normal_form(m).divisors == (1, 1)
        order3 = ((-1, -1), (1, 0))
        m = mat_sub(identity_matrix(2), order3)
        assert smith_normal_form(m).divisors == (1, 3)

    def test_determinant_is_product_of_divisors(self):
        random.seed(7)
        for _ in range(200)        :
            n = random.randint(1, 4)
            m = tuple(tuple(random.randint(-5, 5) for _ in range(n)) for _ in range(n))
            det = mat_det(m)
            snf = smith_normal_form(m)
            if det != 0:
                prod = 1
                for d in snf.divisors:
                    prod *= d
                assert prod == abs(det)

    def test_transforms_unimodular(self):
        random.seed(11)
        for _ in range(100):
            rows = random.randint(1, 3)
            cols = random.randint(1, 4)
            m = tuple(tuple(random.randint(-6, 6) for _ in range(cols))
                      for _ in range(rows))
            snf = smith_normal_form(m)
            assert mat_det(snf.u) in (1, -1)
            assert mat_det(snf.v) in (1, -1)
            assert mat_mul(mat_mul(snf.u, m), snf.v) == snf.d

    def test_hermite_and_kernel(self):
        assert hermite_normal_form(((2, 4), (1, 1))) == ((1, 1), (0, 2))
        kb = kernel_basis(((1, 1, 1),))
        assert kb == ((1, 0, -1), (0, 1, -1))
        # kernel vectors are killed
        for row in kb:
            assert sum(row) == 0
