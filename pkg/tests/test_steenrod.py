import pytest
from django.test import SimpleTestCase

from steenrod.algebra import (
    MilnorElement, SteenrodElement, adem_reduce, algebra_basis, basis_convert, binomial_mod2, conjugate,
    excess, is_admissible, iter_basis, milnor_basis, milnor_multiply, multiply, profile, top_degree,
)
from steenrod.dual import dual_action, monomials
from steenrod.exceptions import AlgebraMismatchError, NotInSubalgebraError, NotationError
from steenrod.notation import parse_element
from steenrod.tables import get_tables


def milnor(algebra, *r):
    return MilnorElement.from_terms(algebra, [tuple(r)])


class AdemTest(SimpleTestCase):
    """Test cases for Adem reduction and the admissible basis"""

    def test_sq2_sq2(self):
        """Test Sq2 Sq2 = Sq3 Sq1"""
        self.assertEqual(adem_reduce([2, 2]).terms, frozenset({(3, 1)}))

    def test_sq1_sq1_vanishes(self):
        """Test Sq1 Sq1 = 0"""
        self.assertTrue(adem_reduce([1, 1]).is_zero())

    def test_admissible_words_are_fixed(self):
        """Test that admissible words reduce to themselves"""
        self.assertEqual(adem_reduce([4, 2, 1]).terms, frozenset({(4, 2, 1)}))
        self.assertTrue(is_admissible((4, 2, 1)))
        self.assertFalse(is_admissible((2, 2)))
        self.assertEqual(excess((4, 2, 1)), 1)

    def test_negative_exponent(self):
        """Test that negative exponents are rejected"""
        with self.assertRaises(ValueError):
            adem_reduce([2, -1])


class MilnorTest(SimpleTestCase):
    """Test cases for the Milnor basis and basis conversion"""

    def test_sq2_squared(self):
        """Test Sq(2) Sq(2) = Sq(1,1)"""
        product = milnor_multiply(milnor('A', 2), milnor('A', 2))
        self.assertEqual(product.terms, frozenset({(1, 1)}))

    def test_conversion_agrees_with_product(self):
        """Test that Sq3 Sq1 converts to Sq(1,1)"""
        self.assertEqual(basis_convert(adem_reduce([3, 1])), milnor('A', 1, 1))
        self.assertEqual(basis_convert(milnor('A', 1, 1)), adem_reduce([3, 1]))

    def test_products_agree_in_degree_four(self):
        """Test multiply against milnor_multiply for Sq1 times Sq3"""
        x, y = adem_reduce([1]), adem_reduce([3])
        self.assertEqual(basis_convert(multiply(x, y)), milnor_multiply(basis_convert(x), basis_convert(y)))

    def test_basis_sizes(self):
        """Test dim A(1) = 8 and dim A(2) = 64"""
        self.assertEqual(top_degree('A1'), 6)
        self.assertEqual(top_degree('A2'), 23)
        self.assertEqual(len(list(iter_basis('A1'))), 8)
        self.assertEqual(len(list(iter_basis('A2'))), 64)
        self.assertEqual(sum(len(milnor_basis('A2', d)) for d in range(24)), 64)

    def test_profiles(self):
        """Test that A(n) bounds r_j below 2^(n+2-j)"""
        self.assertEqual(profile('A1'), (4, 2))
        self.assertEqual(profile('A2'), (8, 4, 2))
        self.assertIsNone(profile('A'))
        self.assertEqual(len(milnor_basis('A1', 3)), 2)

    def test_subalgebra_basis_is_not_admissible(self):
        """Test that the degree-5 basis element of A(1) is Sq5 + Sq4 Sq1"""
        basis = algebra_basis('A1', 5)
        self.assertEqual(len(basis), 1)
        self.assertEqual(basis[0].terms, frozenset({(5,), (4, 1)}))

    def test_membership(self):
        """Test that Sq4 is not in A(1)"""
        with self.assertRaises(NotInSubalgebraError):
            SteenrodElement.from_terms('A1', [(4,)])

    def test_mixed_algebras(self):
        """Test that elements of different algebras do not multiply"""
        with self.assertRaises(AlgebraMismatchError):
            multiply(adem_reduce([1], 'A1'), adem_reduce([1], 'A2'))


class ConjugationTest(SimpleTestCase):
    """Test cases for the antipode"""

    def test_low_degrees(self):
        """Test chi(Sq1) = Sq1, chi(Sq2) = Sq2 and chi(Sq4) = Sq4 + Sq3 Sq1"""
        self.assertEqual(conjugate(adem_reduce([1])), adem_reduce([1]))
        self.assertEqual(conjugate(adem_reduce([2])), adem_reduce([2]))
        self.assertEqual(conjugate(adem_reduce([4])).terms, frozenset({(4,), (3, 1)}))

    def test_involution(self):
        """Test chi(chi(x)) = x on the admissible basis through degree 8"""
        for d in range(1, 9):
            for x in algebra_basis('A', d):
                self.assertEqual(conjugate(conjugate(x)), x)


class NotationTest(SimpleTestCase):
    """Test cases for parsing element text"""

    def test_forms(self):
        """Test the accepted notations for Sq5 Sq1"""
        expected = adem_reduce([5, 1])
        for text in ('Sq(5,1)', 'Sq5Sq1', 'Sq^5 Sq^1', 'Sq^{5,1}'):
            self.assertEqual(parse_element(text), expected)

    def test_milnor_and_sums(self):
        """Test Milnor notation and sums"""
        self.assertEqual(parse_element('M(0,1)'), adem_reduce([3]) + adem_reduce([2, 1]))
        self.assertTrue(parse_element('Sq2Sq2 + Sq3Sq1').is_zero())

    def test_tagged(self):
        """Test that parsing checks the algebra tag"""
        self.assertEqual(parse_element('Sq4', 'A2').algebra, 'A2')
        with self.assertRaises(NotInSubalgebraError):
            parse_element('Sq4', 'A1')

    def test_bad_text(self):
        """Test that unparseable text is rejected"""
        with self.assertRaises(NotationError):
            parse_element('Sq(2')
        with self.assertRaises(NotationError):
            parse_element('Sq1 + Sq2')


class BinomialTest(SimpleTestCase):
    """Test cases for binomial coefficients mod 2"""

    def test_lucas(self):
        """Test binomial coefficients of positive and negative tops"""
        self.assertEqual(binomial_mod2(5, 2), 0)
        self.assertEqual(binomial_mod2(6, 2), 1)
        self.assertEqual(binomial_mod2(-9, 4), 1)
        self.assertEqual(binomial_mod2(-2, 1), 0)
        self.assertEqual(binomial_mod2(3, -1), 0)


class DualTest(SimpleTestCase):
    """Test cases for the dual Steenrod algebra action"""

    def test_action_on_zeta(self):
        """Test Sq1 z1^2 = 0, Sq2 z1^2 = 1 and Sq1 z2 = z1^2"""
        self.assertEqual(dual_action(adem_reduce([1]), [(2,)]), frozenset())
        self.assertEqual(dual_action(adem_reduce([2]), [(2,)]), frozenset({()}))
        self.assertEqual(dual_action(adem_reduce([1]), [(0, 1)]), frozenset({(2,)}))

    def test_monomials(self):
        """Test the zeta monomials through degree 3"""
        self.assertEqual(monomials(3), [(), (1,), (2,), (0, 1), (3,)])


class TablesTest(SimpleTestCase):
    """Test cases for the multiplication tables"""

    def setUp(self):
        self.tables = get_tables('A2')

    def test_basis(self):
        """Test that the tables list every Milnor basis element of A(2)"""
        self.assertEqual(len(self.tables), 64)
        self.assertEqual(self.tables.degree(self.tables.index[(0, 1)]), 3)

    @pytest.mark.slow
    def test_associativity(self):
        """Test associativity of the table product on Sq1, Sq2, Sq4 triples"""
        generators = [self.tables.index[(g,)] for g in (1, 2, 4)]
        for a in generators:
            for b in range(len(self.tables)):
                for c in generators:
                    left, right = set(), set()
                    for x in self.tables.product(a, b):
                        left ^= set(self.tables.product(x, c))
                    for y in self.tables.product(b, c):
                        right ^= set(self.tables.product(a, y))
                    self.assertEqual(left, right)
