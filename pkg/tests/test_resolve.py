import numpy as np
import pytest
from django.test import SimpleTestCase

from charts.render import render
from gmod.library import build_l
from gmod.modules import FiniteModule, quotient, submodule, trivial_module, truncated_projective
from resolve.chainmaps import basis_class, h_action, induced_map, yoneda_product
from resolve.complexes import load_complex, parse_complex, verify_complex
from resolve.exceptions import WindowError
from resolve.extchart import Edge, Window, ext_chart, tower_starts
from resolve.resolution import Resolution, check_resolution, minimal_resolution
from resolve.sequences import ShortExactSequence, ext_sequence, les_check

A1_COMPLEX = """
algebra A1
name cover
resolves F2
gen 0 I0:0
gen 1 I1:1 I2:2
d 0 I0 = i
d 1 I1 = Sq1 I0
d 1 I2 = Sq2 I0
"""


class ResolutionTest(SimpleTestCase):
    """Test cases for minimal resolutions of the trivial module"""

    def setUp(self):
        self.a1 = minimal_resolution(trivial_module('A1'), 4, 12)

    def test_ext_a1_low_degrees(self):
        """Test Ext_A(1)(F2) in low degrees"""
        for s, t in [(0, 0), (1, 1), (1, 2), (2, 2), (2, 4), (3, 7)]:
            self.assertEqual(self.a1.ext_dim(s, t), 1, (s, t))
        for s, t in [(3, 6), (2, 3), (1, 4), (1, 3)]:
            self.assertEqual(self.a1.ext_dim(s, t), 0, (s, t))

    def test_h2_over_a2(self):
        """Test that h2 appears over A(2) but not over A(1)"""
        a2 = minimal_resolution(trivial_module('A2'), 2, 10)
        self.assertEqual(a2.ext_dim(1, 4), 1)
        self.assertEqual(a2.ext_dim(1, 8), 0)

    def test_resolution_checks(self):
        """Test d o d = 0, minimality and exactness of the computed resolution"""
        report = check_resolution(self.a1)
        self.assertTrue(report['valid'], report['failures'])

    def test_threads_do_not_change_the_result(self):
        """Test that a threaded resolution finds the same generators"""
        threaded = minimal_resolution(trivial_module('A1'), 4, 12, threads=3)
        self.assertEqual(threaded.dims(), self.a1.dims())

    @pytest.mark.slow
    def test_threads_give_identical_chart_json(self):
        """Test that one and eight threads render byte-identical charts of L"""
        single = render(ext_chart(minimal_resolution(build_l(), 6, 30, threads=1)), 'json')
        eight = render(ext_chart(minimal_resolution(build_l(), 6, 30, threads=8)), 'json')
        self.assertEqual(single, eight)

    def test_truncated_module_window(self):
        """Test that a truncated module refuses a window beyond its exact range"""
        with self.assertRaises(WindowError):
            Resolution(truncated_projective('P1', 10), 2, 10)
        with self.assertRaises(WindowError):
            Resolution(trivial_module('A1'), -1, 4)


class ChartTest(SimpleTestCase):
    """Test cases for charts read off a resolution"""

    def setUp(self):
        self.r = minimal_resolution(trivial_module('A1'), 6, 14)
        self.chart = ext_chart(self.r)

    def test_hopf_edges(self):
        """Test the h0 and h1 edges out of the unit"""
        self.assertIn(Edge('h0', (0, 0, 0), (1, 1, 0)), self.chart.edges)
        self.assertIn(Edge('h1', (0, 0, 0), (1, 2, 0)), self.chart.edges)
        self.assertEqual(self.chart.edges_of('h2'), [])

    def test_towers(self):
        """Test that h0-towers start at filtration 0 in stem 0 and 3 in stem 4"""
        self.assertEqual(tower_starts(self.chart, 0), [0])
        self.assertEqual(tower_starts(self.chart, 4), [3])
        self.assertEqual(self.chart.at_stem(4, 3), 1)

    def test_h_action(self):
        """Test h1 times h1 is nonzero and h1 cubed vanishes"""
        h1 = h_action(self.r, 1)
        square = h1.apply(h1.apply(basis_class(self.r, 0, 0)))
        self.assertFalse(square.is_zero())
        self.assertTrue(h1.apply(square).is_zero())

    def test_window(self):
        """Test window membership and shifting"""
        window = Window(4, 20, 10)
        self.assertTrue(window.contains(4, 14))
        self.assertFalse(window.contains(2, 13))
        self.assertEqual(window.shifted(8, 1), Window(5, 29, 18))
        self.assertEqual(window.intersect(Window(6, 12)), Window(4, 12, 10))


class ProductTest(SimpleTestCase):
    """Test cases for Yoneda products and induced maps"""

    def setUp(self):
        self.r = minimal_resolution(trivial_module('A1'), 4, 12)

    def test_yoneda_squares(self):
        """Test h0 h0 and h1 h1 by lifting chain maps"""
        h0, h1 = basis_class(self.r, 1, 1), basis_class(self.r, 1, 2)
        square = yoneda_product(self.r, h0, self.r, h0)
        self.assertEqual((square.s, square.t), (2, 2))
        self.assertFalse(square.is_zero())
        self.assertFalse(yoneda_product(self.r, h1, self.r, h1).is_zero())

    def test_identity_induces_identity(self):
        """Test that the identity map induces the identity on Ext"""
        m = trivial_module('A1')
        r = minimal_resolution(m, 3, 8)
        _, identity = submodule(m, [m.vector('i')])
        induced = induced_map(identity, r, r)
        for (s, t), block in induced.blocks.items():
            self.assertTrue(np.array_equal(block, np.eye(r.ext_dim(s, t), dtype=np.uint8)), (s, t))


class SequenceTest(SimpleTestCase):
    """Test cases for the long exact sequence of the two-cell Sq1 module"""

    def setUp(self):
        m = FiniteModule.from_arrows('A1', [('a', 0), ('b', 1)], [(1, 'a', ['b'])], name='C2')
        _, i = submodule(m, [m.vector('b')], name='top')
        _, p = quotient(m, [m.vector('b')], name='bottom')
        self.seq = ext_sequence(ShortExactSequence(i, p, name='top -> C2 -> bottom'), 3, 10)

    def test_connecting_map(self):
        """Test that the connecting map sends the top cell to h0"""
        delta = self.seq.delta.apply(basis_class(self.seq.sub, 0, 1))
        self.assertEqual((delta.s, delta.t), (1, 1))
        self.assertFalse(delta.is_zero())

    def test_exactness(self):
        """Test exactness of the long exact sequence in the window"""
        report = les_check(self.seq)
        self.assertTrue(report['valid'], report['failures'])
        self.assertGreater(report['nodes_checked'], 0)


class ComplexTest(SimpleTestCase):
    """Test cases for complex files and their verification"""

    def setUp(self):
        self.complex = parse_complex(A1_COMPLEX)

    def test_exact(self):
        """Test that A(1) Sq1 + A(1) Sq2 is the augmentation ideal"""
        report = verify_complex(self.complex, 6)
        self.assertTrue(report['valid'], report['failures'])
        self.assertTrue(report['dd_zero'])
        self.assertEqual(report['exact_through'], 6)

    def test_broken_differential(self):
        """Test that dropping a differential is reported as missing homology"""
        broken = self.complex.with_image(1, 'I2', np.zeros(len(self.complex.terms[0]), dtype=np.uint8))
        report = verify_complex(broken, 6, search=False)
        self.assertFalse(report['valid'])
        self.assertEqual(report['exact_through'], 1)
        self.assertIn({'kind': 'homology', 'position': 0, 'degree': 2, 'dimension': 1}, report['failures'])

    @pytest.mark.slow
    def test_periodic_resolution_file(self):
        """Test that the resolution of L loads and a zeroed differential is noticed"""
        complex_ = load_complex('thm24.cx')
        self.assertEqual(complex_.generators(0), [('I0', 0)])
        broken = complex_.with_image(1, 'I4', np.zeros(len(complex_.terms[0]), dtype=np.uint8))
        self.assertFalse(verify_complex(broken, 8, search=False)['valid'])
