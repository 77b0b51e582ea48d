import numpy as np
from django.test import SimpleTestCase

from gmod.exceptions import ModuleDefinitionError, ModuleValidationError, UnknownModuleError
from gmod.extensions import extend_module
from gmod.formats import format_module, import_classical, parse_module
from gmod.library import build_m7, build_x3, paper_module
from gmod.modules import (
    FiniteModule, ModuleMap, cyclic_isomorphism, descend, dualize, factor_through, is_cyclic_on, quotient,
    restrict, submodule, truncated_projective,
)
from gmod.presentations import free_module, map_from_generators, present, quotient_by_left_ideal
from gmod.weights import phi, phi_report, weight_decomposition


def applied(m, g, name):
    return (m.full_matrix(g) @ m.vector(name)) % 2


class FiniteModuleTest(SimpleTestCase):
    """Test cases for module construction and validation"""

    def setUp(self):
        self.m7 = build_m7('A2')

    def test_m7_is_valid(self):
        """Test that H^*(X_7) is an A(2)-module"""
        report = self.m7.validate()
        self.assertTrue(report['valid'])
        self.assertEqual(report['graded_dimension'], {0: 1, 4: 1, 6: 1, 7: 1})

    def test_sq2_sq2_without_sq1_is_invalid(self):
        """Test that Sq2 Sq2 x0 = x4 with Sq1 = 0 violates Sq2 Sq2 = Sq3 Sq1"""
        m = FiniteModule.from_arrows('A1', [('x0', 0), ('x2', 2), ('x4', 4)],
                                     [(2, 'x0', ['x2']), (2, 'x2', ['x4'])], name='bad')
        report = m.validate()
        self.assertFalse(report['valid'])
        self.assertTrue(report['violations'])
        with self.assertRaises(ModuleValidationError):
            m.validated()

    def test_bad_arrows(self):
        """Test that non-generators and degree mismatches are rejected"""
        basis = [('a', 0), ('b', 3)]
        with self.assertRaises(ModuleDefinitionError):
            FiniteModule.from_arrows('A1', basis, [(3, 'a', ['b'])])
        with self.assertRaises(ModuleDefinitionError):
            FiniteModule.from_arrows('A1', basis, [(2, 'a', ['b'])])
        with self.assertRaises(ModuleDefinitionError):
            FiniteModule.from_arrows('A1', basis, [(1, 'c', ['b'])])

    def test_restrict(self):
        """Test that restriction to A(1) drops Sq4"""
        m = restrict(self.m7, 'A1')
        self.assertEqual(m.algebra, 'A1')
        self.assertFalse(applied(m, 4, 'e0').any())
        self.assertTrue(np.array_equal(applied(m, 2, 'e4'), m.vector('e6')))


class ProjectiveSpaceTest(SimpleTestCase):
    """Test cases for the truncated projective spaces"""

    def test_p1_action(self):
        """Test Sq1 x1 = x2, Sq2 x2 = x4 and Sq1 x2 = 0"""
        p = truncated_projective('P1', 10)
        self.assertEqual(len(p), 10)
        self.assertEqual(p.truncation, 10)
        self.assertTrue(np.array_equal(applied(p, 1, 'x1'), p.vector('x2')))
        self.assertTrue(np.array_equal(applied(p, 2, 'x2'), p.vector('x4')))
        self.assertFalse(applied(p, 1, 'x2').any())
        self.assertTrue(p.validate()['valid'])

    def test_q_cells(self):
        """Test that Q adds the five negative cells"""
        q = truncated_projective('Q', 20)
        self.assertEqual(len(q), len(truncated_projective('P1', 20)) + 5)
        self.assertEqual(q.degrees[:5], [-9, -5, -3, -2, -1])

    def test_library_names(self):
        """Test sized library names and unknown names"""
        self.assertEqual(len(paper_module('HP1(12)')), 12)
        with self.assertRaises(UnknownModuleError):
            paper_module('nope')
        with self.assertRaises(ModuleDefinitionError):
            truncated_projective('P2', 10)


class SubquotientTest(SimpleTestCase):
    """Test cases for submodules, quotients and maps"""

    def setUp(self):
        self.m7 = build_m7('A2')
        self.sub, self.inclusion = submodule(self.m7, [self.m7.vector('e4')], name='<e4>')
        self.rest, self.projection = quotient(self.m7, [self.m7.vector('e4')], name='M7/e4')

    def test_submodule(self):
        """Test that e4 generates e4, e6 and e7"""
        self.assertEqual(self.sub.names, ['e4', 'e6', 'e7'])
        self.assertTrue(self.inclusion.check()['valid'])
        self.assertEqual(self.inclusion.rank(), 3)

    def test_quotient(self):
        """Test that the quotient by e4 is the bottom cell"""
        self.assertEqual(self.rest.names, ['e0'])
        self.assertTrue(self.projection.check()['valid'])
        self.assertFalse(self.projection.compose(self.inclusion).matrix.any())

    def test_kernel_image_cokernel(self):
        """Test kernel, image and cokernel of the inclusion and projection"""
        kernel, _ = self.projection.kernel()
        image, _ = self.inclusion.image()
        cokernel, _ = self.inclusion.cokernel()
        self.assertEqual(len(kernel), 3)
        self.assertEqual(len(image), 3)
        self.assertEqual(cokernel.names, ['e0'])

    def test_factor_through(self):
        """Test that the inclusion factors through itself by the identity"""
        g = factor_through(self.inclusion, self.inclusion)
        self.assertTrue(np.array_equal(g.matrix, np.eye(3, dtype=np.uint8)))
        with self.assertRaises(ModuleDefinitionError):
            factor_through(ModuleMap.identity(self.m7), self.inclusion)

    def test_descend(self):
        """Test maps through a projection and maps that do not vanish on its kernel"""
        identity = ModuleMap.identity(self.m7)
        self.assertTrue(np.array_equal(descend(identity, identity).matrix, np.eye(4, dtype=np.uint8)))
        h = descend(self.projection, self.projection)
        self.assertTrue(np.array_equal(h.matrix, np.eye(1, dtype=np.uint8)))
        with self.assertRaises(ModuleDefinitionError):
            descend(identity, self.projection)

    def test_cyclic(self):
        """Test cyclic generation and the annihilator comparison"""
        self.assertTrue(is_cyclic_on(self.m7, self.m7.vector('e0')))
        self.assertFalse(is_cyclic_on(self.m7, self.m7.vector('e4')))
        result = cyclic_isomorphism(self.m7, self.m7.vector('e0'), self.m7, self.m7.vector('e0'))
        self.assertTrue(result['isomorphic'])


class DualTest(SimpleTestCase):
    """Test cases for the contragredient dual"""

    def test_degrees(self):
        """Test that dualizing negates degrees and names the classes with a star"""
        d = dualize(build_m7('A2'))
        self.assertEqual(set(d.degrees), {0, -4, -6, -7})
        self.assertIn('e7*', d.names)
        self.assertEqual(d.name, 'D(M7)')

    def test_double_dual(self):
        """Test that the double dual is the module itself"""
        m7 = build_m7('A2')
        self.assertTrue(dualize(dualize(m7)).same_structure(m7))


class FormatTest(SimpleTestCase):
    """Test cases for module files"""

    def test_format_then_parse(self):
        """Test that a formatted module reads back with the same structure"""
        m7 = build_m7('A2')
        self.assertTrue(parse_module(format_module(m7)).same_structure(m7))

    def test_classical_layout(self):
        """Test the generator count, degree list and action rows layout"""
        m = import_classical('3\n0 2 3\n0 2 1 1\n1 1 1 2\n', algebra='A1', name='X3')
        self.assertTrue(m.same_structure(build_x3('A1').relabeled(['x0', 'x1', 'x2'])))

    def test_bad_files(self):
        """Test that malformed definitions are rejected"""
        with self.assertRaises(ModuleDefinitionError):
            parse_module('basis a:0\n')
        with self.assertRaises(ModuleDefinitionError):
            parse_module('algebra A1\nbasis a:0 b:1\nsq 1 a b\n')
        with self.assertRaises(ModuleDefinitionError):
            import_classical('2\n0\n')


class PresentationTest(SimpleTestCase):
    """Test cases for presented modules"""

    def test_dimensions(self):
        """Test the dimensions of free and cyclic quotient modules"""
        self.assertEqual(len(free_module('A1', [('i', 0)])), 8)
        self.assertEqual(len(quotient_by_left_ideal('A1', ['Sq1', 'Sq2'])), 1)
        self.assertEqual(len(quotient_by_left_ideal('A2', ['Sq1', 'Sq2'])), 8)

    def test_relations_must_vanish(self):
        """Test that a map must send the relations to zero"""
        source = present('A1', [('j', 0)], ['Sq1 j'])
        target = free_module('A1', [('i', 0)])
        with self.assertRaises(ModuleDefinitionError):
            map_from_generators(source, target, {'j': target.generator_vector('i')})
        f = map_from_generators(source, target, {'j': target.element('Sq1 i')}, shift=1)
        self.assertTrue(f.check()['valid'])


class ExtensionTest(SimpleTestCase):
    """Test cases for completing partial module structures"""

    def test_free_choice(self):
        """Test that an unconstrained arrow gives two completions"""
        base = FiniteModule('A1', [('i', 0)], name='F2')
        completions = extend_module(base, [('x2', 2)], unknown=[(2, 'i', 'x2')])
        self.assertEqual(len(completions), 2)

    def test_forced_choice(self):
        """Test that Sq2 Sq2 = Sq3 Sq1 rules out one completion"""
        base = FiniteModule.from_arrows('A1', [('c0', 0), ('c2', 2)], [(2, 'c0', ['c2'])])
        completions = extend_module(base, [('c4', 4)], unknown=[(2, 'c2', 'c4')])
        self.assertEqual(len(completions), 1)
        self.assertEqual(completions[0]['assignment'], {(2, 'c2', 'c4'): 0})


class WeightTest(SimpleTestCase):
    """Test cases for the weight decomposition of the dual algebra"""

    def test_phi(self):
        """Test that phi_1 carries the bo_1 basis onto the weight-8 monomials"""
        self.assertEqual(phi(1, ()), (8,))
        self.assertEqual(phi(1, (4,)), (0, 4))
        report = phi_report(1, 24)
        self.assertTrue(report['valid'])
        self.assertEqual(report['size'], 4)

    def test_series_agree(self):
        """Test that the Poincare series of M_1 and of Sigma^8 bo_1 agree"""
        series_m, series_bo = weight_decomposition(1, 24)
        self.assertEqual(series_m, series_bo)
        self.assertEqual([d for d, n in series_m.items() if n], [8, 12, 14, 15])
