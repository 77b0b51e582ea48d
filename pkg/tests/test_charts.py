from django.test import SimpleTestCase

from charts.assembly import Differential, Extension, Piece, apply_fact, assemble
from charts.charts import compare, grid, parse_chart, shifted
from charts.exceptions import ChartError, FactError
from charts.patterns import bo_pattern, bsp_pattern, pattern_window
from charts.render import render
from gmod.modules import trivial_module
from resolve.extchart import ext_chart
from resolve.resolution import minimal_resolution


class PatternTest(SimpleTestCase):
    """Test cases for the bo and bsp patterns"""

    def setUp(self):
        self.bo = bo_pattern(16, 8)

    def test_bo_cells(self):
        """Test towers in stems 8k and 8k+4 and the h1 hooks"""
        self.assertEqual(self.bo.window, pattern_window(16, 8))
        for stem, s in [(0, 0), (0, 8), (1, 1), (2, 2), (4, 3), (8, 4), (9, 5), (10, 6), (12, 7), (16, 8)]:
            self.assertEqual(self.bo.at_stem(stem, s), 1, (stem, s))
        for stem, s in [(3, 1), (4, 2), (8, 3), (2, 1), (6, 3)]:
            self.assertEqual(self.bo.at_stem(stem, s), 0, (stem, s))

    def test_bo_reduced(self):
        """Test that dropping the bottom class keeps the rest of the tower and the hooks"""
        reduced = bo_pattern(16, 8, drop_bottom=True)
        self.assertEqual(reduced.at_stem(0, 0), 0)
        self.assertEqual(reduced.at_stem(0, 1), 1)
        self.assertEqual(reduced.at_stem(1, 1), 1)
        self.assertEqual(reduced.total(), self.bo.total() - 1)

    def test_bsp_cells(self):
        """Test that the stem-4 tower of bsp starts in filtration 1 and carries hooks"""
        bsp = bsp_pattern(8, 4)
        self.assertEqual(bsp.at_stem(4, 1), 1)
        self.assertEqual(bsp.at_stem(5, 2), 1)
        self.assertEqual(bsp.at_stem(1, 1), 0)

    def test_pattern_matches_resolution(self):
        """Test that the bo pattern is Ext over A(1) of F2"""
        chart = ext_chart(minimal_resolution(trivial_module('A1'), 8, 24))
        result = compare(chart, self.bo)
        self.assertTrue(result['equal'], result['diffs'])
        self.assertGreater(result['cells_compared'], 0)


class CompareTest(SimpleTestCase):
    """Test cases for chart comparison"""

    def test_mutated_cell(self):
        """Test that a changed cell is the only reported difference"""
        bo = bo_pattern(8, 4)
        dims = dict(bo.dims)
        dims[(3, 7)] = 2
        result = compare(bo, bo.with_dims(dims))
        self.assertFalse(result['equal'])
        self.assertEqual(result['diffs'], [{'s': 3, 't': 7, 'stem': 4, 'left': 1, 'right': 2}])

    def test_shifted(self):
        """Test that shifting moves cells and the window together"""
        moved = shifted(bo_pattern(8, 4), 8, 1)
        self.assertEqual(moved.at_stem(8, 1), 1)
        self.assertEqual(moved.at_stem(12, 4), 1)
        self.assertEqual(moved.window.stem_max, 16)


class AssemblyTest(SimpleTestCase):
    """Test cases for assembling pieces and recording facts"""

    def setUp(self):
        self.bo = bo_pattern(16, 8)
        self.chart = assemble([Piece(self.bo, label='bo')], pattern_window(16, 8), algebra='A1', module='bo')

    def test_sum_of_pieces(self):
        """Test that two pieces add their dimensions"""
        both = assemble([Piece(self.bo), Piece(self.bo, 8, 4)], pattern_window(16, 8))
        self.assertEqual(both.dim(8, 4), 2)
        self.assertEqual(both.dim(0, 0), 1)
        self.assertEqual(both.window.stem_max, 16)

    def test_differential_kills_both_ends(self):
        """Test that a d2 removes its source and target"""
        total = self.chart.total()
        result = apply_fact(self.chart, Differential(2, (1, 1), (0, 3), 'hook to tower'))
        self.assertEqual(result.dim(1, 1), 0)
        self.assertEqual(result.dim(0, 3), 0)
        self.assertEqual(result.total(), total - 2)
        self.assertEqual(result.chart().annotations[0]['provenance'], 'hook to tower')

    def test_extension_keeps_dimensions(self):
        """Test that an eta extension is recorded without changing cells"""
        result = apply_fact(self.chart, Extension('eta', (0, 0), (1, 1), 'eta on the unit'))
        self.assertEqual(result.total(), self.chart.total())
        self.assertEqual(len(result.extensions), 1)

    def test_bad_facts(self):
        """Test that misshapen facts and missing endpoints are rejected"""
        with self.assertRaises(FactError):
            apply_fact(self.chart, Differential(2, (1, 1), (0, 2), 'wrong shape'))
        with self.assertRaises(FactError):
            apply_fact(self.chart, Differential(2, (4, 1), (3, 3), 'empty source'))
        with self.assertRaises(FactError):
            apply_fact(self.chart, Extension('eta', (0, 0), (2, 1), 'wrong stem'))
        with self.assertRaises(FactError):
            apply_fact(self.chart, Extension('sigma', (0, 0), (7, 1), 'unknown'))


class RenderTest(SimpleTestCase):
    """Test cases for ASCII, SVG and JSON output"""

    def setUp(self):
        self.bo = bo_pattern(8, 4)

    def test_json_fixed_point(self):
        """Test that rendering a parsed JSON chart gives the same text"""
        annotated = apply_fact(self.bo, Differential(2, (1, 1), (0, 3), 'test')).chart()
        for chart in (self.bo, annotated):
            text = render(chart, 'json')
            self.assertEqual(render(parse_chart(text), 'json'), text)

    def test_ascii(self):
        """Test the ASCII grid and its bands"""
        text = render(self.bo, 'ascii')
        self.assertTrue(text.startswith('Ext over A1 of bo'))
        self.assertIn('  0 | o .', text)
        self.assertEqual(render(self.bo, 'ascii', width=4).count('    +-'), 3)
        self.assertEqual(grid(self.bo).shape, (5, 9))

    def test_svg(self):
        """Test one dot per class in the SVG picture"""
        text = render(self.bo, 'svg')
        self.assertTrue(text.startswith('<?xml'))
        self.assertEqual(text.count('<circle'), self.bo.total())

    def test_unknown_format(self):
        """Test that unknown formats are rejected"""
        with self.assertRaises(ChartError):
            render(self.bo, 'png')

    def test_bad_chart_files(self):
        """Test that malformed chart JSON is rejected"""
        window = {'s_max': 2, 't_max': 4, 'stem_max': None}
        with self.assertRaises(ChartError):
            parse_chart('not json')
        with self.assertRaises(ChartError):
            parse_chart({'algebra': 'A1', 'module': 'x', 'window': window, 'dims': [[3, 3, 1]]})
        with self.assertRaises(ChartError):
            parse_chart({'algebra': 'A1', 'module': 'x', 'window': window, 'dims': [[0, 0, 1]],
                         'annotations': [{'kind': 'differential'}]})
