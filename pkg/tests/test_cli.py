import json
import tempfile
from io import StringIO
from pathlib import Path

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from charts.patterns import bo_pattern
from charts.render import render
from cli.main import main

CLASSICAL_X3 = '3\n0 2 3\n0 2 1 1\n1 1 1 2\n'

A1_COMPLEX = """
algebra A1
resolves F2
gen 0 I0:0
gen 1 I1:1 I2:2
d 0 I0 = i
d 1 I1 = Sq1 I0
d 1 I2 = Sq2 I0
"""


class CliTest(SimpleTestCase):
    """Test cases for the ext2 command line"""

    def setUp(self):
        tmp = tempfile.TemporaryDirectory()
        self.addCleanup(tmp.cleanup)
        self.dir = Path(tmp.name)

    def run_cli(self, *argv):
        out = StringIO()
        status = main(list(argv), stdout=out)
        return status, out.getvalue()

    def write(self, name, text):
        path = self.dir / name
        path.write_text(text)
        return str(path)

    def test_usage_errors(self):
        """Test exit code 2 on missing or unknown arguments"""
        self.assertEqual(self.run_cli()[0], 2)
        self.assertEqual(self.run_cli('resolve', '--module', 'M7')[0], 2)
        self.assertEqual(self.run_cli('resolve', '--module', 'M7', '--algebra', 'A4', '--max-s', '2',
                                      '--max-t', '4')[0], 2)

    def test_missing_module(self):
        """Test exit code 2 and no output for an unreadable module"""
        status, text = self.run_cli('validate', '--module', 'nope.mod')
        self.assertEqual(status, 2)
        self.assertEqual(text, '')

    def test_validate(self):
        """Test validating the data file and the library module"""
        for reference in ('M7.mod', 'M7'):
            status, text = self.run_cli('validate', '--module', reference, '--algebra', 'A2')
            self.assertEqual(status, 0, reference)
            self.assertTrue(json.loads(text)['valid'])

    def test_validate_invalid_module(self):
        """Test exit code 1 for a module that fails the relations"""
        path = self.write('bad.mod', 'algebra A1\nbasis x0:0 x2:2 x4:4\nsq 2 x0 = x2\nsq 2 x2 = x4\n')
        status, text = self.run_cli('validate', '--module', path)
        self.assertEqual(status, 1)
        self.assertFalse(json.loads(text)['valid'])

    def test_resolve_json(self):
        """Test the JSON chart of F2 over A(1)"""
        status, text = self.run_cli('resolve', '--module', 'F2', '--algebra', 'A1', '--max-s', '3', '--max-t', '8')
        self.assertEqual(status, 0)
        chart = json.loads(text)
        self.assertEqual(chart['algebra'], 'A1')
        self.assertIn([1, 1, 1], chart['dims'])
        self.assertIn([1, 2, 1], chart['dims'])
        self.assertNotIn([1, 4, 1], chart['dims'])

    def test_resolve_to_file(self):
        """Test ASCII output written to a file"""
        out = self.dir / 'chart.txt'
        status, text = self.run_cli('resolve', '--module', 'F2', '--algebra', 'A1', '--max-s', '2', '--max-t', '6',
                                    '--format', 'ascii', '--out', str(out))
        self.assertEqual(status, 0)
        self.assertEqual(text, '')
        self.assertTrue(out.read_text().startswith('Ext over A1'))

    def test_chart_and_compare(self):
        """Test rendering a chart file and comparing two charts"""
        bo = bo_pattern(8, 4)
        first = self.write('bo.json', render(bo, 'json'))
        dims = dict(bo.dims)
        dims[(0, 0)] = 2
        second = self.write('changed.json', render(bo.with_dims(dims), 'json'))
        status, text = self.run_cli('chart', first)
        self.assertEqual(status, 0)
        self.assertIn('  0 | o', text)
        status, text = self.run_cli('chart', first, '--compare', first)
        self.assertEqual(status, 0)
        self.assertTrue(json.loads(text)['equal'])
        status, text = self.run_cli('chart', first, '--compare', second)
        self.assertEqual(status, 1)
        self.assertEqual(len(json.loads(text)['diffs']), 1)

    def test_bad_chart(self):
        """Test exit code 2 for a chart file that is not JSON"""
        self.assertEqual(self.run_cli('chart', self.write('bad.json', '{'))[0], 2)

    def test_verify(self):
        """Test verifying a small exact complex"""
        status, text = self.run_cli('verify', '--complex', self.write('cover.cx', A1_COMPLEX), '--t-max', '6')
        self.assertEqual(status, 0)
        self.assertTrue(json.loads(text)['valid'])

    def test_convert(self):
        """Test converting the classical layout"""
        status, text = self.run_cli('convert', '--module', self.write('x3.txt', CLASSICAL_X3), '--algebra', 'A1')
        self.assertEqual(status, 0)
        self.assertIn('algebra A1', text)
        self.assertIn('sq 2 x0 = x1', text)
        self.assertIn('sq 1 x1 = x2', text)

    def test_unknown_suite_case(self):
        """Test exit code 2 for an unknown suite case"""
        self.assertEqual(self.run_cli('suite', '--case', 'no_such_case')[0], 2)

    def test_management_command(self):
        """Test the ext2 management command"""
        out = StringIO()
        call_command('ext2', 'validate', '--module', 'M7.mod', stdout=out)
        self.assertIn('"valid": true', out.getvalue())
        with self.assertRaises(CommandError):
            call_command('ext2', 'validate', '--module', 'nope.mod', stdout=StringIO())
