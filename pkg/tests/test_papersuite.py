from io import StringIO
from unittest import mock

import numpy as np
import pytest
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, TestCase

from papersuite.cases import REGISTRY, SuiteCase, case_ids, failed_checks, get_case, outcome
from papersuite.exceptions import UnknownCaseError
from papersuite.models import CaseResult, SuiteRun
from papersuite.serializers import SuiteRunSerializer, report_json
from papersuite.services import SuiteService, plain, run_case
from papersuite.tasks import run_case_task, run_suite_task
from .factories import CaseResultFactory, SuiteRunFactory

CASE_IDS = [
    'algebra_axioms', 'b_probe_a3', 'bo_bsp_ground_truth', 'dx_bo_copies', 'dy_window', 'lp1_stable_range',
    'module_c', 'p_sequence', 'periodicity', 'q_splitting', 'resolution_exactness', 'section4',
    'thm24_chart', 'thm27_lifting', 'thm51_chart', 'thm59_assembly', 'weights_all', 'weights_n2',
]


def passing():
    return outcome(True, cells=np.int64(3))


def failing():
    return outcome(False, failed_checks({'first': True, 'second': False}))


def broken():
    raise ValueError('boom')


FAKE_CASES = {
    'a_pass': SuiteCase('a_pass', 'passes', (), passing),
    'b_fail': SuiteCase('b_fail', 'fails', (), failing),
    'c_error': SuiteCase('c_error', 'raises', (), broken),
}


class RegistryTest(SimpleTestCase):
    """Test cases for the case registry"""

    def test_case_ids(self):
        """Test that every case is registered"""
        self.assertEqual(case_ids(), CASE_IDS)

    def test_unknown_case(self):
        """Test that unknown ids raise"""
        with self.assertRaises(UnknownCaseError):
            get_case('no_such_case')

    def test_anchors(self):
        """Test that every case carries an anchor"""
        for case_id in CASE_IDS:
            self.assertTrue(get_case(case_id).anchor, case_id)

    def test_outcome_helpers(self):
        """Test outcome and failed_checks"""
        self.assertEqual(failed_checks({'a': True, 'b': False}), [{'check': 'b'}])
        self.assertEqual(outcome(1, None, x=2), {'success': True, 'diffs': [], 'details': {'x': 2}})

    def test_plain(self):
        """Test that numpy values become JSON types"""
        value = plain({'a': np.int64(2), 'b': (np.bool_(True), np.array([1, 0])), 3: np.float64(0.5)})
        self.assertEqual(value, {'a': 2, 'b': [True, [1, 0]], '3': 0.5})
        self.assertIs(type(value['a']), int)


@mock.patch.dict(REGISTRY, FAKE_CASES, clear=True)
class SuiteServiceTest(TestCase):
    """Test cases for running cases and persisting suite runs"""

    def setUp(self):
        self.service = SuiteService(threads=1)

    def test_run_case_statuses(self):
        """Test pass, fail and error statuses"""
        self.assertEqual(run_case('a_pass')['status'], 'pass')
        failed = self.service.run_case('b_fail')
        self.assertEqual(failed['status'], 'fail')
        self.assertEqual(failed['diffs'], [{'check': 'second'}])
        error = self.service.run_case('c_error')
        self.assertEqual(error['status'], 'error')
        self.assertEqual(error['error'], 'boom')
        self.assertEqual(error['details'], {'success': False, 'error': 'boom'})

    def test_run_all_persists(self):
        """Test that a run and one result per case are stored"""
        result = self.service.run_all()
        self.assertFalse(result['success'])
        self.assertEqual(result['failures'], ['b_fail', 'c_error'])
        self.assertEqual([c['case'] for c in result['cases']], ['a_pass', 'b_fail', 'c_error'])
        run = SuiteRun.objects.get(id=result['run_id'])
        self.assertEqual(run.status, 'failed')
        self.assertEqual(run.failure_count, 2)
        self.assertIsNotNone(run.finished_at)
        self.assertEqual(run.results.count(), 3)
        self.assertEqual(CaseResult.objects.get(run=run, case='a_pass').details, {'cells': 3})

    def test_threaded_run(self):
        """Test that a threaded run reports the cases in id order"""
        result = SuiteService(threads=3).run_all(['c_error', 'a_pass'])
        self.assertEqual([c['case'] for c in result['cases']], ['a_pass', 'c_error'])
        self.assertEqual(SuiteRun.objects.get(id=result['run_id']).threads, 3)

    def test_selected_passing_case(self):
        """Test that a run of passing cases succeeds"""
        result = self.service.run_all(['a_pass'])
        self.assertTrue(result['success'])
        self.assertEqual(SuiteRun.objects.get(id=result['run_id']).status, 'passed')

    def test_unknown_case_creates_no_run(self):
        """Test that unknown ids are rejected before anything is stored"""
        with self.assertRaises(UnknownCaseError):
            self.service.run_all(['a_pass', 'missing'])
        self.assertEqual(SuiteRun.objects.count(), 0)

    def test_report_json(self):
        """Test that the report validates against the case schema"""
        report = report_json(self.service.run_all())
        self.assertEqual(len(report['cases']), 3)
        self.assertEqual(report['cases'][0]['status'], 'pass')
        self.assertEqual(report['cases'][1]['anchor'], 'fails')

    def test_tasks(self):
        """Test the celery tasks"""
        self.assertEqual(run_case_task('a_pass')['status'], 'pass')
        self.assertEqual(run_case_task('missing')['status'], 'error')
        summary = run_suite_task(case_ids=['a_pass'])
        self.assertTrue(summary['success'])
        self.assertFalse(run_suite_task(case_ids=['missing'])['success'])

    def test_management_command(self):
        """Test the suite management command"""
        out = StringIO()
        call_command('suite', case=['a_pass'], stdout=out)
        self.assertIn('a_pass', out.getvalue())
        with self.assertRaises(CommandError):
            call_command('suite', case=['b_fail'], stdout=StringIO())


class SuiteModelTest(TestCase):
    """Test cases for SuiteRun and CaseResult"""

    def setUp(self):
        self.result = CaseResultFactory(case='q_splitting', status='fail', diffs=[{'s': 1, 't': 2}])

    def test_str(self):
        """Test string representations"""
        self.assertEqual(str(self.result), 'q_splitting: fail')
        self.assertIn('passed', str(self.result.run))

    def test_serializer(self):
        """Test the run serializer with nested results"""
        CaseResultFactory(run=self.result.run)
        data = SuiteRunSerializer(self.result.run).data
        self.assertTrue(data['success'])
        self.assertEqual(len(data['results']), 2)
        self.assertEqual(data['results'][-1]['diffs'], [{'s': 1, 't': 2}])

    def test_success_follows_status(self):
        """Test that a failed run is not a success"""
        self.assertFalse(SuiteRunFactory(status='failed').success)


@pytest.mark.slow
class RegisteredCaseTest(SimpleTestCase):
    """Test cases that run every registered case end to end"""

    def assertPasses(self, case_id):
        result = run_case(case_id)
        self.assertEqual(result['status'], 'pass', result['diffs'] or result['error'])
        self.assertEqual(result['anchor'], get_case(case_id).anchor)
        return result

    def test_algebra_axioms(self):
        """Test the A(2) axioms case"""
        result = self.assertPasses('algebra_axioms')
        self.assertEqual(result['details']['pairs'], 64 * 64)
        self.assertIn('associativity', result['details'])

    def test_weights_n2(self):
        """Test the n = 2 weight decomposition case"""
        self.assertPasses('weights_n2')

    def test_weights_all(self):
        """Test the weight decomposition through n = 4"""
        self.assertPasses('weights_all')

    def test_bo_bsp_ground_truth(self):
        """Test Ext over A(1) of F2 and of M7 against bo and bsp"""
        self.assertPasses('bo_bsp_ground_truth')

    def test_resolution_exactness(self):
        """Test exactness of the periodic resolution of L"""
        self.assertPasses('resolution_exactness')

    def test_thm24_chart(self):
        """Test Ext of L against the closed form and the assembly"""
        self.assertPasses('thm24_chart')

    def test_periodicity(self):
        """Test that Ext of L repeats every (48, 8) once the first period is set aside"""
        result = self.assertPasses('periodicity')
        self.assertGreater(result['details']['first_period_classes'], 0)

    def test_dy_window(self):
        """Test the DY case"""
        self.assertPasses('dy_window')

    def test_dx_bo_copies(self):
        """Test the DX case"""
        self.assertPasses('dx_bo_copies')

    def test_module_c(self):
        """Test the module C case"""
        self.assertPasses('module_c')

    def test_thm27_lifting(self):
        """Test that f5 lifts on the free cover and sends I36 to I16"""
        result = self.assertPasses('thm27_lifting')
        self.assertEqual(result['details']['f5']['I36'], ['I16'])

    def test_p_sequence(self):
        """Test the sequences through P = ker d1"""
        self.assertPasses('p_sequence')

    def test_section4(self):
        """Test the bo_2 case"""
        self.assertPasses('section4')

    def test_b_probe_a3(self):
        """Test the extension of B from A(2) to A(3)"""
        self.assertPasses('b_probe_a3')

    def test_q_splitting(self):
        """Test the splitting of L tensor Q"""
        self.assertPasses('q_splitting')

    def test_lp1_stable_range(self):
        """Test L tensor P1 against the Q chart"""
        self.assertPasses('lp1_stable_range')

    def test_thm59_assembly(self):
        """Test the assembly for L tensor HP1"""
        self.assertPasses('thm59_assembly')

    def test_thm51_chart(self):
        """Test the chart after the two recorded facts"""
        self.assertPasses('thm51_chart')
