from celery import shared_task

from .exceptions import UnknownCaseError
from .services import SuiteService


@shared_task
def run_case_task(case_id):
    """Run one suite case"""
    try:
        return SuiteService().run_case(case_id)
    except UnknownCaseError as e:
        return {'case': case_id, 'status': 'error', 'error': str(e)}


@shared_task
def run_suite_task(threads=None, case_ids=None):
    """Run the suite (or the listed cases) and persist the run"""
    try:
        result = SuiteService(threads).run_all(case_ids)
    except UnknownCaseError as e:
        return {'success': False, 'error': str(e)}
    return {key: result[key] for key in ('success', 'run_id', 'seconds', 'failures')}
